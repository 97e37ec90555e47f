#include "matchlab/word.hpp"

#include <algorithm>

namespace matchlab {

void Word::check_alphabet(int k) {
  if (k < 1 || k > kMaxAlphabet)
    throw Error(Errc::invalid_word,
                "alphabet size " + std::to_string(k) + " outside 1.." +
                    std::to_string(kMaxAlphabet));
}

Word::Word(std::span<const int> letters, int k) {
  check_alphabet(k);
  letters_.reserve(letters.size());
  for (int c : letters) {
    if (c < 1 || c > k)
      throw Error(Errc::invalid_word, "letter " + std::to_string(c) +
                                          " outside 1.." + std::to_string(k));
    // Involution: an adjacent equal pair cancels. A single stack pass yields
    // the unique reduced form.
    if (!letters_.empty() && letters_.back() == c)
      letters_.pop_back();
    else
      letters_.push_back(static_cast<std::uint8_t>(c));
  }
}

int Word::tail() const {
  if (letters_.empty())
    throw Error(Errc::undefined_decomposition, "identity has no tail");
  return letters_.back();
}

int Word::head() const {
  if (letters_.empty())
    throw Error(Errc::undefined_decomposition, "identity has no head");
  return letters_.front();
}

Word Word::pred() const {
  if (letters_.empty())
    throw Error(Errc::undefined_decomposition, "identity has no predecessor");
  std::vector<std::uint8_t> l(letters_.begin(), letters_.end() - 1);
  return Word(Trusted{}, std::move(l));
}

Word Word::adjoin(int c) const {
  std::vector<std::uint8_t> l = letters_;
  if (!l.empty() && l.back() == c)
    l.pop_back();
  else
    l.push_back(static_cast<std::uint8_t>(c));
  return Word(Trusted{}, std::move(l));
}

std::string Word::str() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(int(letters_[i]));
  }
  return s;
}

bool Word::operator<(const Word& other) const {
  if (letters_.size() != other.letters_.size())
    return letters_.size() < other.letters_.size();
  return letters_ < other.letters_;
}

Word multiply(const Word& x, const Word& y) {
  std::vector<std::uint8_t> l = x.letters_;
  for (auto c : y.letters_) {
    if (!l.empty() && l.back() == c)
      l.pop_back();
    else
      l.push_back(c);
  }
  return Word(Word::Trusted{}, std::move(l));
}

Word inverse(const Word& x) {
  std::vector<std::uint8_t> l(x.letters_.rbegin(), x.letters_.rend());
  return Word(Word::Trusted{}, std::move(l));
}

Decomposition decompose(const Word& x) {
  return Decomposition{x.pred(), x.tail(), x.head()};
}

int distance(const Word& x, const Word& y) {
  return multiply(inverse(x), y).norm();
}

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_word: return "invalid-word";
    case Errc::undefined_decomposition: return "undefined-decomposition";
    case Errc::not_a_node: return "not-a-node";
    case Errc::invalid_prune: return "invalid-prune";
    case Errc::invalid_picker: return "invalid-picker";
    case Errc::contract_violation: return "contract-violation";
    case Errc::depth_budget_exceeded: return "depth-budget-exceeded";
    case Errc::ball_size_exceeded: return "ball-size-exceeded";
    case Errc::model_error: return "model-error";
    case Errc::format_error: return "format-error";
    case Errc::no_witness: return "no-witness";
    case Errc::internal_error: return "internal-error";
  }
  return "unknown-error";
}

}  // namespace matchlab
