#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "matchlab/errors.hpp"

namespace matchlab {

// Largest supported alphabet. The adversary construction is exponential in
// the number of colours, so anything beyond this is a mistake, not a use case.
inline constexpr int kMaxAlphabet = 30;

// An element of the free Coxeter group over colours 1..k, stored as its
// unique reduced word (no two adjacent letters equal). Reduction happens
// eagerly at construction, so equality is plain sequence equality and the
// empty word is the identity. Values are immutable and freely shareable.
class Word {
 public:
  Word() = default;

  // Validates letters against the alphabet and reduces the sequence.
  Word(std::span<const int> letters, int k);
  Word(std::initializer_list<int> letters, int k)
      : Word(std::span<const int>(letters.begin(), letters.size()), k) {}

  static void check_alphabet(int k);

  int norm() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int letter(int i) const { return letters_[static_cast<size_t>(i)]; }

  // Last letter of the path from e; the colour of the edge to pred().
  int tail() const;
  // First letter; equals tail of the inverse.
  int head() const;
  // The word with its last letter removed.
  Word pred() const;

  // Group product with this and a single generator: appends c, or cancels
  // it against the tail. Always stays reduced.
  Word adjoin(int c) const;

  std::string str() const;

  bool operator==(const Word& other) const = default;
  // Total order: length-lexicographic, the canonical enumeration order used
  // throughout for deterministic artifacts.
  bool operator<(const Word& other) const;

  const std::vector<std::uint8_t>& raw() const { return letters_; }

 private:
  struct Trusted {};
  Word(Trusted, std::vector<std::uint8_t> letters)
      : letters_(std::move(letters)) {}

  std::vector<std::uint8_t> letters_;

  friend Word multiply(const Word&, const Word&);
  friend Word inverse(const Word&);
};

// Group operation: reduced form of the concatenation xy.
Word multiply(const Word& x, const Word& y);

// Each generator is an involution, so the inverse is the reversal.
Word inverse(const Word& x);

inline int norm(const Word& x) { return x.norm(); }

struct Decomposition {
  Word pred;
  int tail;
  int head;
};

// Splits a non-identity word into (pred, tail, head).
Decomposition decompose(const Word& x);

// Path metric on the Cayley tree: |x^-1 y|.
int distance(const Word& x, const Word& y);

}  // namespace matchlab

template <>
struct std::hash<matchlab::Word> {
  size_t operator()(const matchlab::Word& w) const noexcept {
    // FNV-1a over the letter bytes.
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : w.raw()) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};
