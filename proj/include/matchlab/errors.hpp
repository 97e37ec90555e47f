#pragma once

#include <stdexcept>
#include <string>

namespace matchlab {

enum class Errc {
  invalid_word,
  undefined_decomposition,
  not_a_node,
  invalid_prune,
  invalid_picker,
  contract_violation,
  depth_budget_exceeded,
  ball_size_exceeded,
  model_error,
  format_error,
  no_witness,
  internal_error,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace matchlab
