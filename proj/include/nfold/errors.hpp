#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nfold {

// Mismatched vector/matrix shapes.
struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad scalar argument (n = 0, r > s, ...).
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Feature outside the supported range (convex maximization with d >= 3).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration oracle ran past its budget. Never a truncated answer.
struct budget_exceeded_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Entry-uniqueness query against an empty fiber.
struct no_tables_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural validation of an instance file; carries all field errors at once.
struct validation_error : std::runtime_error {
  std::vector<std::string> field_errors;

  explicit validation_error(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), field_errors(std::move(errors)) {}
  explicit validation_error(const std::string& one)
      : validation_error(std::vector<std::string>{one}) {}

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string s;
    for (const auto& e : errors) {
      if (!s.empty()) s += "; ";
      s += e;
    }
    return s;
  }
};

}  // namespace nfold
