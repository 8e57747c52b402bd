// Exception types shared by every module.
//
// ValidationError   - a value is out of its admissible range (h <= 0, p < 1, NaN input).
// StructuralError   - operands do not fit together (grid or index-set mismatch).
// SingularityError  - a resolvent parameter sits on (or too close to) the spectrum.
#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularityError : public std::domain_error {
 public:
  SingularityError(const std::string& what, int index)
      : std::domain_error(what), index_(index) {}

  /// Index of the spectral value that triggered the guard.
  int index() const noexcept { return index_; }

 private:
  int index_;
};

}  // namespace biortho
