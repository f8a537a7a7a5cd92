#ifndef SINGZONE_ERRORS_HPP
#define SINGZONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace singzone {

/// Evaluation outside the domain where the Euler-angle kinematics are defined.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested Lie-derivative order exceeds what the jets carry.
class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid parameters, scenario or gain configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two grid scans do not share the same axes.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No zero crossing exists in the scanned field.
class EmptyContour : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decoupling matrix failed the invertibility test.
class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(const std::string& what, double det, double cond)
      : std::runtime_error(what), det_(det), cond_(cond) {}

  double det() const noexcept { return det_; }
  double cond() const noexcept { return cond_; }

 private:
  double det_;
  double cond_;
};

}  // namespace singzone

#endif  // SINGZONE_ERRORS_HPP
