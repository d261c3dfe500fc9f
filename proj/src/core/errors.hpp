#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

// Raised when a numeric iteration fails to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Raised when a run configuration is malformed or out of range.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a state or trajectory leaves the representable domain.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dwell
