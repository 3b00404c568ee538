#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dasa {

// Root of every error the library throws. The CLI maps subclasses onto its
// fixed exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string field;
  std::string reason;
};

// Carries every violated invariant, not just the first one encountered.
class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(std::vector<Violation> violations);
  InvalidParameter(std::string field, std::string reason);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class Unstable : public Error {
 public:
  using Error::Error;
};

// |xi - 1| too small for the rational occupancy forms.
class DegenerateXi : public Error {
 public:
  using Error::Error;
};

class ZeroArrival : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

// P2/P1 >= (d_s/d_p)^alpha; the closed-form optimum does not apply.
class PowerRatioViolation : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePoint : public Error {
 public:
  using Error::Error;
};

class InvalidArrival : public Error {
 public:
  using Error::Error;
};

}  // namespace dasa
