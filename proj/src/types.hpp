#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dsm {

// Scalar type of the whole computation. The default build uses double;
// configure with -DDSM_EXTENDED_REAL=ON to substitute long double.
#ifdef DSM_EXTENDED_REAL
using Real = long double;
#else
using Real = double;
#endif

using Complex = std::complex<Real>;

inline constexpr Real kTwoPi = Real(6.283185307179586476925286766559L);

// Bad inputs: rejected configurations, precondition violations.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A named runtime invariant failed (divisor bound, defect order, ...).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string invariant, const std::string& detail)
      : std::runtime_error(invariant + ": " + detail),
        invariant_(std::move(invariant)) {}
  const std::string& invariant() const { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace dsm
