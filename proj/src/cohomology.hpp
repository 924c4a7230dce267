#pragma once

#include "epsseries.hpp"

namespace dsm {

// Divisors for the three difference equations, derived from a Frequency
// cache. The parametric accessor enforces the guaranteed lower bound
// (nu/2) (aN)^-tau that holds for |eps| <= gamma_N and |k| <= aN.
class DivisorTable {
 public:
  explicit DivisorTable(const Frequency& freq) : freq_(&freq) {}

  Complex standard(long k) const { return freq_->standard_divisor(k); }
  Real second_difference(long k) const { return freq_->second_divisor(k); }
  Complex parametric(long k, Complex lambda, int aN) const;

  const Frequency& freq() const { return *freq_; }

 private:
  const Frequency* freq_;
};

// gamma_N = (nu/2)^{1/alpha} (aN)^{-tau/alpha}: radius of the eps-ball on
// which degree-aN parametric equations keep their divisors bounded below.
Real gamma_radius(const Frequency& freq, int alpha, int aN);

// phi - phi o T_omega = eta, zero-mean data and solution.
TrigPoly solve_standard(const TrigPoly& eta, const Frequency& freq);

// L_omega phi = phi o T_omega - 2 phi + phi o T_{-omega} = eta.
TrigPoly solve_second_difference(const TrigPoly& eta, const Frequency& freq);

// lambda(eps) phi - phi o T_omega = eta with lambda = 1 - eps^alpha, solved
// order by order: phi_n - phi_n o T_omega = eta_n + phi_{n-alpha}. All
// coefficients of eta must have zero mean; the solution coefficients do too.
EpsSeries solve_parametric_formal(const EpsSeries& eta, int alpha,
                                  const Frequency& freq);

// Same equation at a fixed eps with |eps| <= gamma_N, deg(eta) <= aN.
TrigPoly solve_parametric_numeric(const TrigPoly& eta, Real eps, int alpha,
                                  const Frequency& freq, int aN);

}  // namespace dsm
