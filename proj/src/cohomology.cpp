#include "cohomology.hpp"

#include <cmath>

namespace dsm {

namespace {

// Inputs whose mean is roundoff-sized relative to the majorant are accepted
// and projected; a genuinely nonzero mean is a caller bug.
TrigPoly require_zero_mean(const TrigPoly& eta, const char* who) {
  const Real m = std::abs(mean(eta));
  if (m > Real(1e-12) * norm_rho(eta, 0))
    throw ValidationError(std::string(who) +
                          " requires zero-mean data (mean " +
                          std::to_string(double(mean(eta))) + ")");
  return m == 0 ? eta : remove_mean(eta);
}

}  // namespace

Complex DivisorTable::parametric(long k, Complex lambda, int aN) const {
  const Complex d = lambda - freq_->unit_mode(k);
  const Real bound =
      freq_->nu() / 2 * std::pow(Real(aN), -freq_->tau());
  if (std::abs(d) < bound)
    throw NumericalError("parametric-divisor-bound",
                         "divisor at k = " + std::to_string(k) +
                             " fell below (nu/2)(aN)^-tau");
  return d;
}

Real gamma_radius(const Frequency& freq, int alpha, int aN) {
  return std::pow(freq.nu() / 2, Real(1) / alpha) *
         std::pow(Real(aN), -freq.tau() / alpha);
}

TrigPoly solve_standard(const TrigPoly& eta_in, const Frequency& freq) {
  const TrigPoly eta = require_zero_mean(eta_in, "solve_standard");
  if (eta.degree() > freq.k_max())
    throw ValidationError("mode above the divisor cache in solve_standard");
  TrigPolyBuilder b(eta.degree());
  for (int k = -eta.degree(); k <= eta.degree(); ++k) {
    if (k == 0) continue;
    b.at(k) = eta.mode(k) / freq.standard_divisor(k);
  }
  return std::move(b).build();
}

TrigPoly solve_second_difference(const TrigPoly& eta_in, const Frequency& freq) {
  const TrigPoly eta = require_zero_mean(eta_in, "solve_second_difference");
  if (eta.degree() > freq.k_max())
    throw ValidationError("mode above the divisor cache in solve_second_difference");
  TrigPolyBuilder b(eta.degree());
  for (int k = -eta.degree(); k <= eta.degree(); ++k) {
    if (k == 0) continue;
    b.at(k) = eta.mode(k) / freq.second_divisor(k);
  }
  return std::move(b).build();
}

EpsSeries solve_parametric_formal(const EpsSeries& eta, int alpha,
                                  const Frequency& freq) {
  if (alpha < 1) throw ValidationError("dissipation order alpha must be >= 1");
  EpsSeries phi(eta.order());
  for (int n = 0; n <= eta.order(); ++n) {
    TrigPoly rhs = eta.coeff(n);
    if (n - alpha >= 0) rhs = rhs + phi.coeff(n - alpha);
    phi.coeff(n) = solve_standard(rhs, freq);
  }
  return phi;
}

TrigPoly solve_parametric_numeric(const TrigPoly& eta_in, Real eps, int alpha,
                                  const Frequency& freq, int aN) {
  const TrigPoly eta = require_zero_mean(eta_in, "solve_parametric_numeric");
  if (eta.degree() > aN)
    throw ValidationError("data degree exceeds aN in solve_parametric_numeric");
  if (std::abs(eps) > gamma_radius(freq, alpha, aN))
    throw ValidationError("|eps| exceeds gamma_N in solve_parametric_numeric");
  const Complex lambda = Real(1) - std::pow(Complex(eps), alpha);
  DivisorTable table(freq);
  TrigPolyBuilder b(eta.degree());
  for (int k = -eta.degree(); k <= eta.degree(); ++k) {
    if (k == 0) continue;
    b.at(k) = eta.mode(k) / table.parametric(k, lambda, aN);
  }
  return std::move(b).build();
}

}  // namespace dsm
