#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fourier.hpp"

namespace dsm {

// Truncated formal power series in eps with real scalar coefficients.
class ScalarSeries {
 public:
  explicit ScalarSeries(int order) : c_(size_t(order) + 1) {}

  int order() const { return int(c_.size()) - 1; }
  Real coeff(int n) const { return c_[size_t(n)]; }
  Real& coeff(int n) { return c_[size_t(n)]; }
  std::span<const Real> coeffs() const { return c_; }

  static ScalarSeries one(int order) {
    ScalarSeries s(order);
    s.coeff(0) = 1;
    return s;
  }

 private:
  std::vector<Real> c_;
};

ScalarSeries ss_add(const ScalarSeries& x, const ScalarSeries& y);
ScalarSeries ss_sub(const ScalarSeries& x, const ScalarSeries& y);
ScalarSeries ss_mul(const ScalarSeries& x, const ScalarSeries& y, int out_order);
ScalarSeries ss_scale(Real s, const ScalarSeries& x);
ScalarSeries ss_window(const ScalarSeries& x, int a, int b);
// 1/x; the constant term must be nonzero.
ScalarSeries ss_reciprocal(const ScalarSeries& x, int out_order);
Real ss_eval(const ScalarSeries& x, Real eps);

// Truncated formal power series in eps whose coefficients are trig
// polynomials. Truncation is structural: coefficients above order() do not
// exist and products discard them eagerly.
class EpsSeries {
 public:
  explicit EpsSeries(int order);

  int order() const { return int(c_.size()) - 1; }
  const TrigPoly& coeff(int n) const { return c_[size_t(n)]; }
  TrigPoly& coeff(int n) { return c_[size_t(n)]; }

  // Smallest n with a coefficient above rel_tol * (largest coefficient
  // majorant); order()+1 for the zero series.
  int lead(Real rel_tol = 0) const;

 private:
  std::vector<TrigPoly> c_;
};

EpsSeries series_add(const EpsSeries& x, const EpsSeries& y);
EpsSeries series_sub(const EpsSeries& x, const EpsSeries& y);
EpsSeries series_mul(const EpsSeries& x, const EpsSeries& y, int out_order);
EpsSeries series_mul(const EpsSeries& x, const ScalarSeries& y, int out_order);
EpsSeries series_scale(Real s, const EpsSeries& x);
// Pointwise product with a fixed (eps-independent) trig polynomial.
EpsSeries series_mul_poly(const TrigPoly& p, const EpsSeries& x);
// Zero every coefficient with index outside (a, b].
EpsSeries window(const EpsSeries& x, int a, int b);
ScalarSeries window(const ScalarSeries& x, int a, int b);
EpsSeries series_pad(const EpsSeries& x, int order);
ScalarSeries series_pad(const ScalarSeries& x, int order);
EpsSeries series_rotate(const EpsSeries& x, const Frequency& freq, long s);
EpsSeries series_derivative(const EpsSeries& x);
// Multiplication by eps: coefficient n of the result is coefficient n-1 of x.
EpsSeries series_shift_up(const EpsSeries& x, int out_order);
ScalarSeries series_mean(const EpsSeries& x);
EpsSeries series_remove_mean(const EpsSeries& x);
// Promote a scalar series to constant trig-polynomial coefficients.
EpsSeries series_promote(const ScalarSeries& x);
// 1/x by the Neumann recursion; the order-0 coefficient must be a nonzero
// constant polynomial.
EpsSeries series_reciprocal(const EpsSeries& x, int out_order);
Real eval_series(const EpsSeries& x, Real eps, Real theta);
std::vector<Real> series_norms(const EpsSeries& x, Real rho);

// Coefficients S_n of g(theta + u_eps(theta)) built one order at a time via
// the per-mode recursion
//   (n+1) S^k_{n+1} = sum_{l=0}^{n} 2 pi i k (l+1) u_{l+1} S^k_{n-l},
//   S^k_0 = g_k e^{2 pi i k theta},
// summed over the modes k of g. Orders of u are supplied incrementally so
// extending an order-N expansion costs one recursion layer.
class ComposeRecursion {
 public:
  explicit ComposeRecursion(const TrigPoly& g);
  ~ComposeRecursion();
  ComposeRecursion(ComposeRecursion&&) noexcept;
  ComposeRecursion& operator=(ComposeRecursion&&) noexcept;

  // Supply u_m for m = orders_pushed()+1.
  void push_u(const TrigPoly& u_m);
  int orders_pushed() const;
  // S_n; requires orders_pushed() >= n.
  TrigPoly coeff(int n) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot composition: coefficients of g(theta + u_eps(theta)) through
// out_order. Requires u_0 = 0.
EpsSeries compose_perturbation(const EpsSeries& u, const TrigPoly& g,
                               int out_order);

}  // namespace dsm
