#pragma once

#include <array>

#include "cohomology.hpp"

namespace dsm {

// The dissipative standard map on the cylinder:
//   f(x, y) = (x + lambda(eps) y + mu - eps g(x), lambda(eps) y + mu - eps g(x))
// with conformal factor lambda(eps) = 1 - eps^alpha and trig-polynomial
// perturbation g.
struct MapSpec {
  TrigPoly g;
  int alpha;
  Frequency freq;

  MapSpec(TrigPoly g_, int alpha_, Frequency freq_);

  int a() const { return g.degree(); }
  Real lambda(Real eps) const;
  ScalarSeries lambda_series(int order) const;

  // Pointwise evaluation and Jacobian, for numeric diagnostics. The scalar
  // type is widened template-side so residual scans can run above the
  // coefficient precision.
  template <typename T>
  void apply(T x, T y, T eps, T mu, T& fx, T& fy) const {
    T gx = 0;
    for (int k = g.degree(); k >= 1; --k) {
      const Complex c = g.mode(k);
      if (c == Complex(0)) continue;
      const T arg = T(kTwoPi) * T(k) * x;
      gx += 2 * (T(c.real()) * std::cos(arg) - T(c.imag()) * std::sin(arg));
    }
    gx += T(mean(g));
    T lam = 1;
    for (int i = 0; i < alpha; ++i) lam *= eps;
    lam = 1 - lam;
    fy = lam * y + mu - eps * gx;
    fx = x + fy;
  }
  // Row-major [df1/dx, df1/dy, df2/dx, df2/dy].
  std::array<Real, 4> jacobian(Real x, Real y, Real eps) const;
};

// Lindstedt data for the invariant circle: hull correction u (u_0 = 0,
// zero-mean coefficients) and drift series mu.
struct HullExpansion {
  EpsSeries u;
  ScalarSeries mu;

  int order() const { return u.order(); }
};

// Embedding K(theta) = (theta + x_off(theta), y(theta)) of the torus.
struct Embedding {
  EpsSeries x_off;
  EpsSeries y;

  int order() const { return x_off.order(); }
};

// Order-by-order solve of the hull equation
//   u(t+w) - (1+lambda) u(t) + lambda u(t-w) + (1-lambda) w - mu
//     + eps g(t + u(t)) = 0,
// matching powers of eps: at order n,
//   L_w u_n + [u_{n-alpha} - u_{n-alpha} o T_{-w}] + w [n = alpha] - mu_n
//     + S_{n-1} = 0,
// with mu_n = mean(S_{n-1}) + w [n = alpha] and zero-mean u_n.
HullExpansion direct_expansion(const MapSpec& map, int N);

// K = (theta + u, w + u - u o T_{-w}).
Embedding hull_to_embedding(const HullExpansion& hull, const MapSpec& map);

// The hull coordinates of an embedding produced by this model.
HullExpansion embedding_to_hull(const Embedding& K, const ScalarSeries& mu);

// f o K - K o T_omega assembled as a series of the requested order from an
// order-N pair (K, mu); zero-padded above N.
std::pair<EpsSeries, EpsSeries> assemble_invariance_defect(
    const MapSpec& map, const Embedding& K, const ScalarSeries& mu,
    int out_order);

}  // namespace dsm
