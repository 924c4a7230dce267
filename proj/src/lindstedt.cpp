#include "lindstedt.hpp"

#include <cmath>

namespace dsm {

MapSpec::MapSpec(TrigPoly g_, int alpha_, Frequency freq_)
    : g(std::move(g_)), alpha(alpha_), freq(std::move(freq_)) {
  if (alpha < 1) throw ValidationError("dissipation order alpha must be >= 1");
}

Real MapSpec::lambda(Real eps) const { return 1 - std::pow(eps, alpha); }

ScalarSeries MapSpec::lambda_series(int order) const {
  ScalarSeries lam(order);
  lam.coeff(0) = 1;
  if (alpha <= order) lam.coeff(alpha) = -1;
  return lam;
}

std::array<Real, 4> MapSpec::jacobian(Real x, Real y, Real eps) const {
  (void)y;
  const Real gp = eval(derivative(g), x);
  const Real lam = lambda(eps);
  return {1 - eps * gp, lam, -eps * gp, lam};
}

HullExpansion direct_expansion(const MapSpec& map, int N) {
  if (N < 0) throw ValidationError("expansion order must be >= 0");
  const Real w = map.freq.omega();
  HullExpansion out{EpsSeries(N), ScalarSeries(N)};
  ComposeRecursion comp(map.g);
  for (int n = 1; n <= N; ++n) {
    const TrigPoly s_prev = comp.coeff(n - 1);
    out.mu.coeff(n) = mean(s_prev) + (n == map.alpha ? w : Real(0));
    TrigPoly rhs = Real(-1) * remove_mean(s_prev);
    if (n - map.alpha >= 1) {
      const TrigPoly& un_a = out.u.coeff(n - map.alpha);
      rhs = rhs - (un_a - rotate(un_a, map.freq, -1));
    }
    out.u.coeff(n) = solve_second_difference(rhs, map.freq);
    comp.push_u(out.u.coeff(n));
  }
  return out;
}

Embedding hull_to_embedding(const HullExpansion& hull, const MapSpec& map) {
  const int N = hull.order();
  Embedding K{hull.u, EpsSeries(N)};
  for (int n = 0; n <= N; ++n)
    K.y.coeff(n) = hull.u.coeff(n) - rotate(hull.u.coeff(n), map.freq, -1);
  K.y.coeff(0) = K.y.coeff(0) + TrigPoly::constant(map.freq.omega());
  return K;
}

HullExpansion embedding_to_hull(const Embedding& K, const ScalarSeries& mu) {
  return HullExpansion{K.x_off, series_pad(mu, K.order())};
}

std::pair<EpsSeries, EpsSeries> assemble_invariance_defect(
    const MapSpec& map, const Embedding& K, const ScalarSeries& mu,
    int out_order) {
  const int o = out_order;
  const EpsSeries ux = series_pad(K.x_off, o);
  const EpsSeries ky = series_pad(K.y, o);
  const ScalarSeries lam = map.lambda_series(o);
  const EpsSeries comp = compose_perturbation(ux, map.g, o);
  const EpsSeries eps_g = series_shift_up(comp, o);
  const EpsSeries mu_s = series_promote(series_pad(mu, o));

  // fy = lambda y + mu - eps g(K_x);  E2 = fy - K_y o T_w
  EpsSeries fy = series_sub(series_add(series_mul(ky, lam, o), mu_s), eps_g);
  EpsSeries e2 = series_sub(fy, series_rotate(ky, map.freq, 1));
  // fx = K_x + fy; E1 = fx - K_x o T_w, with the identity part cancelling to
  // the constant -w.
  EpsSeries e1 = series_add(ux, fy);
  e1.coeff(0) = e1.coeff(0) - TrigPoly::constant(map.freq.omega());
  e1 = series_sub(e1, series_rotate(ux, map.freq, 1));
  return {std::move(e1), std::move(e2)};
}

}  // namespace dsm
