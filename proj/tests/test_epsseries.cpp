#include <cmath>
#include <random>

#include "doctest.h"
#include "epsseries.hpp"

using namespace dsm;

namespace {

Frequency golden(int k_max = 256) {
  return Frequency(Frequency::golden_mean(), Real(1.5), Real(1), k_max);
}

TrigPoly random_poly(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<TrigPoly::CosSinMode> modes;
  for (int k = 0; k <= deg; ++k)
    modes.push_back({k, Real(amp(rng)), k == 0 ? Real(0) : Real(amp(rng))});
  return TrigPoly::from_cos_sin(modes);
}

EpsSeries random_series(std::mt19937& rng, int order, int deg,
                        bool zero_head = false) {
  EpsSeries s(order);
  for (int n = zero_head ? 1 : 0; n <= order; ++n)
    s.coeff(n) = random_poly(rng, deg);
  return s;
}

Real series_diff(const EpsSeries& x, const EpsSeries& y) {
  Real m = 0;
  for (int n = 0; n <= std::max(x.order(), y.order()); ++n) {
    const TrigPoly a = n <= x.order() ? x.coeff(n) : TrigPoly();
    const TrigPoly b = n <= y.order() ? y.coeff(n) : TrigPoly();
    m = std::max(m, norm_rho(a - b, 0));
  }
  return m;
}

}  // namespace

TEST_CASE("Cauchy product basics") {
  std::mt19937 rng(2);
  const EpsSeries x = random_series(rng, 5, 3);

  EpsSeries one(0);
  one.coeff(0) = TrigPoly::constant(1);
  CHECK(series_diff(series_mul(x, one, 5), x) == 0);

  // eps * eps truncated at order 1 is the zero series.
  EpsSeries eps(1);
  eps.coeff(1) = TrigPoly::constant(1);
  const EpsSeries sq = series_mul(eps, eps, 1);
  CHECK(sq.lead() == 2);

  SUBCASE("commutative and associative up to truncation") {
    const EpsSeries y = random_series(rng, 5, 2);
    const EpsSeries z = random_series(rng, 5, 2);
    CHECK(series_diff(series_mul(x, y, 5), series_mul(y, x, 5)) < 1e-14);
    const EpsSeries xy_z = series_mul(series_mul(x, y, 5), z, 5);
    const EpsSeries x_yz = series_mul(x, series_mul(y, z, 5), 5);
    CHECK(series_diff(xy_z, x_yz) < 1e-12);
  }
}

TEST_CASE("series reciprocal against the dissipation factor") {
  // (1 - eps^a) * reciprocal = 1 with no residue below the truncation order.
  for (int alpha : {1, 3}) {
    const int order = 9;
    EpsSeries lam(order);
    lam.coeff(0) = TrigPoly::constant(1);
    lam.coeff(alpha) = TrigPoly::constant(-1);
    const EpsSeries inv = series_reciprocal(lam, order);
    const EpsSeries prod = series_mul(lam, inv, order);
    CHECK(norm_rho(prod.coeff(0) - TrigPoly::constant(1), 0) < 1e-15);
    for (int n = 1; n <= order; ++n) CHECK(norm_rho(prod.coeff(n), 0) < 1e-15);
  }
  EpsSeries bad(2);
  bad.coeff(0) = TrigPoly::harmonic(1, 1, 0);  // non-constant leading term
  CHECK_THROWS_AS(series_reciprocal(bad, 2), ValidationError);
}

TEST_CASE("window") {
  std::mt19937 rng(4);
  EpsSeries x = random_series(rng, 8, 2, /*zero_head=*/true);

  CHECK(series_diff(window(x, 0, 8), x) == 0);  // x_0 = 0 already
  CHECK(window(x, 4, 4).lead() == 9);           // empty window

  SUBCASE("windows partition the index range") {
    const EpsSeries full = random_series(rng, 8, 2);
    const EpsSeries sum = series_add(
        series_add(window(full, -1, 4), window(full, 4, 6)), window(full, 6, 8));
    CHECK(series_diff(sum, full) == 0);
  }

  SUBCASE("idempotent") {
    const EpsSeries w = window(x, 2, 6);
    CHECK(series_diff(window(w, 2, 6), w) == 0);
  }

  CHECK_THROWS_AS(window(x, 3, 9), ValidationError);
}

TEST_CASE("composition with the zero correction") {
  const TrigPoly g = TrigPoly::harmonic(1, 0.3, 1.0) + TrigPoly::harmonic(2, -0.2, 0.1);
  EpsSeries u(6);  // zero series
  const EpsSeries s = compose_perturbation(u, g, 6);
  CHECK(norm_rho(s.coeff(0) - g, 0) < 1e-16);
  for (int n = 1; n <= 6; ++n) CHECK(s.coeff(n).is_zero());
}

TEST_CASE("composition first order is the chain rule") {
  std::mt19937 rng(9);
  const TrigPoly g = random_poly(rng, 3);
  EpsSeries u(4);
  u.coeff(1) = random_poly(rng, 2);
  const EpsSeries s = compose_perturbation(u, g, 4);
  const TrigPoly expected = u.coeff(1) * derivative(g);
  CHECK(norm_rho(s.coeff(1) - expected, 0) < 1e-13);
}

TEST_CASE("composition against numeric evaluation") {
  std::mt19937 rng(13);
  const TrigPoly g = random_poly(rng, 2);
  EpsSeries u(7);
  for (int n = 1; n <= 4; ++n) u.coeff(n) = Real(0.5) * random_poly(rng, n);
  const int order = 7;
  const EpsSeries s = compose_perturbation(u, g, order);

  for (Real eps : {Real(1e-2), Real(3e-2)}) {
    Real worst = 0;
    for (int i = 0; i < 17; ++i) {
      const Real th = Real(i) / 17;
      const Real direct = eval(g, th + eval_series(u, eps, th));
      const Real via_series = eval_series(s, eps, th);
      worst = std::max(worst, std::abs(direct - via_series));
    }
    // Error is the truncation tail, O(eps^{order+1}).
    CHECK(worst < 200 * std::pow(eps, order + 1));
  }
}

TEST_CASE("composition requires u_0 = 0") {
  const TrigPoly g = TrigPoly::harmonic(1, 0, 1);
  EpsSeries u(2);
  u.coeff(0) = TrigPoly::constant(0.1);
  CHECK_THROWS_AS(compose_perturbation(u, g, 2), ValidationError);
}

TEST_CASE("composition degree bound is exact") {
  std::mt19937 rng(21);
  for (int a : {1, 2, 3}) {
    const TrigPoly g = random_poly(rng, a);
    EpsSeries u(6);
    for (int n = 1; n <= 6; ++n) u.coeff(n) = random_poly(rng, a * n);
    const EpsSeries s = compose_perturbation(u, g, 6);
    for (int n = 0; n <= 6; ++n) CHECK(s.coeff(n).degree() <= a * (n + 1));
  }
}

TEST_CASE("composition eps-derivative identity") {
  // d/deps g(theta + u) = g'(theta + u) du/deps, checked at the series level.
  std::mt19937 rng(31);
  const TrigPoly g = random_poly(rng, 2);
  const int order = 6;
  EpsSeries u(order);
  for (int n = 1; n <= order; ++n) u.coeff(n) = Real(0.3) * random_poly(rng, n);

  const EpsSeries s = compose_perturbation(u, g, order);
  const EpsSeries sp = compose_perturbation(u, derivative(g), order);

  // du/deps and dS/deps as series of order - 1.
  EpsSeries du(order - 1), ds(order - 1);
  for (int n = 0; n < order; ++n) {
    du.coeff(n) = Real(n + 1) * u.coeff(n + 1);
    ds.coeff(n) = Real(n + 1) * s.coeff(n + 1);
  }
  const EpsSeries rhs = series_mul(sp, du, order - 1);
  CHECK(series_diff(ds, rhs) < 1e-12);
}

TEST_CASE("eval_series basics") {
  std::mt19937 rng(41);
  const TrigPoly p = random_poly(rng, 3);
  EpsSeries x(3);
  x.coeff(0) = p;
  x.coeff(2) = random_poly(rng, 2);
  CHECK(eval_series(x, 0, 0.3) == doctest::Approx(eval(p, 0.3)).epsilon(1e-15));
  CHECK(eval_series(EpsSeries(4), 0.7, 0.1) == 0);

  EpsSeries lin(1);
  lin.coeff(1) = p;
  CHECK(eval_series(lin, 0.25, 0.6) ==
        doctest::Approx(0.25 * eval(p, 0.6)).epsilon(1e-14));
}

TEST_CASE("lead respects tagged windows") {
  std::mt19937 rng(43);
  EpsSeries e = random_series(rng, 10, 2);
  const EpsSeries w = window(e, 5, 10);
  CHECK(w.lead() >= 6);
  CHECK(EpsSeries(7).lead() == 8);
}
