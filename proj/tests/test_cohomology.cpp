#include <cmath>
#include <random>

#include "cohomology.hpp"
#include "doctest.h"

using namespace dsm;

namespace {

Frequency golden(int k_max = 512) {
  return Frequency(Frequency::golden_mean(), Real(1.5), Real(1), k_max);
}

TrigPoly random_zero_mean(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<TrigPoly::CosSinMode> modes;
  for (int k = 1; k <= deg; ++k)
    modes.push_back({k, Real(amp(rng)), Real(amp(rng))});
  return TrigPoly::from_cos_sin(modes);
}

// Substitution oracles: apply the defining difference operator.
TrigPoly apply_standard(const TrigPoly& phi, const Frequency& f) {
  return phi - rotate(phi, f, 1);
}
TrigPoly apply_second(const TrigPoly& phi, const Frequency& f) {
  return rotate(phi, f, 1) - Real(2) * phi + rotate(phi, f, -1);
}
TrigPoly apply_parametric(const TrigPoly& phi, Real lambda, const Frequency& f) {
  return lambda * phi - rotate(phi, f, 1);
}

}  // namespace

TEST_CASE("standard cohomology") {
  const Frequency freq = golden();

  CHECK(solve_standard(TrigPoly(), freq).is_zero());

  SUBCASE("single-mode closed form") {
    const TrigPoly eta = TrigPoly::harmonic(1, 1, 0);  // c_1 = 1/2
    const TrigPoly phi = solve_standard(eta, freq);
    const Complex expect = Complex(0.5, 0) / freq.standard_divisor(1);
    CHECK(std::abs(phi.mode(1) - expect) < 1e-16);
  }

  SUBCASE("substitution residual on random data") {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
      const TrigPoly eta = random_zero_mean(rng, 64);
      const TrigPoly phi = solve_standard(eta, freq);
      CHECK(std::abs(mean(phi)) == 0);
      CHECK(phi.degree() == eta.degree());
      const Real res = norm_rho(apply_standard(phi, freq) - eta, 0);
      CHECK(res <= 1e-12 * norm_rho(eta, 0));
    }
  }

  SUBCASE("linearity") {
    std::mt19937 rng(2);
    const TrigPoly a = random_zero_mean(rng, 16);
    const TrigPoly b = random_zero_mean(rng, 16);
    const TrigPoly lhs = solve_standard(Real(2) * a + Real(-3) * b, freq);
    const TrigPoly rhs =
        Real(2) * solve_standard(a, freq) + Real(-3) * solve_standard(b, freq);
    CHECK(norm_rho(lhs - rhs, 0) < 1e-13 * (norm_rho(lhs, 0) + 1));
  }

  SUBCASE("nonzero mean rejected, tiny mean projected") {
    const TrigPoly bad = TrigPoly::constant(0.5) + TrigPoly::harmonic(1, 1, 0);
    CHECK_THROWS_AS(solve_standard(bad, freq), ValidationError);
    const TrigPoly tiny =
        TrigPoly::constant(1e-15) + TrigPoly::harmonic(1, 1, 0);
    CHECK_NOTHROW(solve_standard(tiny, freq));
  }
}

TEST_CASE("second-difference equation") {
  const Frequency freq = golden();

  CHECK(solve_second_difference(TrigPoly(), freq).is_zero());

  SUBCASE("closed-form divisor at k = 1") {
    const TrigPoly eta = TrigPoly::harmonic(1, 1, 0);
    const TrigPoly phi = solve_second_difference(eta, freq);
    const Real div = 2 * (std::cos(kTwoPi * freq.omega()) - 1);
    CHECK(std::abs(phi.mode(1) - Complex(0.5, 0) / div) < 1e-16);
  }

  SUBCASE("substitution residual") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const TrigPoly eta = random_zero_mean(rng, 64);
      const TrigPoly phi = solve_second_difference(eta, freq);
      CHECK(phi.degree() == eta.degree());
      const Real res = norm_rho(apply_second(phi, freq) - eta, 0);
      CHECK(res <= 1e-12 * norm_rho(eta, 0));
    }
  }

  CHECK_THROWS_AS(solve_second_difference(TrigPoly::constant(1), freq),
                  ValidationError);
}

TEST_CASE("parametric equation, formal route") {
  const Frequency freq = golden();

  SUBCASE("zero data") {
    const EpsSeries phi = solve_parametric_formal(EpsSeries(5), 3, freq);
    CHECK(phi.lead() == 6);
  }

  SUBCASE("alpha beyond the order reduces to the standard solve exactly") {
    std::mt19937 rng(5);
    EpsSeries eta(6);
    for (int n = 0; n <= 6; ++n) eta.coeff(n) = random_zero_mean(rng, 8);
    const EpsSeries phi = solve_parametric_formal(eta, 7, freq);
    for (int n = 0; n <= 6; ++n) {
      const TrigPoly direct = solve_standard(eta.coeff(n), freq);
      CHECK(norm_rho(phi.coeff(n) - direct, 0) == 0);
    }
  }

  SUBCASE("coupled orders satisfy the order-wise identity") {
    std::mt19937 rng(6);
    const int alpha = 3;
    EpsSeries eta(9);
    for (int n = 0; n <= 9; ++n) eta.coeff(n) = random_zero_mean(rng, 6);
    const EpsSeries phi = solve_parametric_formal(eta, alpha, freq);
    for (int n = 0; n <= 9; ++n) {
      TrigPoly want = eta.coeff(n);
      if (n - alpha >= 0) want = want + phi.coeff(n - alpha);
      const Real res = norm_rho(apply_standard(phi.coeff(n), freq) - want, 0);
      CHECK(res <= 1e-12 * std::max(Real(1), norm_rho(want, 0)));
    }
  }

  SUBCASE("matches the numeric route through divided differences") {
    // Reconstruct series coefficients of the fixed-eps solutions at several
    // eps nodes (Vandermonde solve) and compare with the formal solution.
    std::mt19937 rng(7);
    const int alpha = 3, order = 6, deg = 1;
    EpsSeries eta(order);
    eta.coeff(0) = random_zero_mean(rng, deg);  // single eps-order suffices
    const EpsSeries phi = solve_parametric_formal(eta, alpha, freq);

    const int aN = 8;
    const Real gamma = gamma_radius(freq, alpha, aN);
    const int nodes = order + 1;
    std::vector<Real> es(nodes);
    for (int i = 0; i < nodes; ++i) es[size_t(i)] = gamma * Real(i + 1) / (3 * nodes);

    // Solve the Vandermonde system per Fourier mode.
    for (int k = 1; k <= deg; ++k) {
      std::vector<Complex> rhs(nodes);
      for (int i = 0; i < nodes; ++i) {
        const TrigPoly sol =
            solve_parametric_numeric(eta.coeff(0), es[size_t(i)], alpha, freq, aN);
        rhs[size_t(i)] = sol.mode(k);
      }
      // Newton divided differences, then expand to monomial coefficients.
      std::vector<Complex> dd = rhs;
      for (int j = 1; j < nodes; ++j)
        for (int i = nodes - 1; i >= j; --i)
          dd[size_t(i)] = (dd[size_t(i)] - dd[size_t(i - 1)]) /
                          Complex(es[size_t(i)] - es[size_t(i - j)]);
      std::vector<Complex> coef(nodes, Complex(0));
      coef[0] = dd[size_t(nodes - 1)];
      for (int j = nodes - 2; j >= 0; --j) {
        for (int i = nodes - 1; i >= 1; --i)
          coef[size_t(i)] = coef[size_t(i - 1)] - es[size_t(j)] * coef[size_t(i)];
        coef[0] = dd[size_t(j)] - es[size_t(j)] * coef[0];
      }
      for (int n = 0; n <= order; ++n)
        CHECK(std::abs(coef[size_t(n)] - phi.coeff(n).mode(k)) < 1e-8);
    }
  }
}

TEST_CASE("parametric equation, numeric route") {
  const Frequency freq = golden();
  const int alpha = 3;

  SUBCASE("eps = 0 reduces to the standard solve") {
    std::mt19937 rng(8);
    const TrigPoly eta = random_zero_mean(rng, 8);
    const TrigPoly a = solve_parametric_numeric(eta, 0, alpha, freq, 8);
    const TrigPoly b = solve_standard(eta, freq);
    CHECK(norm_rho(a - b, 0) == 0);
  }

  SUBCASE("divisor lower bound holds on the guaranteed ball") {
    const int aN = 8;
    const Real gamma = gamma_radius(freq, alpha, aN);
    const Real bound = freq.nu() / 2 * std::pow(Real(aN), -freq.tau());
    for (Real eps : {gamma, -gamma, Real(0.5) * gamma}) {
      const Complex lambda = Real(1) - std::pow(Complex(eps), alpha);
      for (int k = -aN; k <= aN; ++k) {
        if (k == 0) continue;
        CHECK(std::abs(lambda - freq.unit_mode(k)) >= bound * (1 - 1e-12));
      }
    }
  }

  SUBCASE("substitution residual") {
    std::mt19937 rng(9);
    const int aN = 64;
    const Real gamma = gamma_radius(freq, alpha, aN);
    for (int trial = 0; trial < 100; ++trial) {
      const TrigPoly eta = random_zero_mean(rng, 64);
      const Real eps = gamma * Real(trial + 1) / 101;
      const TrigPoly phi = solve_parametric_numeric(eta, eps, alpha, freq, aN);
      const Real lambda = 1 - std::pow(eps, alpha);
      const Real res = norm_rho(apply_parametric(phi, lambda, freq) - eta, 0);
      CHECK(res <= 1e-12 * norm_rho(eta, 0));
      CHECK(std::abs(mean(phi)) == 0);
      CHECK(phi.degree() == eta.degree());
    }
  }

  SUBCASE("domain and degree preconditions") {
    std::mt19937 rng(10);
    const TrigPoly eta = random_zero_mean(rng, 9);
    CHECK_THROWS_AS(solve_parametric_numeric(eta, 0.0, alpha, freq, 8),
                    ValidationError);  // degree 9 > aN = 8
    const Real gamma = gamma_radius(freq, alpha, 16);
    CHECK_THROWS_AS(
        solve_parametric_numeric(random_zero_mean(rng, 16), 2 * gamma, alpha,
                                 freq, 16),
        ValidationError);  // |eps| beyond gamma_N
  }
}
