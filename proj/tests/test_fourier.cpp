#include <cmath>
#include <random>

#include "doctest.h"
#include "fourier.hpp"

using namespace dsm;

namespace {

Frequency golden(int k_max = 256) {
  const Real om = Frequency::golden_mean();
  // 1.8640 is the cache minimum of |e^{2 pi i k om} - 1| k for the golden
  // mean; any nu at or below it is admissible.
  return Frequency(om, Real(1.5), Real(1), k_max);
}

TrigPoly random_poly(std::mt19937& rng, int deg, bool zero_mean = false) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::vector<TrigPoly::CosSinMode> modes;
  for (int k = zero_mean ? 1 : 0; k <= deg; ++k)
    modes.push_back({k, Real(amp(rng)), k == 0 ? Real(0) : Real(amp(rng))});
  return TrigPoly::from_cos_sin(modes);
}

bool reality_holds(const TrigPoly& p) {
  for (int k = 0; k <= p.degree(); ++k)
    if (std::abs(p.mode(-k) - std::conj(p.mode(k))) != 0) return false;
  return true;
}

Real max_mode_diff(const TrigPoly& p, const TrigPoly& q) {
  Real m = 0;
  const int d = std::max(p.degree(), q.degree());
  for (int k = -d; k <= d; ++k) m = std::max(m, std::abs(p.mode(k) - q.mode(k)));
  return m;
}

}  // namespace

TEST_CASE("addition identities") {
  const TrigPoly cosine = TrigPoly::harmonic(1, 1, 0);
  const TrigPoly sine = TrigPoly::harmonic(1, 0, 1);

  CHECK(max_mode_diff(cosine + TrigPoly(), cosine) == 0);

  const TrigPoly twice = cosine + cosine;
  CHECK(twice.mode(1) == Complex(1, 0));  // 2 * (1/2)
  CHECK(twice.degree() == 1);

  // cos + sin in the exponential basis: c_1 = 1/2 - i/2.
  const TrigPoly s = cosine + sine;
  CHECK(std::abs(s.mode(1) - Complex(0.5, -0.5)) == 0);
  CHECK(std::abs(s.mode(-1) - Complex(0.5, 0.5)) == 0);
}

TEST_CASE("product identities") {
  const TrigPoly cosine = TrigPoly::harmonic(1, 1, 0);
  const TrigPoly sine = TrigPoly::harmonic(1, 0, 1);
  const TrigPoly one = TrigPoly::constant(1);

  CHECK(max_mode_diff(cosine * one, cosine) == 0);

  // cos^2 = 1/2 + cos(2.)/2
  const TrigPoly sq = cosine * cosine;
  CHECK(sq.degree() == 2);
  CHECK(std::abs(mean(sq) - 0.5) < 1e-16);
  CHECK(std::abs(sq.mode(2) - Complex(0.25, 0)) < 1e-16);

  // sin cos = sin(2.)/2
  const TrigPoly sc = sine * cosine;
  const TrigPoly expected = Real(0.5) * TrigPoly::harmonic(2, 0, 1);
  CHECK(max_mode_diff(sc, expected) < 1e-16);
}

TEST_CASE("rotation") {
  const Frequency freq = golden();
  const TrigPoly p = TrigPoly::harmonic(3, 0.7, -0.2) + TrigPoly::harmonic(1, 1, 0);

  CHECK(max_mode_diff(rotate(p, freq, 0), p) == 0);

  const TrigPoly c = TrigPoly::constant(2.5);
  CHECK(max_mode_diff(rotate(c, freq, 1), c) == 0);

  // A single exponential mode picks up the phase e^{2 pi i omega}.
  const TrigPoly m = TrigPoly::mode_pair(1, Complex(0.5, 0.25));
  const TrigPoly r = rotate(m, freq, 1);
  const Complex expect = Complex(0.5, 0.25) * freq.unit_mode(1);
  CHECK(std::abs(r.mode(1) - expect) < 1e-16);

  SUBCASE("rotate then unrotate is the identity to roundoff") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const TrigPoly q = random_poly(rng, 12);
      CHECK(max_mode_diff(rotate(rotate(q, freq, 1), freq, -1), q) < 1e-15);
    }
  }
}

TEST_CASE("derivative") {
  CHECK(derivative(TrigPoly::constant(4)).is_zero());

  const TrigPoly sine = TrigPoly::harmonic(1, 0, 1);
  const TrigPoly expected = kTwoPi * TrigPoly::harmonic(1, 1, 0);
  CHECK(max_mode_diff(derivative(sine), expected) < 1e-15);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial)
    CHECK(mean(derivative(random_poly(rng, 9))) == 0);
}

TEST_CASE("evaluation") {
  const TrigPoly cosine = TrigPoly::harmonic(1, 1, 0);
  const TrigPoly sine = TrigPoly::harmonic(1, 0, 1);
  CHECK(eval(cosine, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval(sine, 0.25) == doctest::Approx(1.0).epsilon(1e-15));

  // Mode-by-mode summation in the opposite order agrees to machine precision.
  std::mt19937 rng(3);
  const TrigPoly p = random_poly(rng, 16);
  for (Real th : {Real(0.1), Real(0.37), Real(0.99)}) {
    Complex direct(0);
    for (int k = p.degree(); k >= -p.degree(); --k)
      direct += p.mode(k) * std::exp(Complex(0, kTwoPi * k * th));
    CHECK(std::abs(eval(p, th) - direct.real()) < 1e-13);
  }
}

TEST_CASE("majorant norm") {
  CHECK(norm_rho(TrigPoly(), 1.0) == 0);

  const TrigPoly cosine = TrigPoly::harmonic(1, 1, 0);
  CHECK(norm_rho(cosine, 0) == doctest::Approx(1.0).epsilon(1e-15));
  const Real rho = 0.3;
  CHECK(norm_rho(cosine, rho) ==
        doctest::Approx(std::exp(kTwoPi * rho)).epsilon(1e-14));

  SUBCASE("algebra norm at the majorant level") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const TrigPoly p = random_poly(rng, 6);
      const TrigPoly q = random_poly(rng, 8);
      for (Real r : {Real(0), Real(0.05), Real(0.2)})
        CHECK(norm_rho(p * q, r) <=
              norm_rho(p, r) * norm_rho(q, r) * (1 + 1e-13));
    }
  }

  SUBCASE("monotone in rho") {
    std::mt19937 rng(6);
    const TrigPoly p = random_poly(rng, 10);
    CHECK(norm_rho(p, 0.0) <= norm_rho(p, 0.1));
    CHECK(norm_rho(p, 0.1) <= norm_rho(p, 0.2));
  }
}

TEST_CASE("mean") {
  CHECK(mean(TrigPoly::harmonic(1, 0, 1)) == 0);
  CHECK(mean(TrigPoly::constant(2.25)) == 2.25);
  const TrigPoly c = TrigPoly::harmonic(1, 1, 0);
  CHECK(mean(c * c) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("reality closure under operation chains") {
  std::mt19937 rng(17);
  const Frequency freq = golden();
  for (int trial = 0; trial < 25; ++trial) {
    TrigPoly p = random_poly(rng, 5);
    TrigPoly q = random_poly(rng, 7);
    CHECK(reality_holds(p + q));
    CHECK(reality_holds(p - q));
    CHECK(reality_holds(p * q));
    CHECK(reality_holds(rotate(p, freq, 1)));
    CHECK(reality_holds(derivative(q)));
    CHECK(reality_holds(Real(-2.5) * p));
  }
}

TEST_CASE("degree arithmetic") {
  std::mt19937 rng(23);
  const TrigPoly p = random_poly(rng, 4);
  const TrigPoly q = random_poly(rng, 6);
  CHECK((p * q).degree() == 10);  // leading amplitudes generically survive
  CHECK((p + q).degree() <= 6);

  // Exact cancellation of the top pair reduces the stored degree.
  const TrigPoly a = TrigPoly::harmonic(3, 1, 0) + TrigPoly::harmonic(1, 1, 0);
  const TrigPoly b = Real(-1) * TrigPoly::harmonic(3, 1, 0);
  CHECK((a + b).degree() == 1);
}

TEST_CASE("frequency construction validates the Diophantine bound") {
  CHECK_NOTHROW(golden());

  // omega = 1/2 is resonant at k = 2.
  CHECK_THROWS_AS(Frequency(0.5, 0.1, 1.0, 16), ValidationError);

  // A nu above the cache minimum must be rejected.
  const Real om = Frequency::golden_mean();
  CHECK_THROWS_AS(Frequency(om, Real(1.9), Real(1), 256), ValidationError);

  CHECK_THROWS_AS(Frequency(1.5, 0.5, 1.0, 8), ValidationError);
  CHECK_THROWS_AS(Frequency(om, -1.0, 1.0, 8), ValidationError);
}
