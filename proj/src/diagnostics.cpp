#include "diagnostics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dsm {

namespace {

// Householder QR solve of an m x n least-squares problem, n small.
std::vector<long double> lstsq(std::vector<std::vector<long double>> a,
                               std::vector<long double> b) {
  const size_t m = a.size();
  const size_t n = a.empty() ? 0 : a[0].size();
  for (size_t j = 0; j < n; ++j) {
    long double norm = 0;
    for (size_t i = j; i < m; ++i) norm += a[i][j] * a[i][j];
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    if (a[j][j] > 0) norm = -norm;
    std::vector<long double> v(m, 0.0L);
    for (size_t i = j; i < m; ++i) v[i] = a[i][j];
    v[j] -= norm;
    long double vtv = 0;
    for (size_t i = j; i < m; ++i) vtv += v[i] * v[i];
    if (vtv == 0) continue;
    for (size_t c = j; c < n; ++c) {
      long double dot = 0;
      for (size_t i = j; i < m; ++i) dot += v[i] * a[i][c];
      const long double f = 2 * dot / vtv;
      for (size_t i = j; i < m; ++i) a[i][c] -= f * v[i];
    }
    long double dot = 0;
    for (size_t i = j; i < m; ++i) dot += v[i] * b[i];
    const long double f = 2 * dot / vtv;
    for (size_t i = j; i < m; ++i) b[i] -= f * v[i];
  }
  std::vector<long double> x(n, 0.0L);
  for (size_t j = n; j-- > 0;) {
    long double s = b[j];
    for (size_t c = j + 1; c < n; ++c) s -= a[j][c] * x[c];
    x[j] = a[j][j] == 0 ? 0.0L : s / a[j][j];
  }
  return x;
}

}  // namespace

std::vector<Real> coefficient_norms(const EpsSeries& x, Real rho) {
  return series_norms(x, rho);
}

std::vector<Real> coefficient_norms(const Embedding& K, Real rho) {
  std::vector<Real> out(size_t(K.order()) + 1);
  for (int n = 0; n <= K.order(); ++n)
    out[size_t(n)] = std::hypot(norm_rho(K.x_off.coeff(n), rho),
                                norm_rho(K.y.coeff(n), rho));
  return out;
}

GevreyFit fit_gevrey(std::span<const Real> norms, int n_min, int n_max,
                     Real bound) {
  if (n_min < 1 || n_max >= int(norms.size()) || n_max - n_min < 8)
    throw ValidationError("Gevrey fit window needs n_max - n_min >= 8 inside the data");
  std::vector<std::vector<long double>> a;
  std::vector<long double> b;
  for (int n = n_min; n <= n_max; ++n) {
    const Real v = norms[size_t(n)];
    if (!(v > 0) || !std::isfinite(double(v)))
      throw ValidationError("Gevrey fit window contains a nonpositive norm at n = " +
                            std::to_string(n));
    const long double ln = std::log((long double)v);
    a.push_back({1.0L, (long double)n, n * std::log((long double)n)});
    b.push_back(ln);
  }
  const auto sol = lstsq(a, b);
  GevreyFit fit;
  fit.log_offset = Real(sol[0]);
  fit.log_rate = Real(sol[1]);
  fit.sigma = Real(sol[2]);
  long double rss = 0;
  for (int n = n_min; n <= n_max; ++n) {
    const long double pred =
        sol[0] + sol[1] * n + sol[2] * n * std::log((long double)n);
    const long double r = std::log((long double)norms[size_t(n)]) - pred;
    rss += r * r;
  }
  fit.residual = Real(std::sqrt(rss / (n_max - n_min + 1)));
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.bound = bound;
  return fit;
}

Real estimate_diophantine(Real omega, Real tau, int k_max) {
  if (k_max < 1) throw ValidationError("estimate_diophantine needs k_max >= 1");
  Real best = std::numeric_limits<Real>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    Real p = Real(k) * omega;
    const Real err = std::fma(Real(k), omega, -p);
    const Real frac = (p - std::nearbyint(p)) + err;
    const Real div = 2 * std::abs(std::sin(Real(0.5) * kTwoPi * frac));
    best = std::min(best, div * std::pow(Real(k), tau));
  }
  return best;
}

Real gamma_n(const MapSpec& map, int N) {
  if (N < 1) throw ValidationError("gamma_N needs N >= 1");
  return gamma_radius(map.freq, map.alpha, std::max(1, map.a()) * N);
}

Real tilde_nu(Complex lambda, const Frequency& freq, int k_max) {
  Real sup = 0;
  for (int k = 1; k <= k_max; ++k) {
    const Complex e = freq.unit_mode(k);
    const Real kt = std::pow(Real(k), -freq.tau());
    const Real d1 = std::abs(e - lambda);
    const Real d2 = std::abs(std::conj(e) - lambda);
    if (d1 == 0 || d2 == 0)
      throw ValidationError("lambda hits a resonance in tilde_nu");
    sup = std::max({sup, kt / d1, kt / d2});
  }
  return sup;
}

bool in_set_g(Complex eps, Real A, int N, const MapSpec& map, int k_max) {
  const Complex lambda = Real(1) - std::pow(eps, map.alpha);
  const Real nu_t = tilde_nu(lambda, map.freq, k_max);
  return nu_t * std::pow(std::abs(lambda - Real(1)), Real(N + 1)) <= A;
}

ResidualScan residual_scan(const MapSpec& map, const Embedding& K,
                           const ScalarSeries& mu,
                           std::span<const Real> eps_samples,
                           std::span<const Real> theta_samples) {
  using LD = long double;
  constexpr LD ld_eps = std::numeric_limits<LD>::epsilon();
  const LD w = LD(map.freq.omega());

  // Horner evaluation of a coefficient series at (eps, theta).
  const auto eval_ld = [](const EpsSeries& s, LD e, LD th) {
    LD v = 0;
    for (int n = s.order(); n >= 0; --n) {
      const TrigPoly& p = s.coeff(n);
      LD pv = 0;
      for (int k = 1; k <= p.degree(); ++k) {
        const Complex c = p.mode(k);
        if (c == Complex(0)) continue;
        const LD arg = LD(kTwoPi) * k * th;
        pv += 2 * (LD(c.real()) * std::cos(arg) - LD(c.imag()) * std::sin(arg));
      }
      pv += LD(mean(s.coeff(n)));
      v = v * e + pv;
    }
    return v;
  };

  ResidualScan scan;
  for (const Real eps : eps_samples) {
    LD worst = 0, floor = 0;
    for (const Real th : theta_samples) {
      const LD t = LD(th);
      const LD x = t + eval_ld(K.x_off, LD(eps), t);
      const LD y = eval_ld(K.y, LD(eps), t);
      LD m = 0;
      for (int n = mu.order(); n >= 0; --n) m = m * LD(eps) + LD(mu.coeff(n));
      LD fx, fy;
      map.apply<LD>(x, y, LD(eps), m, fx, fy);
      const LD x2 = (t + w) + eval_ld(K.x_off, LD(eps), t + w);
      const LD y2 = eval_ld(K.y, LD(eps), t + w);
      const LD r = std::max(std::abs(fx - x2), std::abs(fy - y2));
      // Magnitude of what was subtracted, for the roundoff floor.
      const LD mag = std::max(std::abs(fx) + std::abs(x2),
                              std::abs(fy) + std::abs(y2));
      worst = std::max(worst, r);
      floor = std::max(floor, 10 * ld_eps * mag);
    }
    ResidualSample s;
    s.eps = eps;
    s.residual = Real(worst);
    s.floor = Real(floor);
    s.usable = worst > floor;
    scan.samples.push_back(s);
  }

  std::vector<std::vector<long double>> a;
  std::vector<long double> b;
  for (const auto& s : scan.samples) {
    if (!s.usable) continue;
    a.push_back({1.0L, std::log((long double)s.eps)});
    b.push_back(std::log((long double)s.residual));
  }
  scan.used = int(a.size());
  if (scan.used >= 2) {
    const auto sol = lstsq(a, b);
    scan.offset = Real(sol[0]);
    scan.slope = Real(sol[1]);
  } else {
    scan.slope = scan.offset = std::numeric_limits<Real>::quiet_NaN();
  }
  return scan;
}

}  // namespace dsm
