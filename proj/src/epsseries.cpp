#include "epsseries.hpp"

#include <algorithm>
#include <cmath>

namespace dsm {

ScalarSeries ss_add(const ScalarSeries& x, const ScalarSeries& y) {
  ScalarSeries z(std::max(x.order(), y.order()));
  for (int n = 0; n <= z.order(); ++n) {
    Real v = 0;
    if (n <= x.order()) v += x.coeff(n);
    if (n <= y.order()) v += y.coeff(n);
    z.coeff(n) = v;
  }
  return z;
}

ScalarSeries ss_sub(const ScalarSeries& x, const ScalarSeries& y) {
  return ss_add(x, ss_scale(-1, y));
}

ScalarSeries ss_mul(const ScalarSeries& x, const ScalarSeries& y, int out_order) {
  ScalarSeries z(out_order);
  for (int n = 0; n <= out_order; ++n) {
    Real v = 0;
    for (int j = std::max(0, n - y.order()); j <= std::min(n, x.order()); ++j)
      v += x.coeff(j) * y.coeff(n - j);
    z.coeff(n) = v;
  }
  return z;
}

ScalarSeries ss_scale(Real s, const ScalarSeries& x) {
  ScalarSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = s * x.coeff(n);
  return z;
}

ScalarSeries ss_window(const ScalarSeries& x, int a, int b) {
  if (a > b || b > x.order())
    throw ValidationError("window indices out of range");
  ScalarSeries z(x.order());
  for (int n = a + 1; n <= b; ++n) z.coeff(n) = x.coeff(n);
  return z;
}

ScalarSeries ss_reciprocal(const ScalarSeries& x, int out_order) {
  if (x.coeff(0) == 0)
    throw ValidationError("series reciprocal needs a nonzero constant term");
  ScalarSeries z(out_order);
  const Real r0 = 1 / x.coeff(0);
  z.coeff(0) = r0;
  for (int n = 1; n <= out_order; ++n) {
    Real acc = 0;
    for (int j = 1; j <= std::min(n, x.order()); ++j)
      acc += x.coeff(j) * z.coeff(n - j);
    z.coeff(n) = -r0 * acc;
  }
  return z;
}

Real ss_eval(const ScalarSeries& x, Real eps) {
  Real v = 0;
  for (int n = x.order(); n >= 0; --n) v = v * eps + x.coeff(n);
  return v;
}

EpsSeries::EpsSeries(int order) {
  if (order < 0) throw ValidationError("series order must be >= 0");
  c_.resize(size_t(order) + 1);
}

int EpsSeries::lead(Real rel_tol) const {
  Real scale = 0;
  for (const auto& t : c_) scale = std::max(scale, norm_rho(t, 0));
  const Real cut = rel_tol * scale;
  for (int n = 0; n <= order(); ++n)
    if (norm_rho(c_[size_t(n)], 0) > cut) return n;
  return order() + 1;
}

EpsSeries series_add(const EpsSeries& x, const EpsSeries& y) {
  EpsSeries z(std::max(x.order(), y.order()));
  for (int n = 0; n <= z.order(); ++n) {
    if (n <= x.order() && n <= y.order())
      z.coeff(n) = x.coeff(n) + y.coeff(n);
    else
      z.coeff(n) = n <= x.order() ? x.coeff(n) : y.coeff(n);
  }
  return z;
}

EpsSeries series_sub(const EpsSeries& x, const EpsSeries& y) {
  EpsSeries z(std::max(x.order(), y.order()));
  for (int n = 0; n <= z.order(); ++n) {
    const TrigPoly a = n <= x.order() ? x.coeff(n) : TrigPoly();
    const TrigPoly b = n <= y.order() ? y.coeff(n) : TrigPoly();
    z.coeff(n) = a - b;
  }
  return z;
}

EpsSeries series_mul(const EpsSeries& x, const EpsSeries& y, int out_order) {
  EpsSeries z(out_order);
  for (int n = 0; n <= out_order; ++n) {
    TrigPoly acc;
    for (int j = std::max(0, n - y.order()); j <= std::min(n, x.order()); ++j)
      acc = acc + x.coeff(j) * y.coeff(n - j);
    z.coeff(n) = acc;
  }
  return z;
}

EpsSeries series_mul(const EpsSeries& x, const ScalarSeries& y, int out_order) {
  EpsSeries z(out_order);
  for (int n = 0; n <= out_order; ++n) {
    TrigPoly acc;
    for (int j = std::max(0, n - y.order()); j <= std::min(n, x.order()); ++j)
      acc = acc + y.coeff(n - j) * x.coeff(j);
    z.coeff(n) = acc;
  }
  return z;
}

EpsSeries series_scale(Real s, const EpsSeries& x) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = s * x.coeff(n);
  return z;
}

EpsSeries series_mul_poly(const TrigPoly& p, const EpsSeries& x) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = p * x.coeff(n);
  return z;
}

EpsSeries window(const EpsSeries& x, int a, int b) {
  if (a > b || b > x.order())
    throw ValidationError("window indices out of range");
  EpsSeries z(x.order());
  for (int n = a + 1; n <= b; ++n) z.coeff(n) = x.coeff(n);
  return z;
}

ScalarSeries window(const ScalarSeries& x, int a, int b) {
  return ss_window(x, a, b);
}

EpsSeries series_pad(const EpsSeries& x, int order) {
  EpsSeries z(order);
  for (int n = 0; n <= std::min(order, x.order()); ++n) z.coeff(n) = x.coeff(n);
  return z;
}

ScalarSeries series_pad(const ScalarSeries& x, int order) {
  ScalarSeries z(order);
  for (int n = 0; n <= std::min(order, x.order()); ++n) z.coeff(n) = x.coeff(n);
  return z;
}

EpsSeries series_rotate(const EpsSeries& x, const Frequency& freq, long s) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = rotate(x.coeff(n), freq, s);
  return z;
}

EpsSeries series_derivative(const EpsSeries& x) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = derivative(x.coeff(n));
  return z;
}

EpsSeries series_shift_up(const EpsSeries& x, int out_order) {
  EpsSeries z(out_order);
  for (int n = 1; n <= out_order; ++n)
    if (n - 1 <= x.order()) z.coeff(n) = x.coeff(n - 1);
  return z;
}

ScalarSeries series_mean(const EpsSeries& x) {
  ScalarSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = mean(x.coeff(n));
  return z;
}

EpsSeries series_remove_mean(const EpsSeries& x) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n) z.coeff(n) = remove_mean(x.coeff(n));
  return z;
}

EpsSeries series_promote(const ScalarSeries& x) {
  EpsSeries z(x.order());
  for (int n = 0; n <= x.order(); ++n)
    z.coeff(n) = TrigPoly::constant(x.coeff(n));
  return z;
}

EpsSeries series_reciprocal(const EpsSeries& x, int out_order) {
  const TrigPoly& c0 = x.coeff(0);
  const Real c0_mean = mean(c0);
  if (c0_mean == 0 ||
      norm_rho(remove_mean(c0), 0) > Real(1e-12) * std::abs(c0_mean))
    throw ValidationError(
        "series reciprocal needs a nonzero constant leading coefficient");
  EpsSeries z(out_order);
  const Real r0 = 1 / c0_mean;
  z.coeff(0) = TrigPoly::constant(r0);
  for (int n = 1; n <= out_order; ++n) {
    TrigPoly acc;
    for (int j = 1; j <= std::min(n, x.order()); ++j)
      acc = acc + x.coeff(j) * z.coeff(n - j);
    z.coeff(n) = -r0 * acc;
  }
  return z;
}

Real eval_series(const EpsSeries& x, Real eps, Real theta) {
  Real v = 0;
  for (int n = x.order(); n >= 0; --n) v = v * eps + eval(x.coeff(n), theta);
  return v;
}

std::vector<Real> series_norms(const EpsSeries& x, Real rho) {
  std::vector<Real> out(size_t(x.order()) + 1);
  for (int n = 0; n <= x.order(); ++n) out[size_t(n)] = norm_rho(x.coeff(n), rho);
  return out;
}

// ---------------------------------------------------------------------------
// Composition recursion.
//
// The per-mode partial sums S^k are not individually reality symmetric, so
// the recursion runs on raw complex mode vectors; reality is restored when
// the k and -k contributions are summed (S^{-k} = conj-reflect of S^k for
// real u).

namespace {

// Complex Laurent coefficients over k in [-deg, deg].
struct ModePoly {
  int deg = 0;
  std::vector<Complex> c;  // size 2 deg + 1

  ModePoly() : c(1) {}
  explicit ModePoly(int d) : deg(d), c(2 * size_t(d) + 1) {}
  Complex get(int k) const {
    return (k < -deg || k > deg) ? Complex(0) : c[size_t(k + deg)];
  }
};

// acc += s * (p * m) where p is reality-symmetric and m is raw.
void accumulate_product(ModePoly& acc, Real s, const TrigPoly& p,
                        const ModePoly& m) {
  for (int i = -p.degree(); i <= p.degree(); ++i) {
    const Complex pi = p.mode(i);
    if (pi == Complex(0)) continue;
    const Complex w = s * pi;
    for (int j = -m.deg; j <= m.deg; ++j)
      acc.c[size_t(i + j + acc.deg)] += w * m.c[size_t(j + m.deg)];
  }
}

}  // namespace

struct ComposeRecursion::Impl {
  TrigPoly g;
  std::vector<TrigPoly> u;          // u[m-1] holds u_m
  std::vector<int> ks;              // strictly positive modes of g
  std::vector<std::vector<ModePoly>> s;  // s[i][n] = S^{ks[i]}_n
  Real g0 = 0;                      // mean mode of g
};

ComposeRecursion::ComposeRecursion(const TrigPoly& g)
    : impl_(std::make_unique<Impl>()) {
  impl_->g = g;
  impl_->g0 = mean(g);
  for (int k = 1; k <= g.degree(); ++k) {
    if (g.mode(k) == Complex(0)) continue;
    impl_->ks.push_back(k);
    ModePoly s0(k);
    s0.c[size_t(2 * k)] = g.mode(k);  // g_k e^{2 pi i k theta}
    impl_->s.push_back({std::move(s0)});
  }
}

ComposeRecursion::~ComposeRecursion() = default;
ComposeRecursion::ComposeRecursion(ComposeRecursion&&) noexcept = default;
ComposeRecursion& ComposeRecursion::operator=(ComposeRecursion&&) noexcept =
    default;

int ComposeRecursion::orders_pushed() const { return int(impl_->u.size()); }

void ComposeRecursion::push_u(const TrigPoly& u_m) {
  impl_->u.push_back(u_m);
  const int n = int(impl_->u.size());  // computing S^k_n
  for (size_t i = 0; i < impl_->ks.size(); ++i) {
    const int k = impl_->ks[i];
    auto& layers = impl_->s[i];
    int deg = 0;
    for (int l = 0; l + 1 <= n; ++l)
      deg = std::max(deg, impl_->u[size_t(l)].degree() + layers[size_t(n - 1 - l)].deg);
    ModePoly acc(deg);
    for (int l = 0; l + 1 <= n; ++l)
      accumulate_product(acc, Real(l + 1), impl_->u[size_t(l)],
                         layers[size_t(n - 1 - l)]);
    const Complex f = Complex(0, kTwoPi * k / Real(n));
    for (auto& v : acc.c) v *= f;
    layers.push_back(std::move(acc));
  }
}

TrigPoly ComposeRecursion::coeff(int n) const {
  if (n < 0 || n > orders_pushed())
    throw ValidationError("composition coefficient requires u through that order");
  int deg = 0;
  for (const auto& layers : impl_->s) deg = std::max(deg, layers[size_t(n)].deg);
  TrigPolyBuilder b(deg);
  for (const auto& layers : impl_->s) {
    const ModePoly& m = layers[size_t(n)];
    for (int j = -m.deg; j <= m.deg; ++j) {
      const Complex v = m.c[size_t(j + m.deg)];
      if (v == Complex(0)) continue;
      b.add(j, v);
      b.add(-j, std::conj(v));  // the -k partner contributes the reflection
    }
  }
  if (n == 0) b.add(0, impl_->g0);
  return std::move(b).build();
}

EpsSeries compose_perturbation(const EpsSeries& u, const TrigPoly& g,
                               int out_order) {
  const Real u_scale = [&] {
    Real s = 0;
    for (int n = 0; n <= u.order(); ++n)
      s = std::max(s, norm_rho(u.coeff(n), 0));
    return s;
  }();
  if (norm_rho(u.coeff(0), 0) > Real(1e-12) * std::max(Real(1), u_scale))
    throw ValidationError("composition requires a hull correction with u_0 = 0");

  ComposeRecursion rec(g);
  for (int m = 1; m <= out_order; ++m)
    rec.push_u(m <= u.order() ? u.coeff(m) : TrigPoly());
  EpsSeries out(out_order);
  for (int n = 0; n <= out_order; ++n) out.coeff(n) = rec.coeff(n);
  return out;
}

}  // namespace dsm
