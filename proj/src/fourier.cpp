#include "fourier.hpp"

#include <algorithm>
#include <cmath>

namespace dsm {

namespace {

Real g_drop_tol = Real(1e-300);

// Fractional part of k*omega, compensated so the digits a small divisor
// lives in survive for k in the thousands.
Real reduced_angle(long k, Real omega) {
  Real p = Real(k) * omega;
  Real err = std::fma(Real(k), omega, -p);  // exact residue of the product
  Real m = p - std::nearbyint(p);
  return m + err;
}

}  // namespace

Real TrigPoly::drop_tolerance() { return g_drop_tol; }
void TrigPoly::set_drop_tolerance(Real tol) { g_drop_tol = tol; }

TrigPoly TrigPolyBuilder::build() && {
  // Symmetric prune: a +-k pair dies only if both members are below tolerance.
  const Real tol = TrigPoly::drop_tolerance();
  for (int k = 1; k <= deg_; ++k) {
    Complex& a = c_[size_t(deg_ + k)];
    Complex& b = c_[size_t(deg_ - k)];
    if (std::abs(a) <= tol && std::abs(b) <= tol) a = b = Complex(0);
  }
  if (std::abs(c_[size_t(deg_)]) <= tol) c_[size_t(deg_)] = Complex(0);
  int d = deg_;
  while (d > 0 && c_[size_t(deg_ + d)] == Complex(0) &&
         c_[size_t(deg_ - d)] == Complex(0))
    --d;
  TrigPoly p;
  p.deg_ = d;
  p.c_.assign(c_.begin() + (deg_ - d), c_.begin() + (deg_ + d + 1));
  return p;
}

TrigPoly TrigPoly::constant(Real v) {
  TrigPoly p;
  p.c_[0] = v;
  return p;
}

TrigPoly TrigPoly::mode_pair(int k, Complex amp) {
  TrigPolyBuilder b(std::abs(k));
  b.at(k) = amp;
  b.at(-k) += std::conj(amp);
  if (k == 0) b.at(0) = Complex(amp.real());  // reality pins the k=0 mode
  return std::move(b).build();
}

TrigPoly TrigPoly::harmonic(int k, Real c, Real s) {
  // cos = (e_k + e_-k)/2, sin = (e_k - e_-k)/(2i)
  return mode_pair(k, Complex(c / 2, -s / 2) * (k == 0 ? Real(2) : Real(1)));
}

TrigPoly TrigPoly::from_cos_sin(std::span<const CosSinMode> modes) {
  int d = 0;
  for (const auto& m : modes) d = std::max(d, std::abs(m.k));
  TrigPolyBuilder b(d);
  for (const auto& m : modes) {
    if (m.k == 0) {
      b.add(0, Complex(m.cos_amp));
    } else {
      b.add(m.k, Complex(m.cos_amp / 2, -m.sin_amp / 2));
      b.add(-m.k, Complex(m.cos_amp / 2, m.sin_amp / 2));
    }
  }
  return std::move(b).build();
}

bool TrigPoly::is_zero() const {
  return deg_ == 0 && c_[0] == Complex(0);
}

TrigPoly operator+(const TrigPoly& p, const TrigPoly& q) {
  TrigPolyBuilder b(std::max(p.deg_, q.deg_));
  for (int k = -p.deg_; k <= p.deg_; ++k) b.add(k, p.mode(k));
  for (int k = -q.deg_; k <= q.deg_; ++k) b.add(k, q.mode(k));
  return std::move(b).build();
}

TrigPoly operator-(const TrigPoly& p, const TrigPoly& q) {
  TrigPolyBuilder b(std::max(p.deg_, q.deg_));
  for (int k = -p.deg_; k <= p.deg_; ++k) b.add(k, p.mode(k));
  for (int k = -q.deg_; k <= q.deg_; ++k) b.add(k, -q.mode(k));
  return std::move(b).build();
}

TrigPoly operator*(const TrigPoly& p, const TrigPoly& q) {
  if (p.is_zero() || q.is_zero()) return TrigPoly();
  TrigPolyBuilder b(p.deg_ + q.deg_);
  for (int i = -p.deg_; i <= p.deg_; ++i) {
    const Complex pi = p.mode(i);
    if (pi == Complex(0)) continue;
    for (int j = -q.deg_; j <= q.deg_; ++j) b.add(i + j, pi * q.mode(j));
  }
  return std::move(b).build();
}

TrigPoly operator*(Real s, const TrigPoly& p) {
  TrigPolyBuilder b(p.deg_);
  for (int k = -p.deg_; k <= p.deg_; ++k) b.at(k) = s * p.mode(k);
  return std::move(b).build();
}

TrigPoly rotate(const TrigPoly& p, const Frequency& freq, long s) {
  if (s == 0) return p;
  TrigPolyBuilder b(p.degree());
  for (int k = -p.degree(); k <= p.degree(); ++k)
    b.at(k) = p.mode(k) * freq.unit_mode(long(k) * s);
  return std::move(b).build();
}

TrigPoly derivative(const TrigPoly& p) {
  TrigPolyBuilder b(p.degree());
  for (int k = -p.degree(); k <= p.degree(); ++k)
    b.at(k) = p.mode(k) * Complex(0, kTwoPi * k);
  return std::move(b).build();
}

Real eval(const TrigPoly& p, Real theta) {
  Complex acc(0);
  Real scale = 0;
  for (int k = -p.degree(); k <= p.degree(); ++k) {
    const Complex c = p.mode(k);
    if (c == Complex(0)) continue;
    const Real a = kTwoPi * reduced_angle(k, theta);
    acc += c * Complex(std::cos(a), std::sin(a));
    scale += std::abs(c);
  }
  const Real imag_tol = Real(1e-8) * std::max(Real(1), scale);
  if (std::abs(acc.imag()) > imag_tol)
    throw NumericalError("reality",
                         "evaluation left an imaginary residue of " +
                             std::to_string(double(acc.imag())));
  return acc.real();
}

Real norm_rho(const TrigPoly& p, Real rho) {
  if (rho < 0) throw ValidationError("norm_rho requires rho >= 0");
  Real sum = 0;
  for (int k = -p.degree(); k <= p.degree(); ++k) {
    const Complex c = p.mode(k);
    if (c == Complex(0)) continue;
    sum += std::abs(c) * std::exp(kTwoPi * std::abs(Real(k)) * rho);
  }
  return sum;
}

Real mean(const TrigPoly& p) { return p.mode(0).real(); }

TrigPoly remove_mean(const TrigPoly& p) {
  TrigPolyBuilder b(p.degree());
  for (int k = -p.degree(); k <= p.degree(); ++k) b.at(k) = p.mode(k);
  b.at(0) = Complex(0);
  return std::move(b).build();
}

Real Frequency::golden_mean() {
  return (std::sqrt(Real(5)) - 1) / 2;
}

Frequency::Frequency(Real omega, Real nu, Real tau, int k_max)
    : omega_(omega), nu_(nu), tau_(tau), k_max_(k_max) {
  if (!(omega > 0 && omega < 1))
    throw ValidationError("rotation number must lie in (0, 1)");
  if (!(nu > 0) || !(tau > 0) || k_max < 1)
    throw ValidationError("Diophantine data requires nu > 0, tau > 0, k_max >= 1");
  cache_.resize(size_t(k_max));
  for (int k = 1; k <= k_max; ++k) {
    const Real a = kTwoPi * reduced_angle(k, omega);
    const Complex e(std::cos(a), std::sin(a));
    cache_[size_t(k - 1)] = e;
    const Real div = std::abs(e - Real(1));
    if (div == 0)
      throw ValidationError("rotation number is resonant: e^{2 pi i k omega} = 1 at k = " +
                            std::to_string(k));
    if (div < nu * std::pow(Real(k), -tau))
      throw ValidationError(
          "Diophantine bound nu |k|^-tau violated at k = " + std::to_string(k) +
          " (divisor " + std::to_string(double(div)) + ")");
  }
}

Complex Frequency::unit_mode(long k) const {
  if (k == 0) return Complex(1);
  const long a = std::labs(k);
  Complex e;
  if (a <= k_max_) {
    e = cache_[size_t(a - 1)];
  } else {
    const Real t = kTwoPi * reduced_angle(a, omega_);
    e = Complex(std::cos(t), std::sin(t));
  }
  return k > 0 ? e : std::conj(e);
}

}  // namespace dsm
