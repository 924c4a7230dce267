#pragma once

#include <span>
#include <vector>

#include "types.hpp"

namespace dsm {

// Real-valued trigonometric polynomial on the circle (period 1), stored as
// exponential-basis amplitudes c[k] for k in [-degree, degree] with the
// reality symmetry c[-k] = conj(c[k]).
class TrigPoly {
 public:
  TrigPoly() : deg_(0), c_(1) {}  // zero polynomial

  static TrigPoly constant(Real v);
  // c * cos(2 pi k theta) + s * sin(2 pi k theta)
  static TrigPoly harmonic(int k, Real c, Real s);
  // Sum of harmonics given as (k, cos amplitude, sin amplitude) triples.
  struct CosSinMode {
    int k;
    Real cos_amp;
    Real sin_amp;
  };
  static TrigPoly from_cos_sin(std::span<const CosSinMode> modes);
  // Exponential-mode pair: sets c[k] = amp and c[-k] = conj(amp).
  static TrigPoly mode_pair(int k, Complex amp);

  int degree() const { return deg_; }
  bool is_zero() const;
  Complex mode(int k) const {
    return (k < -deg_ || k > deg_) ? Complex(0) : c_[size_t(k + deg_)];
  }

  // Amplitude pairs below this threshold are dropped (symmetrically in +-k).
  // The default only removes exact zeros.
  static Real drop_tolerance();
  static void set_drop_tolerance(Real tol);

  friend TrigPoly operator+(const TrigPoly& p, const TrigPoly& q);
  friend TrigPoly operator-(const TrigPoly& p, const TrigPoly& q);
  friend TrigPoly operator*(const TrigPoly& p, const TrigPoly& q);
  friend TrigPoly operator*(Real s, const TrigPoly& p);

  // Raw coefficient access for the solvers; index k + degree().
  std::span<const Complex> coeffs() const { return c_; }

 private:
  friend class TrigPolyBuilder;
  int deg_;
  std::vector<Complex> c_;
};

// Mutable staging area for solver/arithmetic results. Finish with build(),
// which prunes and restores the exact stored degree.
class TrigPolyBuilder {
 public:
  explicit TrigPolyBuilder(int deg) : deg_(deg), c_(2 * size_t(deg) + 1) {}
  Complex& at(int k) { return c_[size_t(k + deg_)]; }
  void add(int k, Complex v) { c_[size_t(k + deg_)] += v; }
  int degree() const { return deg_; }
  TrigPoly build() &&;

 private:
  int deg_;
  std::vector<Complex> c_;
};

class Frequency;

TrigPoly rotate(const TrigPoly& p, const Frequency& freq, long s);
TrigPoly derivative(const TrigPoly& p);
Real eval(const TrigPoly& p, Real theta);
// Fourier majorant sum_k |c_k| e^{2 pi |k| rho}; an upper bound for the
// sup norm on the strip of width rho.
Real norm_rho(const TrigPoly& p, Real rho);
Real mean(const TrigPoly& p);
TrigPoly remove_mean(const TrigPoly& p);

// Rotation number omega with Diophantine data (nu, tau) and cached unit
// modes e^{2 pi i k omega} for |k| <= k_max. Construction verifies
// |e^{2 pi i k omega} - 1| >= nu |k|^-tau on the whole cache.
class Frequency {
 public:
  Frequency(Real omega, Real nu, Real tau, int k_max);

  static Real golden_mean();

  Real omega() const { return omega_; }
  Real nu() const { return nu_; }
  Real tau() const { return tau_; }
  int k_max() const { return k_max_; }

  // e^{2 pi i k omega}, any integer k (cached for |k| <= k_max).
  Complex unit_mode(long k) const;
  // 1 - e^{2 pi i k omega}
  Complex standard_divisor(long k) const { return Real(1) - unit_mode(k); }
  // 2 (cos(2 pi k omega) - 1)
  Real second_divisor(long k) const { return 2 * (unit_mode(k).real() - 1); }

 private:
  Real omega_, nu_, tau_;
  int k_max_;
  std::vector<Complex> cache_;  // unit modes for k = 1..k_max
};

}  // namespace dsm
