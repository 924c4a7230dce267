#pragma once

#include <span>
#include <vector>

#include "newton.hpp"

namespace dsm {

// Per-order majorant norms of the embedding coefficients K_n, combined as
// the Euclidean norm of the two component majorants.
std::vector<Real> coefficient_norms(const Embedding& K, Real rho);
std::vector<Real> coefficient_norms(const EpsSeries& x, Real rho);

// Least-squares fit of log|K_n| = logC + n logR + sigma n log n over the
// window [n_min, n_max].
struct GevreyFit {
  Real sigma = 0;
  Real log_rate = 0;    // logR
  Real log_offset = 0;  // logC
  Real residual = 0;    // rms misfit over the window
  int n_min = 0;
  int n_max = 0;
  Real bound = 0;  // the proven exponent bound 2 tau / alpha
};

GevreyFit fit_gevrey(std::span<const Real> norms, int n_min, int n_max,
                     Real bound);

// nu = min over 1 <= |k| <= k_max of |e^{2 pi i k omega} - 1| |k|^tau; an
// upper estimate of the true Diophantine constant on the cached range.
Real estimate_diophantine(Real omega, Real tau, int k_max);

// gamma_N = (nu/2)^{1/alpha} (a N)^{-tau/alpha} for this map.
Real gamma_n(const MapSpec& map, int N);

// sup over 0 < |k| <= k_max of |e^{2 pi i k omega} - lambda|^{-1} |k|^{-tau}.
Real tilde_nu(Complex lambda, const Frequency& freq, int k_max);

// Membership in the solvability set: tilde_nu(lambda(eps)) |lambda(eps)-1|^{N+1} <= A.
bool in_set_g(Complex eps, Real A, int N, const MapSpec& map, int k_max);

// Numeric invariance residual of the truncated series, evaluated through the
// map itself (extended precision internally so the evaluation floor sits
// below the coefficient precision; floored samples are excluded from the
// slope fit and reported).
struct ResidualSample {
  Real eps = 0;
  Real residual = 0;
  Real floor = 0;
  bool usable = false;
};

struct ResidualScan {
  std::vector<ResidualSample> samples;
  Real slope = 0;
  Real offset = 0;
  int used = 0;
};

ResidualScan residual_scan(const MapSpec& map, const Embedding& K,
                           const ScalarSeries& mu,
                           std::span<const Real> eps_samples,
                           std::span<const Real> theta_samples);

}  // namespace dsm
