#pragma once

#include <optional>
#include <vector>

#include "lindstedt.hpp"

namespace dsm {

// 2-vectors and 2x2 matrices of eps-series (d = 1, phase space dimension 2).
struct SeriesVec2 {
  EpsSeries a, b;
};
struct SeriesMat2 {
  EpsSeries m11, m12, m21, m22;
};

SeriesVec2 mat_vec(const SeriesMat2& m, const SeriesVec2& v, int order);
SeriesMat2 mat_rotate(const SeriesMat2& m, const Frequency& freq, long s);
// Inverse by adjugate over the series reciprocal of the determinant; the
// determinant's leading coefficient must be a nonzero constant.
SeriesMat2 mat_inverse(const SeriesMat2& m, int order);

// Iteration schedule bookkeeping: at step h the order is N_h = 2^h N_0, the
// strip radius is rho_{h+1} = rho_h - rho_0 / 2^{h+2}, and the eps-ball
// radius is gamma_h = (nu/2)^{1/alpha} (a N_h)^{-tau/alpha}.
struct Schedule {
  int h = 0;
  Real rho0 = Real(0.05);
  Real rho = Real(0.05);
  Real gamma = 0;
};

struct NewtonState {
  int order;  // N
  Embedding K;
  ScalarSeries mu;
  MapSpec map;
  Schedule sched;
};

NewtonState seed_state(const MapSpec& map, int N0, Real rho0);

// f o K - K o T_omega assembled to order 2N; the lead >= N+1 invariant is
// checked against the windowed coefficient scale.
std::pair<EpsSeries, EpsSeries> invariance_error(const NewtonState& state);

// The adapted frame of the approximate torus and the derived Newton-step
// data, all series of order 2N:
//   M     = [DK | J^{-1} DK Ncal],    Ncal = (DK^T DK)^{-1},
//   beta  = (M o T_omega)^{-1},
//   S     = (P o T_w)^T Df o K J^{-1} P - lambda (Ncal o T_w) Gamma o T_w (Ncal o T_w),
//   A     = beta D_mu f o K.
struct ReducibilityPack {
  SeriesMat2 M;
  SeriesMat2 beta;
  EpsSeries S;
  EpsSeries A1, A2;
  EpsSeries Ncal;
};

ReducibilityPack build_reducibility(const NewtonState& state);

struct StepReport {
  int h = 0;
  int order_before = 0;
  int order_after = 0;
  Real rho = 0;
  Real gamma = 0;
  // Largest post-step defect coefficient through order 2N, relative to the
  // pre-step windowed defect scale.
  Real defect_rel = 0;
  int defect_lead = 0;
  // |det| of the averaged block system at eps order 0 (HND conditioning).
  Real block_det0 = 0;
};

// One coefficient-doubling step: orders 0..N are preserved bitwise, orders
// N+1..2N are filled, and the new defect must vanish through order 2N.
NewtonState newton_step(const NewtonState& state, StepReport* report = nullptr);

// Seed from the direct expansion at order N0, then apply h doubling steps.
NewtonState run_doubling(const MapSpec& map, int N0, int h,
                         std::vector<StepReport>* reports = nullptr,
                         Real rho0 = Real(0.05));

}  // namespace dsm
