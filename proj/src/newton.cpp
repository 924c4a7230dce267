#include "newton.hpp"

#include <cmath>

namespace dsm {

namespace {

Real series_scale_norm(const EpsSeries& x) {
  Real s = 0;
  for (int n = 0; n <= x.order(); ++n)
    s = std::max(s, norm_rho(x.coeff(n), 0));
  return s;
}

void check_lead(const EpsSeries& e1, const EpsSeries& e2, int min_lead,
                Real scale, Real tol, const char* invariant) {
  for (int n = 0; n < min_lead && n <= e1.order(); ++n) {
    const Real c = std::max(norm_rho(e1.coeff(n), 0), norm_rho(e2.coeff(n), 0));
    if (c > tol * scale)
      throw NumericalError(invariant,
                           "coefficient " + std::to_string(n) + " has majorant " +
                               std::to_string(double(c)) + " against scale " +
                               std::to_string(double(scale)));
  }
}

// Per-order standard cohomology solve of a zero-mean series.
EpsSeries solve_standard_series(const EpsSeries& eta, const Frequency& freq) {
  EpsSeries phi(eta.order());
  for (int n = 0; n <= eta.order(); ++n)
    phi.coeff(n) = solve_standard(eta.coeff(n), freq);
  return phi;
}

SeriesMat2 mat_mul(const SeriesMat2& x, const SeriesMat2& y, int order) {
  return {series_add(series_mul(x.m11, y.m11, order), series_mul(x.m12, y.m21, order)),
          series_add(series_mul(x.m11, y.m12, order), series_mul(x.m12, y.m22, order)),
          series_add(series_mul(x.m21, y.m11, order), series_mul(x.m22, y.m21, order)),
          series_add(series_mul(x.m21, y.m12, order), series_mul(x.m22, y.m22, order))};
}

}  // namespace

SeriesVec2 mat_vec(const SeriesMat2& m, const SeriesVec2& v, int order) {
  return {series_add(series_mul(m.m11, v.a, order), series_mul(m.m12, v.b, order)),
          series_add(series_mul(m.m21, v.a, order), series_mul(m.m22, v.b, order))};
}

SeriesMat2 mat_rotate(const SeriesMat2& m, const Frequency& freq, long s) {
  return {series_rotate(m.m11, freq, s), series_rotate(m.m12, freq, s),
          series_rotate(m.m21, freq, s), series_rotate(m.m22, freq, s)};
}

SeriesMat2 mat_inverse(const SeriesMat2& m, int order) {
  const EpsSeries det = series_sub(series_mul(m.m11, m.m22, order),
                                   series_mul(m.m12, m.m21, order));
  const EpsSeries idet = series_reciprocal(det, order);
  return {series_mul(m.m22, idet, order),
          series_mul(series_scale(-1, m.m12), idet, order),
          series_mul(series_scale(-1, m.m21), idet, order),
          series_mul(m.m11, idet, order)};
}

NewtonState seed_state(const MapSpec& map, int N0, Real rho0) {
  if (N0 < 1) throw ValidationError("seed order N0 must be >= 1");
  HullExpansion hull = direct_expansion(map, N0);
  Schedule sched;
  sched.h = 0;
  sched.rho0 = sched.rho = rho0;
  sched.gamma = gamma_radius(map.freq, map.alpha, std::max(1, map.a()) * N0);
  return NewtonState{N0, hull_to_embedding(hull, map), hull.mu, map, sched};
}

std::pair<EpsSeries, EpsSeries> invariance_error(const NewtonState& state) {
  const int N = state.order;
  auto [e1, e2] =
      assemble_invariance_defect(state.map, state.K, state.mu, 2 * N);
  const Real scale =
      std::max({Real(1), series_scale_norm(e1), series_scale_norm(e2)});
  check_lead(e1, e2, N + 1, scale, Real(1e-10), "defect-order");
  return {std::move(e1), std::move(e2)};
}

ReducibilityPack build_reducibility(const NewtonState& state) {
  const int N = state.order;
  const int o = 2 * N;
  const MapSpec& map = state.map;
  const Frequency& freq = map.freq;

  const EpsSeries ux = series_pad(state.K.x_off, o);
  const EpsSeries ky = series_pad(state.K.y, o);

  EpsSeries dk1 = series_derivative(ux);
  dk1.coeff(0) = dk1.coeff(0) + TrigPoly::constant(1);
  const EpsSeries dk2 = series_derivative(ky);

  const EpsSeries ncal = series_reciprocal(
      series_add(series_mul(dk1, dk1, o), series_mul(dk2, dk2, o)), o);
  if (mean(ncal.coeff(0)) == 0)
    throw NumericalError("frame-invertibility",
                         "leading frame normalisation vanished");

  // J = [[0,1],[-1,0]]: J^{-1} (a,b) = (-b, a).
  const EpsSeries v1 = series_scale(-1, series_mul(dk2, ncal, o));
  const EpsSeries v2 = series_mul(dk1, ncal, o);
  SeriesMat2 M{dk1, v1, dk2, v2};
  SeriesMat2 beta = mat_inverse(mat_rotate(M, freq, 1), o);

  // Df o K = [[1 - eps g'(K_x), lambda], [-eps g'(K_x), lambda]].
  const EpsSeries eps_gp =
      series_shift_up(compose_perturbation(ux, derivative(map.g), o), o);
  const EpsSeries lam = series_promote(map.lambda_series(o));
  EpsSeries f11 = series_scale(-1, eps_gp);
  f11.coeff(0) = f11.coeff(0) + TrigPoly::constant(1);
  const SeriesMat2 df{f11, lam, series_scale(-1, eps_gp), lam};

  // S = (P o T_w)^T Df J^{-1} P - lambda (Ncal o T_w) Gamma o T_w (Ncal o T_w)
  // with P = DK Ncal and Gamma = DK^T J^{-1} DK.
  const EpsSeries p1 = series_mul(dk1, ncal, o);
  const EpsSeries p2 = series_mul(dk2, ncal, o);
  const SeriesVec2 jp{series_scale(-1, p2), p1};
  const SeriesVec2 djp = mat_vec(df, jp, o);
  EpsSeries S = series_add(series_mul(series_rotate(p1, freq, 1), djp.a, o),
                           series_mul(series_rotate(p2, freq, 1), djp.b, o));
  const EpsSeries gamma_form =
      series_add(series_mul(dk1, series_scale(-1, dk2), o),
                 series_mul(dk2, dk1, o));  // identically zero for d = 1
  const EpsSeries ncal_w = series_rotate(ncal, freq, 1);
  S = series_sub(S, series_mul(series_mul(series_mul(ncal_w, series_rotate(gamma_form, freq, 1), o),
                                          ncal_w, o),
                               lam, o));

  // A = beta D_mu f o K with D_mu f = (1, 1)^T.
  EpsSeries a1 = series_add(beta.m11, beta.m12);
  EpsSeries a2 = series_add(beta.m21, beta.m22);

  // Approximate reducibility holds up to a defect of the order of the
  // invariance error: Df o K M - (M o T_w) [[1, S],[0, lambda]] ~ O(eps^{N+1}).
  EpsSeries one(o);
  one.coeff(0) = TrigPoly::constant(1);
  const SeriesMat2 upper{one, S, EpsSeries(o), lam};
  const SeriesMat2 lhs = mat_mul(df, M, o);
  const SeriesMat2 rhs = mat_mul(mat_rotate(M, freq, 1), upper, o);
  const SeriesMat2 r_def{series_sub(lhs.m11, rhs.m11), series_sub(lhs.m12, rhs.m12),
                         series_sub(lhs.m21, rhs.m21), series_sub(lhs.m22, rhs.m22)};
  Real r_scale = Real(1);
  for (const EpsSeries* e : {&r_def.m11, &r_def.m12, &r_def.m21, &r_def.m22})
    r_scale = std::max(r_scale, series_scale_norm(*e));
  check_lead(r_def.m11, r_def.m21, N + 1, r_scale, Real(1e-10),
             "reducibility-defect");
  check_lead(r_def.m12, r_def.m22, N + 1, r_scale, Real(1e-10),
             "reducibility-defect");

  return ReducibilityPack{std::move(M), std::move(beta), std::move(S),
                          std::move(a1), std::move(a2), std::move(ncal)};
}

NewtonState newton_step(const NewtonState& state, StepReport* report) {
  const int N = state.order;
  const int o = 2 * N;
  const MapSpec& map = state.map;
  const Frequency& freq = map.freq;

  auto [e1, e2] = invariance_error(state);
  const EpsSeries e1w = window(e1, N, o);
  const EpsSeries e2w = window(e2, N, o);
  Real e_scale = Real(0);
  for (int n = N + 1; n <= o; ++n)
    e_scale = std::max({e_scale, norm_rho(e1w.coeff(n), 0),
                        norm_rho(e2w.coeff(n), 0)});

  ReducibilityPack pack = build_reducibility(state);

  const SeriesVec2 etil = mat_vec(pack.beta, SeriesVec2{e1w, e2w}, o);

  // Right-hand sides for the parametric solves (zero-mean parts).
  const EpsSeries ba = solve_parametric_formal(
      series_scale(-1, series_remove_mean(etil.b)), map.alpha, freq);
  const EpsSeries bb = solve_parametric_formal(
      series_scale(-1, series_remove_mean(pack.A2)), map.alpha, freq);

  // Averaged 2x2 block for (W2bar, sigma). Averaging the second component of
  // the linear system gives (lambda - 1) W2bar = -mean(Etil_2) - mean(A_2) s,
  // i.e. a bottom-left block entry of -eps^alpha.
  const ScalarSeries s_bar = series_mean(pack.S);
  const ScalarSeries sba = series_mean(series_mul(pack.S, ba, o));
  const ScalarSeries sbb = series_mean(series_mul(pack.S, bb, o));
  const ScalarSeries a1_bar = series_mean(pack.A1);
  const ScalarSeries a2_bar = series_mean(pack.A2);
  const ScalarSeries e1_bar = series_mean(etil.a);
  const ScalarSeries e2_bar = series_mean(etil.b);

  ScalarSeries eps_alpha(o);
  if (map.alpha <= o) eps_alpha.coeff(map.alpha) = -1;

  const ScalarSeries m11 = s_bar;
  const ScalarSeries m12 = ss_add(sbb, a1_bar);
  const ScalarSeries& m21 = eps_alpha;
  const ScalarSeries& m22 = a2_bar;
  const ScalarSeries r1 = ss_scale(-1, ss_add(sba, e1_bar));
  const ScalarSeries r2 = ss_scale(-1, e2_bar);

  const ScalarSeries det =
      ss_sub(ss_mul(m11, m22, o), ss_mul(m12, m21, o));
  if (det.coeff(0) == 0)
    throw NumericalError("hnd-degeneracy",
                         "averaged block system is singular at eps = 0");
  const ScalarSeries idet = ss_reciprocal(det, o);
  const ScalarSeries w2_bar =
      ss_mul(ss_sub(ss_mul(m22, r1, o), ss_mul(m12, r2, o)), idet, o);
  const ScalarSeries sigma =
      ss_mul(ss_sub(ss_mul(m11, r2, o), ss_mul(m21, r1, o)), idet, o);

  // W2 = ring part + average.
  EpsSeries w2 = series_add(ba, series_mul(bb, sigma, o));
  w2 = series_add(w2, series_promote(series_pad(w2_bar, o)));

  // Ring part of W1 from the standard cohomology equation.
  EpsSeries rhs1 = series_scale(
      -1, series_add(series_add(series_mul(pack.S, w2, o), etil.a),
                     series_mul(pack.A1, sigma, o)));
  rhs1 = series_remove_mean(rhs1);
  const EpsSeries w1_ring = solve_standard_series(rhs1, freq);

  // Average of W1 from the normalization condition. M0 is the order-0 frame
  // (the identity for a graph over the flat circle); the condition needs the
  // theta-average of the first row of M0^{-1} (DK W1ring + V W2, ...).
  const TrigPoly m0_12 = pack.M.m12.coeff(0);
  const TrigPoly m0_21 = pack.M.m21.coeff(0);
  const TrigPoly m0_22 = pack.M.m22.coeff(0);
  const TrigPoly m0_det =
      pack.M.m11.coeff(0) * m0_22 - m0_12 * m0_21;
  if (norm_rho(remove_mean(m0_det), 0) > Real(1e-12) * std::abs(mean(m0_det)) ||
      mean(m0_det) == 0)
    throw NumericalError("frame-invertibility",
                         "order-0 frame determinant is not a nonzero constant");
  const Real det0 = mean(m0_det);
  const EpsSeries dk1 = pack.M.m11;  // first column of M is DK
  const EpsSeries dk2 = pack.M.m21;
  const EpsSeries v1 = pack.M.m12;
  const EpsSeries v2 = pack.M.m22;
  // First row of M0^{-1} (x1, x2)^T is (m0_22 x1 - m0_12 x2) / det0.
  const auto first_row_mean = [&](const EpsSeries& x1,
                                  const EpsSeries& x2) -> ScalarSeries {
    const EpsSeries r =
        series_sub(series_mul_poly(m0_22, x1), series_mul_poly(m0_12, x2));
    return ss_scale(1 / det0, series_mean(r));
  };
  const ScalarSeries denom = first_row_mean(dk1, dk2);
  const ScalarSeries numer =
      first_row_mean(series_add(series_mul(dk1, w1_ring, o),
                                series_mul(v1, w2, o)),
                     series_add(series_mul(dk2, w1_ring, o),
                                series_mul(v2, w2, o)));
  const ScalarSeries w1_bar =
      ss_scale(-1, ss_mul(numer, ss_reciprocal(denom, o), o));

  const EpsSeries w1 =
      series_add(w1_ring, series_promote(series_pad(w1_bar, o)));

  // Delta = M W, windowed to (N, 2N] like sigma.
  const SeriesVec2 delta = mat_vec(pack.M, SeriesVec2{w1, w2}, o);
  const EpsSeries d1 = window(delta.a, N, o);
  const EpsSeries d2 = window(delta.b, N, o);
  const ScalarSeries sigma_w = ss_window(series_pad(sigma, o), N, o);

  NewtonState next{o,
                   Embedding{series_add(series_pad(state.K.x_off, o), d1),
                             series_add(series_pad(state.K.y, o), d2)},
                   ss_add(series_pad(state.mu, o), sigma_w),
                   map,
                   state.sched};
  next.sched.h = state.sched.h + 1;
  next.sched.rho =
      state.sched.rho - state.sched.rho0 / std::pow(Real(2), state.sched.h + 2);
  next.sched.gamma = gamma_radius(freq, map.alpha, std::max(1, map.a()) * o);

  // Quadratic defect doubling: the new defect vanishes through order 2N.
  auto [n1, n2] = assemble_invariance_defect(map, next.K, next.mu, o);
  Real defect = 0;
  for (int n = 0; n <= o; ++n)
    defect = std::max({defect, norm_rho(n1.coeff(n), 0),
                       norm_rho(n2.coeff(n), 0)});
  const Real rel = defect / std::max(e_scale, Real(1e-300));
  if (rel > Real(1e-10))
    throw NumericalError("defect-doubling",
                         "post-step defect through order 2N is " +
                             std::to_string(double(rel)) +
                             " relative to the corrected window");
  if (report) {
    report->h = next.sched.h;
    report->order_before = N;
    report->order_after = o;
    report->rho = next.sched.rho;
    report->gamma = next.sched.gamma;
    report->defect_rel = rel;
    report->defect_lead = o + 1;
    report->block_det0 = std::abs(det.coeff(0));
  }
  return next;
}

NewtonState run_doubling(const MapSpec& map, int N0, int h,
                         std::vector<StepReport>* reports, Real rho0) {
  if (h < 0) throw ValidationError("step count h must be >= 0");
  NewtonState state = seed_state(map, N0, rho0);
  for (int i = 0; i < h; ++i) {
    StepReport rep;
    state = newton_step(state, &rep);
    if (reports) reports->push_back(rep);
  }
  return state;
}

}  // namespace dsm
