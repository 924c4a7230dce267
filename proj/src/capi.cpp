#include "dsm/dsm.h"

#include <cmath>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "coeff_io.hpp"
#include "diagnostics.hpp"
#include "newton.hpp"

using namespace dsm;

struct dsm_map {
  MapSpec spec;
  std::string omega_token = "literal";
};

struct dsm_state {
  MapSpec spec;
  HullExpansion hull;
  std::string omega_token = "literal";
};

namespace {

thread_local std::string g_last_error;

dsm_status set_error(dsm_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename F>
dsm_status guarded(F&& f) {
  try {
    f();
    return DSM_OK;
  } catch (const ValidationError& e) {
    return set_error(DSM_ERR_INVALID, e.what());
  } catch (const NumericalError& e) {
    return set_error(DSM_ERR_NUMERICAL, e.what());
  } catch (const std::exception& e) {
    return set_error(DSM_ERR_IO, e.what());
  }
}

CoefficientSet to_set(const dsm_state& s) {
  CoefficientSet set;
  set.omega = s.spec.freq.omega();
  set.omega_token = s.omega_token;
  set.tau = s.spec.freq.tau();
  set.nu = s.spec.freq.nu();
  set.k_max = s.spec.freq.k_max();
  set.alpha = s.spec.alpha;
  set.potential = s.spec.g;
#ifdef DSM_EXTENDED_REAL
  set.precision = "long-double";
#else
  set.precision = "double";
#endif
  set.hull = s.hull;
  return set;
}

}  // namespace

extern "C" {

const char* dsm_last_error(void) { return g_last_error.c_str(); }

dsm_status dsm_map_create(double omega, double tau, double nu, int k_max,
                          int alpha, const double* modes, int n_modes,
                          const char* omega_token, dsm_map** out) {
  return guarded([&] {
    if (!out) throw ValidationError("null output handle");
    std::vector<TrigPoly::CosSinMode> ms;
    for (int i = 0; i < n_modes; ++i)
      ms.push_back(TrigPoly::CosSinMode{int(modes[3 * i]), Real(modes[3 * i + 1]),
                                        Real(modes[3 * i + 2])});
    const Real nu_eff =
        nu > 0 ? Real(nu) : estimate_diophantine(Real(omega), Real(tau), k_max);
    MapSpec spec(TrigPoly::from_cos_sin(ms), alpha,
                 Frequency(Real(omega), nu_eff, Real(tau), k_max));
    *out = new dsm_map{std::move(spec),
                       omega_token ? omega_token : "literal"};
  });
}

void dsm_map_destroy(dsm_map* map) { delete map; }

double dsm_map_nu(const dsm_map* map) { return double(map->spec.freq.nu()); }
double dsm_map_omega(const dsm_map* map) {
  return double(map->spec.freq.omega());
}

double dsm_map_gamma(const dsm_map* map, int n) {
  return double(gamma_n(map->spec, n));
}

void dsm_map_apply(const dsm_map* map, double x, double y, double eps,
                   double mu, double* fx, double* fy) {
  Real ox, oy;
  map->spec.apply<Real>(Real(x), Real(y), Real(eps), Real(mu), ox, oy);
  *fx = double(ox);
  *fy = double(oy);
}

void dsm_map_jacobian(const dsm_map* map, double x, double y, double eps,
                      double jac[4]) {
  const auto j = map->spec.jacobian(Real(x), Real(y), Real(eps));
  for (int i = 0; i < 4; ++i) jac[i] = double(j[size_t(i)]);
}

double dsm_estimate_diophantine(double omega, double tau, int k_max) {
  try {
    return double(estimate_diophantine(Real(omega), Real(tau), k_max));
  } catch (const std::exception& e) {
    set_error(DSM_ERR_INVALID, e.what());
    return -1;
  }
}

dsm_status dsm_expand(const dsm_map* map, int order, dsm_state** out) {
  return guarded([&] {
    if (!map || !out) throw ValidationError("null handle");
    *out = new dsm_state{map->spec, direct_expansion(map->spec, order),
                         map->omega_token};
  });
}

dsm_status dsm_newton(const dsm_map* map, int n0, int h, double rho0,
                      dsm_state** out, dsm_step_record* records) {
  return guarded([&] {
    if (!map || !out) throw ValidationError("null handle");
    std::vector<StepReport> reps;
    NewtonState st = run_doubling(map->spec, n0, h, &reps, Real(rho0));
    if (records) {
      for (int i = 0; i < h && i < int(reps.size()); ++i) {
        const StepReport& r = reps[size_t(i)];
        records[i] = dsm_step_record{r.h,
                                     r.order_before,
                                     r.order_after,
                                     double(r.rho),
                                     double(r.gamma),
                                     double(r.defect_rel),
                                     r.defect_lead,
                                     double(r.block_det0)};
      }
    }
    *out = new dsm_state{map->spec, embedding_to_hull(st.K, st.mu),
                         map->omega_token};
  });
}

void dsm_state_destroy(dsm_state* state) { delete state; }

int dsm_state_order(const dsm_state* state) { return state->hull.order(); }

double dsm_state_mu(const dsm_state* state, int n) {
  if (n < 0 || n > state->hull.order()) return 0;
  return double(state->hull.mu.coeff(n));
}

int dsm_state_degree(const dsm_state* state, int n) {
  if (n < 0 || n > state->hull.order()) return -1;
  const TrigPoly& p = state->hull.u.coeff(n);
  return p.is_zero() ? 0 : p.degree();
}

dsm_status dsm_state_mode(const dsm_state* state, int n, int k, double* re,
                          double* im) {
  return guarded([&] {
    if (!state || n < 0 || n > state->hull.order())
      throw ValidationError("order index out of range");
    const Complex c = state->hull.u.coeff(n).mode(k);
    if (re) *re = double(c.real());
    if (im) *im = double(c.imag());
  });
}

dsm_status dsm_state_norms(const dsm_state* state, double rho, double* out,
                           int len) {
  return guarded([&] {
    if (!state || !out) throw ValidationError("null handle");
    const Embedding K = hull_to_embedding(state->hull, state->spec);
    const auto norms = coefficient_norms(K, Real(rho));
    for (int n = 0; n < len && n < int(norms.size()); ++n)
      out[n] = double(norms[size_t(n)]);
  });
}

dsm_status dsm_state_write(const dsm_state* state, const char* path) {
  return guarded([&] {
    if (!state || !path) throw ValidationError("null handle");
    write_coefficients_file(path, to_set(*state));
  });
}

dsm_status dsm_state_read(const char* path, dsm_state** out) {
  return guarded([&] {
    if (!path || !out) throw ValidationError("null handle");
    CoefficientSet set = read_coefficients_file(path);
    MapSpec spec = map_from_set(set);
    *out = new dsm_state{std::move(spec), std::move(set.hull), set.omega_token};
  });
}

dsm_status dsm_state_compare(const dsm_state* a, const dsm_state* b,
                             double* per_order, int len) {
  return guarded([&] {
    if (!a || !b) throw ValidationError("null handle");
    if (!headers_compatible(to_set(*a), to_set(*b)))
      throw ValidationError("coefficient sets describe different problems");
    const int n_shared = std::min(a->hull.order(), b->hull.order());
    for (int n = 0; n <= n_shared && n < len; ++n) {
      const TrigPoly& ua = a->hull.u.coeff(n);
      const TrigPoly& ub = b->hull.u.coeff(n);
      const Real diff = norm_rho(ua - ub, 0);
      const Real mu_diff =
          std::abs(a->hull.mu.coeff(n) - b->hull.mu.coeff(n));
      const Real scale =
          std::max({norm_rho(ua, 0), norm_rho(ub, 0),
                    std::abs(a->hull.mu.coeff(n)),
                    std::abs(b->hull.mu.coeff(n))});
      per_order[n] =
          scale == 0 ? double(std::max(diff, mu_diff))
                     : double(std::max(diff, mu_diff) / scale);
    }
  });
}

dsm_status dsm_fit_gevrey(const double* norms, int count, int n_min, int n_max,
                          double bound, dsm_gevrey_fit* out) {
  return guarded([&] {
    if (!norms || !out) throw ValidationError("null handle");
    std::vector<Real> v(norms, norms + count);
    const GevreyFit fit = fit_gevrey(v, n_min, n_max, Real(bound));
    *out = dsm_gevrey_fit{double(fit.sigma),   double(fit.log_rate),
                          double(fit.log_offset), double(fit.residual),
                          fit.n_min,           fit.n_max,
                          double(fit.bound)};
  });
}

dsm_status dsm_residual_scan(const dsm_state* state, const double* eps,
                             int n_eps, int n_theta,
                             dsm_residual_point* points, double* slope,
                             double* offset, int* used) {
  return guarded([&] {
    if (!state || !eps || n_eps < 1 || n_theta < 1)
      throw ValidationError("bad residual scan arguments");
    std::vector<Real> es(eps, eps + n_eps);
    std::vector<Real> ths(size_t(n_theta));
    for (int i = 0; i < n_theta; ++i) ths[size_t(i)] = Real(i) / Real(n_theta);
    const Embedding K = hull_to_embedding(state->hull, state->spec);
    const ResidualScan scan =
        residual_scan(state->spec, K, state->hull.mu, es, ths);
    if (points)
      for (int i = 0; i < n_eps; ++i) {
        const ResidualSample& s = scan.samples[size_t(i)];
        points[i] = dsm_residual_point{double(s.eps), double(s.residual),
                                       double(s.floor), s.usable ? 1 : 0};
      }
    if (slope) *slope = double(scan.slope);
    if (offset) *offset = double(scan.offset);
    if (used) *used = scan.used;
  });
}

}  // extern "C"
