/* Public C interface to the dissipative standard map torus-expansion core.
 *
 * All entry points return dsm_status; outputs are written through pointers.
 * Objects are opaque handles released with the matching _destroy call.
 * dsm_last_error() describes the most recent failure on this thread.
 */
#ifndef DSM_DSM_H
#define DSM_DSM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsm_status {
  DSM_OK = 0,
  DSM_ERR_INVALID = 1,   /* rejected configuration or precondition */
  DSM_ERR_NUMERICAL = 2, /* a named runtime invariant failed */
  DSM_ERR_IO = 3
} dsm_status;

typedef struct dsm_map dsm_map;
typedef struct dsm_state dsm_state;

/* Message for the most recent error on the calling thread. */
const char* dsm_last_error(void);

/* Perturbation modes are (k, cos amplitude, sin amplitude) triples.
 * Pass nu > 0 to assert a Diophantine constant, or nu <= 0 to estimate it
 * as the cache minimum of |e^{2 pi i k omega} - 1| |k|^tau. omega_token
 * records the provenance of omega in written files ("golden" for the
 * golden mean); NULL means "literal". */
dsm_status dsm_map_create(double omega, double tau, double nu, int k_max,
                          int alpha, const double* modes, int n_modes,
                          const char* omega_token, dsm_map** out);
void dsm_map_destroy(dsm_map* map);
double dsm_map_nu(const dsm_map* map);
double dsm_map_omega(const dsm_map* map);
/* gamma_N = (nu/2)^{1/alpha} (aN)^{-tau/alpha} */
double dsm_map_gamma(const dsm_map* map, int n);
/* Pointwise map evaluation and Jacobian (row-major 2x2). */
void dsm_map_apply(const dsm_map* map, double x, double y, double eps,
                   double mu, double* fx, double* fy);
void dsm_map_jacobian(const dsm_map* map, double x, double y, double eps,
                      double jac[4]);

/* Diophantine constant estimate over 1 <= |k| <= k_max. */
double dsm_estimate_diophantine(double omega, double tau, int k_max);

/* Order-by-order expansion of the invariant circle. */
dsm_status dsm_expand(const dsm_map* map, int order, dsm_state** out);

/* Per-step record of the doubling iteration. */
typedef struct dsm_step_record {
  int h;
  int order_before;
  int order_after;
  double rho;
  double gamma;
  double defect_rel;
  int defect_lead;
  double block_det0;
} dsm_step_record;

/* Seed at order n0 and double h times; records (length h) are optional. */
dsm_status dsm_newton(const dsm_map* map, int n0, int h, double rho0,
                      dsm_state** out, dsm_step_record* records);

void dsm_state_destroy(dsm_state* state);
int dsm_state_order(const dsm_state* state);
double dsm_state_mu(const dsm_state* state, int n);
int dsm_state_degree(const dsm_state* state, int n);
/* Exponential mode k of the order-n hull coefficient. */
dsm_status dsm_state_mode(const dsm_state* state, int n, int k, double* re,
                          double* im);
/* Per-order majorant norms of the embedding coefficients at width rho;
 * writes min(len, order+1) values. */
dsm_status dsm_state_norms(const dsm_state* state, double rho, double* out,
                           int len);

dsm_status dsm_state_write(const dsm_state* state, const char* path);
dsm_status dsm_state_read(const char* path, dsm_state** out);

/* Per-order max relative discrepancy between two coefficient sets over the
 * shared order range; fails if the headers describe different problems. */
dsm_status dsm_state_compare(const dsm_state* a, const dsm_state* b,
                             double* per_order, int len);

typedef struct dsm_gevrey_fit {
  double sigma;
  double log_rate;
  double log_offset;
  double residual;
  int n_min;
  int n_max;
  double bound; /* 2 tau / alpha */
} dsm_gevrey_fit;

dsm_status dsm_fit_gevrey(const double* norms, int count, int n_min, int n_max,
                          double bound, dsm_gevrey_fit* out);

typedef struct dsm_residual_point {
  double eps;
  double residual;
  double floor;
  int usable;
} dsm_residual_point;

/* Numeric invariance residual of the truncated series through the map at the
 * given eps samples; theta is sampled uniformly with n_theta points. Floored
 * samples are flagged and excluded from the slope fit. */
dsm_status dsm_residual_scan(const dsm_state* state, const double* eps,
                             int n_eps, int n_theta,
                             dsm_residual_point* points, double* slope,
                             double* offset, int* used);

#ifdef __cplusplus
}
#endif

#endif /* DSM_DSM_H */
