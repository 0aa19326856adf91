/* vvhyp - vanishing-viscosity solvers for 1-D strictly hyperbolic systems.
 *
 * C interface of the shared library. All functions return vvh_status;
 * VVH_OK (0) means success. On failure vvh_last_error() describes the
 * problem for the calling thread. Handles are opaque and must be released
 * with the matching *_free/_close call.
 */
#ifndef VVHYP_H_
#define VVHYP_H_

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vvh_status {
  VVH_OK = 0,
  VVH_ERR_INVALID = 1,
  VVH_ERR_UNKNOWN_MODEL = 2,
  VVH_ERR_NOT_HYPERBOLIC = 3,
  VVH_ERR_BLOWUP = 4,
  VVH_ERR_NO_CONVERGENCE = 5,
  VVH_ERR_DOMAIN = 6,
  VVH_ERR_IO = 7,
  VVH_ERR_FAIL = 8
} vvh_status;

typedef struct vvh_model vvh_model;
typedef struct vvh_traj vvh_traj;
typedef struct vvh_fan vvh_fan;

const char* vvh_version(void);
/* message of the most recent failure on this thread ("" if none) */
const char* vvh_last_error(void);

/* ---- models ---------------------------------------------------------- */
/* spec: "burgers", "linear2", "p_system:1.4", "nc_toy", "burgers_shift:d" */
vvh_status vvh_model_open(const char* spec, vvh_model** out);
void vvh_model_close(vvh_model* m);
int vvh_model_dim(const vvh_model* m);
int vvh_model_has_flux(const vvh_model* m);
/* u: dim values; lambdas: dim values (ascending) */
vvh_status vvh_model_eigenvalues(const vvh_model* m, const double* u,
                                 double* lambdas);
/* R column-major right eigenvectors, L row-major left eigenvectors
 * (either may be NULL); both dim*dim */
vvh_status vvh_model_spectrum(const vvh_model* m, const double* u,
                              double* lambdas, double* R, double* L);
vvh_status vvh_model_flux(const vvh_model* m, const double* u, double* f);
/* reference state u* and validity radius of the model */
vvh_status vvh_model_ref_state(const vvh_model* m, double* u_star,
                               double* radius);

/* ---- viscous solve ---------------------------------------------------- */
typedef struct vvh_solve_opts {
  double epsilon;
  double t_end;
  double cfl_adv;          /* <= 0: default 0.4 */
  double cfl_diff;         /* <= 0: default 0.4 */
  double dt_max;           /* <= 0: unlimited */
  const double* snapshots; /* sorted times; NULL: {t_end} */
  int snapshot_count;
} vvh_solve_opts;

/* u0: m*dim cell states on the uniform grid {x0 + (j+1/2) dx} */
vvh_status vvh_solve(const vvh_model* m, double x0, double dx, int cells,
                     const double* u0, const vvh_solve_opts* opts,
                     vvh_traj** out);
/* z0: tangent initial data on the same grid */
vvh_status vvh_solve_tangent(const vvh_model* m, const vvh_traj* u_traj,
                             const double* z0, const vvh_solve_opts* opts,
                             vvh_traj** out);
void vvh_traj_free(vvh_traj* t);
int vvh_traj_snapshots(const vvh_traj* t);
int vvh_traj_cells(const vvh_traj* t);
double vvh_traj_time(const vvh_traj* t, int snapshot);
/* copies m*dim values of the snapshot into out */
vvh_status vvh_traj_data(const vvh_traj* t, int snapshot, double* out);
vvh_status vvh_traj_write_csv(const vvh_traj* t, const char* path);

/* decomposition CSV (x, i, v, w, sigma, lambdatilde) of one snapshot */
vvh_status vvh_decompose_csv(const vvh_model* m, const vvh_traj* t,
                             int snapshot, double epsilon, const char* path);

/* functional time series CSV (t, TV, Q, A, L, diss terms) of a scalar run
 * with (v, w) = (u_x, -u_t) */
vvh_status vvh_functionals_csv(const vvh_model* m, const vvh_traj* t,
                               double epsilon, const char* path);

/* ---- Riemann solver ---------------------------------------------------- */
/* nodes <= 0: default 400 */
vvh_status vvh_riemann(const vvh_model* m, const double* u_left,
                       const double* u_right, int nodes, vvh_fan** out);
void vvh_fan_free(vvh_fan* f);
vvh_status vvh_fan_sample(const vvh_fan* f, double xi, double* u);
vvh_status vvh_fan_strengths(const vvh_fan* f, double* s);
vvh_status vvh_fan_write_csv(const vvh_fan* f, const char* path);
vvh_status vvh_fan_write_profile_csv(const vvh_fan* f, double xi_lo,
                                     double xi_hi, int count,
                                     const char* path);

/* ---- functionals ------------------------------------------------------- */
double vvh_total_variation(const double* values, int count);
vvh_status vvh_interaction_potential(double x0, double dx, int count,
                                     const double* z, const double* zs,
                                     double c, double* out);
vvh_status vvh_area_functional(double x0, double dx, int count,
                               const double* v, const double* w, double* out);
vvh_status vvh_length_functional(double x0, double dx, int count,
                                 const double* v, const double* w,
                                 double* out);

/* ---- experiments / verification ---------------------------------------- */
/* newline-separated names of all registered checks, written into buf */
vvh_status vvh_check_names(char* buf, size_t buf_size);
/* config_text: key=value lines ("" for defaults). Writes <name>.csv into
 * outdir when outdir is non-NULL. *passed is 1 when every verdict holds. */
vvh_status vvh_check_run(const char* name, const char* config_text,
                         const char* outdir, int quick, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* VVHYP_H_ */
