/* ompath — most-probable transition paths of diffusions by energy-climbing
 * geometric minimization.
 *
 * C interface: opaque handles, integer error codes. Functions returning int
 * give OMPATH_OK on success; constructors return NULL on failure. The last
 * failure message for the calling thread is available via ompath_last_error().
 * Handles are freed with the matching *_free function; accessor pointers stay
 * valid for the lifetime of the handle they came from.
 */
#ifndef OMPATH_H
#define OMPATH_H

#ifdef __cplusplus
extern "C" {
#endif

#define OMPATH_VERSION "0.2.0"

enum {
  OMPATH_OK = 0,
  OMPATH_ERR_INVALID_ARGUMENT = 1,
  OMPATH_ERR_UNSUPPORTED = 2, /* evaluator not provided by this model */
  OMPATH_ERR_DOMAIN = 3,      /* evaluation outside the model domain */
  OMPATH_ERR_INFEASIBLE = 4,  /* energy below the path potential */
  OMPATH_ERR_INTERNAL = 5
};

const char* ompath_version(void);
const char* ompath_last_error(void);

/* ------------------------------------------------------------------ models */

typedef struct ompath_model ompath_model;

ompath_model* ompath_model_create_quadratic(double epsilon);
ompath_model* ompath_model_create_two_channel(double epsilon, double gamma);
ompath_model* ompath_model_create_lj_cluster(double epsilon, int n_atoms, double delta,
                                             double sigma);
ompath_model* ompath_model_create_maier_stein(double epsilon, double beta);
void ompath_model_free(ompath_model* m);

int ompath_model_dim(const ompath_model* m);
double ompath_model_epsilon(const ompath_model* m);
int ompath_model_is_gradient(const ompath_model* m);

/* x has model dim entries; vector outputs have model dim entries, the drift
 * Jacobian dim*dim entries in row-major order. */
int ompath_model_potential(const ompath_model* m, const double* x, double* out);
int ompath_model_grad_potential(const ompath_model* m, const double* x, double* out);
int ompath_model_laplacian_potential(const ompath_model* m, const double* x, double* out);
int ompath_model_drift(const ompath_model* m, const double* x, double* out);
int ompath_model_drift_jacobian(const ompath_model* m, const double* x, double* out);
int ompath_model_path_potential(const ompath_model* m, const double* x, double* out);
int ompath_model_grad_path_potential(const ompath_model* m, const double* x, double* out);

/* Gradient descent on V from x (dim entries, updated in place). */
int ompath_descend_potential(const ompath_model* m, double* x, double grad_tol, long max_iters);

/* ------------------------------------------------------------------- paths */

typedef struct ompath_path ompath_path;

/* nodes: (n_segments+1)*dim doubles, node-major. */
ompath_path* ompath_path_from_nodes(const double* nodes, int n_segments, int dim);
ompath_path* ompath_path_linear(const double* xs, const double* xf, int dim, int n_segments);
/* waypoints: n_waypoints*dim doubles; resampled at equal arclength. */
ompath_path* ompath_path_from_waypoints(const double* waypoints, int n_waypoints, int dim,
                                        int n_segments);
ompath_path* ompath_path_reparametrize(const ompath_path* p);
ompath_path* ompath_path_clone(const ompath_path* p);
void ompath_path_free(ompath_path* p);

int ompath_path_dim(const ompath_path* p);
int ompath_path_segments(const ompath_path* p);
const double* ompath_path_nodes(const ompath_path* p);
double ompath_path_length(const ompath_path* p);
int ompath_path_hausdorff(const ompath_path* a, const ompath_path* b, double* out);

/* ----------------------------------------------------------------- actions */

typedef struct {
  double energy;              /* node-max of the path potential */
  double geometric_action;    /* at that energy */
  double fw_geometric_action; /* zero-energy functional; +inf when U > 0 somewhere */
  double implied_time;        /* +inf when the path attains U = E */
  double om_action;           /* geometric_action - energy*time; -inf sentinel */
} ompath_action_report;

int ompath_geometric_action(const ompath_model* m, const ompath_path* p, double energy,
                            double* out);
int ompath_fw_action(const ompath_model* m, const ompath_path* p, double* out);
int ompath_implied_time(const ompath_model* m, const ompath_path* p, double energy, double* out);
int ompath_action_report_compute(const ompath_model* m, const ompath_path* p,
                                 ompath_action_report* out);

/* values: n_segments+1 entries. critical: up to capacity indices of the local
 * minima of lambda; *n_critical receives the full count. */
int ompath_lambda_profile(const ompath_model* m, const ompath_path* p, double energy,
                          double* values, int* critical, int capacity, int* n_critical);

/* ------------------------------------------------------------------ solver */

enum { OMPATH_SCHEME_EXPLICIT = 0, OMPATH_SCHEME_SEMI_IMPLICIT = 1 };
enum { OMPATH_STATUS_CONVERGED = 0, OMPATH_STATUS_MAX_ITERS = 1, OMPATH_STATUS_DIVERGED = 2 };

typedef struct {
  double ds;                /* relaxation step */
  double tol;               /* stop when max|delta|/ds < tol */
  long max_iters;
  int scheme;               /* OMPATH_SCHEME_* */
  long record_every;        /* 0: every step up to 1000 iterations, then every 10 */
  double divergence_radius; /* node norm cap */
  double divergence_energy; /* energy cap */
} ompath_solver_config;

void ompath_solver_config_default(ompath_solver_config* cfg);

/* One relaxation sweep at the given energy (normally the node-max of U). */
ompath_path* ompath_egma_step(const ompath_model* m, const ompath_path* p, double energy,
                              const ompath_solver_config* cfg);

typedef struct ompath_trace ompath_trace;

/* Called on recorded iterations; return nonzero to keep going, zero to stop
 * the run early. */
typedef int (*ompath_iter_observer)(void* user, long iter, double energy, double residual,
                                    const ompath_path* current);

ompath_trace* ompath_egma_run(const ompath_model* m, const ompath_path* initial,
                              const ompath_solver_config* cfg, ompath_iter_observer observer,
                              void* user);
void ompath_trace_free(ompath_trace* t);

int ompath_trace_status(const ompath_trace* t);
long ompath_trace_iterations(const ompath_trace* t);
long ompath_trace_recorded(const ompath_trace* t);
const long* ompath_trace_steps(const ompath_trace* t);
const double* ompath_trace_energies(const ompath_trace* t);
const double* ompath_trace_residuals(const ompath_trace* t);
const ompath_path* ompath_trace_final_path(const ompath_trace* t);
const char* ompath_trace_message(const ompath_trace* t);

/* ----------------------------------------------------------------- oracles */

typedef struct {
  double coef_growing[2];  /* A in psi(t) = A e^t + B e^-t */
  double coef_decaying[2]; /* B */
  double time;
  double energy;          /* 2 eps - 2 A.B */
  double om_action;
  double turning_time;    /* closest-approach time; NaN when undefined */
  double min_distance_sq; /* 2|A||B| + 2 A.B */
} ompath_quad_solution;

int ompath_quad_solution_compute(double epsilon, const double* xs2, const double* xf2, double time,
                                 ompath_quad_solution* out);
/* Samples psi and dpsi/dt on n uniform times in [0, T]; t_out has n entries,
 * pos_out and vel_out 2n entries. */
int ompath_quad_solution_sample(double epsilon, const double* xs2, const double* xf2, double time,
                                int n, double* t_out, double* pos_out, double* vel_out);
ompath_path* ompath_quad_graph_limit(double xs, double xf, int n_segments);
int ompath_quad_fw_times(double xs, double xf, double* t_a, double* t_b);
int ompath_quad_case2_fw(double radius, double theta1, double theta2, double* t_c, double* action,
                         double* min_distance_sq);
int ompath_ms_critical_point(double epsilon, double* x_abs, double* energy);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OMPATH_H */
