#include "ompath.h"

#include <cstring>
#include <memory>
#include <string>

#include "action.hpp"
#include "model.hpp"
#include "oracles.hpp"
#include "path.hpp"
#include "solver.hpp"

struct ompath_model {
  std::unique_ptr<const ompath::Model> impl;
};

struct ompath_path {
  ompath::Path impl;
};

struct ompath_trace {
  ompath::IterationTrace impl;
  ompath_path final_path;
};

namespace {

thread_local std::string g_last_error;

int code_of(const ompath::Error& e) { return static_cast<int>(e.code()); }

template <class F>
int guarded(F&& f) noexcept {
  try {
    f();
    return OMPATH_OK;
  } catch (const ompath::Error& e) {
    g_last_error = e.what();
    return code_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OMPATH_ERR_INTERNAL;
  }
}

template <class F>
auto guarded_ptr(F&& f) noexcept -> decltype(f()) {
  try {
    return f();
  } catch (const ompath::Error& e) {
    g_last_error = e.what();
    return nullptr;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

ompath_path* wrap_path(ompath::Path&& p) { return new ompath_path{std::move(p)}; }

std::span<const double> point_of(const ompath_model* m, const double* x) {
  return {x, static_cast<size_t>(m->impl->dim())};
}

std::span<double> out_of(const ompath_model* m, double* x) {
  return {x, static_cast<size_t>(m->impl->dim())};
}

ompath::SolverConfig convert(const ompath_solver_config* cfg) {
  ompath::SolverConfig out;
  if (!cfg) return out;
  out.ds = cfg->ds;
  out.tol = cfg->tol;
  out.max_iters = cfg->max_iters;
  out.scheme = cfg->scheme == OMPATH_SCHEME_EXPLICIT ? ompath::Scheme::explicit_euler
                                                     : ompath::Scheme::semi_implicit;
  out.record_every = cfg->record_every;
  out.divergence_radius = cfg->divergence_radius;
  out.divergence_energy = cfg->divergence_energy;
  return out;
}

}  // namespace

extern "C" {

const char* ompath_version(void) { return OMPATH_VERSION; }

const char* ompath_last_error(void) { return g_last_error.c_str(); }

/* ------------------------------------------------------------------ models */

ompath_model* ompath_model_create_quadratic(double epsilon) {
  return guarded_ptr([&]() -> ompath_model* {
    return new ompath_model{std::make_unique<ompath::QuadraticModel>(epsilon)};
  });
}

ompath_model* ompath_model_create_two_channel(double epsilon, double gamma) {
  return guarded_ptr([&]() -> ompath_model* {
    return new ompath_model{std::make_unique<ompath::TwoChannelModel>(epsilon, gamma)};
  });
}

ompath_model* ompath_model_create_lj_cluster(double epsilon, int n_atoms, double delta,
                                             double sigma) {
  return guarded_ptr([&]() -> ompath_model* {
    return new ompath_model{std::make_unique<ompath::LJClusterModel>(epsilon, n_atoms, delta, sigma)};
  });
}

ompath_model* ompath_model_create_maier_stein(double epsilon, double beta) {
  return guarded_ptr([&]() -> ompath_model* {
    return new ompath_model{std::make_unique<ompath::MaierSteinModel>(epsilon, beta)};
  });
}

void ompath_model_free(ompath_model* m) { delete m; }

int ompath_model_dim(const ompath_model* m) { return m->impl->dim(); }
double ompath_model_epsilon(const ompath_model* m) { return m->impl->epsilon(); }
int ompath_model_is_gradient(const ompath_model* m) {
  return m->impl->kind() == ompath::ModelKind::gradient ? 1 : 0;
}

int ompath_model_potential(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { *out = m->impl->potential(point_of(m, x)); });
}

int ompath_model_grad_potential(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { m->impl->grad_potential(point_of(m, x), out_of(m, out)); });
}

int ompath_model_laplacian_potential(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { *out = m->impl->laplacian_potential(point_of(m, x)); });
}

int ompath_model_drift(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { m->impl->drift(point_of(m, x), out_of(m, out)); });
}

int ompath_model_drift_jacobian(const ompath_model* m, const double* x, double* out) {
  return guarded([&] {
    const size_t d = m->impl->dim();
    m->impl->drift_jacobian(point_of(m, x), {out, d * d});
  });
}

int ompath_model_path_potential(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { *out = m->impl->path_potential(point_of(m, x)); });
}

int ompath_model_grad_path_potential(const ompath_model* m, const double* x, double* out) {
  return guarded([&] { m->impl->grad_path_potential(point_of(m, x), out_of(m, out)); });
}

int ompath_descend_potential(const ompath_model* m, double* x, double grad_tol, long max_iters) {
  return guarded([&] {
    ompath::DescendOptions opts;
    if (grad_tol > 0.0) opts.grad_tol = grad_tol;
    if (max_iters > 0) opts.max_iters = max_iters;
    const auto relaxed = ompath::descend_potential(*m->impl, point_of(m, x), opts);
    std::memcpy(x, relaxed.data(), relaxed.size() * sizeof(double));
  });
}

/* ------------------------------------------------------------------- paths */

ompath_path* ompath_path_from_nodes(const double* nodes, int n_segments, int dim) {
  return guarded_ptr([&]() -> ompath_path* {
    const size_t count = static_cast<size_t>(n_segments + 1) * dim;
    return wrap_path(ompath::make_path({nodes, count}, dim));
  });
}

ompath_path* ompath_path_linear(const double* xs, const double* xf, int dim, int n_segments) {
  return guarded_ptr([&]() -> ompath_path* {
    const size_t d = dim;
    return wrap_path(ompath::linear_path({xs, d}, {xf, d}, n_segments));
  });
}

ompath_path* ompath_path_from_waypoints(const double* waypoints, int n_waypoints, int dim,
                                        int n_segments) {
  return guarded_ptr([&]() -> ompath_path* {
    const size_t count = static_cast<size_t>(n_waypoints) * dim;
    return wrap_path(ompath::waypoint_path({waypoints, count}, dim, n_segments));
  });
}

ompath_path* ompath_path_reparametrize(const ompath_path* p) {
  return guarded_ptr(
      [&]() -> ompath_path* { return wrap_path(ompath::reparametrize_equal_arclength(p->impl)); });
}

ompath_path* ompath_path_clone(const ompath_path* p) {
  return guarded_ptr([&]() -> ompath_path* { return new ompath_path{p->impl}; });
}

void ompath_path_free(ompath_path* p) { delete p; }

int ompath_path_dim(const ompath_path* p) { return p->impl.dim; }
int ompath_path_segments(const ompath_path* p) { return p->impl.n_segments(); }
const double* ompath_path_nodes(const ompath_path* p) { return p->impl.nodes.data(); }
double ompath_path_length(const ompath_path* p) { return ompath::path_length(p->impl); }

int ompath_path_hausdorff(const ompath_path* a, const ompath_path* b, double* out) {
  return guarded([&] { *out = ompath::hausdorff_distance(a->impl, b->impl); });
}

/* ----------------------------------------------------------------- actions */

int ompath_geometric_action(const ompath_model* m, const ompath_path* p, double energy,
                            double* out) {
  return guarded([&] { *out = ompath::geometric_action(*m->impl, p->impl, energy); });
}

int ompath_fw_action(const ompath_model* m, const ompath_path* p, double* out) {
  return guarded([&] { *out = ompath::fw_action(*m->impl, p->impl); });
}

int ompath_implied_time(const ompath_model* m, const ompath_path* p, double energy, double* out) {
  return guarded([&] { *out = ompath::implied_transition_time(*m->impl, p->impl, energy); });
}

int ompath_action_report_compute(const ompath_model* m, const ompath_path* p,
                                 ompath_action_report* out) {
  return guarded([&] {
    const ompath::ActionReport rep = ompath::action_report(*m->impl, p->impl);
    out->energy = rep.energy;
    out->geometric_action = rep.geometric_action;
    out->fw_geometric_action = rep.fw_geometric_action;
    out->implied_time = rep.implied_time;
    out->om_action = rep.om_action;
  });
}

int ompath_lambda_profile(const ompath_model* m, const ompath_path* p, double energy,
                          double* values, int* critical, int capacity, int* n_critical) {
  return guarded([&] {
    const ompath::LambdaProfile prof = ompath::lambda_profile(*m->impl, p->impl, energy);
    if (values) std::memcpy(values, prof.values.data(), prof.values.size() * sizeof(double));
    const int total = static_cast<int>(prof.critical_indices.size());
    if (critical) {
      const int n = std::min(capacity, total);
      for (int i = 0; i < n; ++i) critical[i] = prof.critical_indices[i];
    }
    if (n_critical) *n_critical = total;
  });
}

/* ------------------------------------------------------------------ solver */

void ompath_solver_config_default(ompath_solver_config* cfg) {
  const ompath::SolverConfig d;
  cfg->ds = d.ds;
  cfg->tol = d.tol;
  cfg->max_iters = d.max_iters;
  cfg->scheme = OMPATH_SCHEME_SEMI_IMPLICIT;
  cfg->record_every = d.record_every;
  cfg->divergence_radius = d.divergence_radius;
  cfg->divergence_energy = d.divergence_energy;
}

ompath_path* ompath_egma_step(const ompath_model* m, const ompath_path* p, double energy,
                              const ompath_solver_config* cfg) {
  return guarded_ptr([&]() -> ompath_path* {
    auto res = ompath::egma_step(*m->impl, p->impl, energy, convert(cfg));
    return wrap_path(std::move(res.path));
  });
}

ompath_trace* ompath_egma_run(const ompath_model* m, const ompath_path* initial,
                              const ompath_solver_config* cfg, ompath_iter_observer observer,
                              void* user) {
  return guarded_ptr([&]() -> ompath_trace* {
    ompath::IterObserver obs;
    if (observer) {
      obs = [observer, user](long iter, double energy, double residual,
                             const ompath::Path& path) -> bool {
        ompath_path view{path};
        return observer(user, iter, energy, residual, &view) != 0;
      };
    }
    auto trace = std::make_unique<ompath_trace>();
    trace->impl = ompath::egma_run(*m->impl, initial->impl, convert(cfg), obs);
    trace->final_path.impl = trace->impl.final_path;
    return trace.release();
  });
}

void ompath_trace_free(ompath_trace* t) { delete t; }

int ompath_trace_status(const ompath_trace* t) {
  switch (t->impl.status) {
    case ompath::SolveStatus::converged:
      return OMPATH_STATUS_CONVERGED;
    case ompath::SolveStatus::max_iters:
      return OMPATH_STATUS_MAX_ITERS;
    case ompath::SolveStatus::diverged:
      return OMPATH_STATUS_DIVERGED;
  }
  return OMPATH_STATUS_MAX_ITERS;
}

long ompath_trace_iterations(const ompath_trace* t) { return t->impl.iterations_run; }
long ompath_trace_recorded(const ompath_trace* t) {
  return static_cast<long>(t->impl.steps.size());
}
const long* ompath_trace_steps(const ompath_trace* t) { return t->impl.steps.data(); }
const double* ompath_trace_energies(const ompath_trace* t) { return t->impl.energies.data(); }
const double* ompath_trace_residuals(const ompath_trace* t) { return t->impl.residuals.data(); }
const ompath_path* ompath_trace_final_path(const ompath_trace* t) { return &t->final_path; }
const char* ompath_trace_message(const ompath_trace* t) { return t->impl.message.c_str(); }

/* ----------------------------------------------------------------- oracles */

int ompath_quad_solution_compute(double epsilon, const double* xs2, const double* xf2, double time,
                                 ompath_quad_solution* out) {
  return guarded([&] {
    const auto sol =
        ompath::quad_solution(epsilon, {xs2[0], xs2[1]}, {xf2[0], xf2[1]}, time);
    out->coef_growing[0] = sol.coef_growing[0];
    out->coef_growing[1] = sol.coef_growing[1];
    out->coef_decaying[0] = sol.coef_decaying[0];
    out->coef_decaying[1] = sol.coef_decaying[1];
    out->time = sol.time;
    out->energy = sol.energy;
    out->om_action = sol.om_action;
    out->turning_time = sol.turning_time;
    out->min_distance_sq = sol.min_distance_sq;
  });
}

int ompath_quad_solution_sample(double epsilon, const double* xs2, const double* xf2, double time,
                                int n, double* t_out, double* pos_out, double* vel_out) {
  return guarded([&] {
    const auto sol =
        ompath::quad_solution(epsilon, {xs2[0], xs2[1]}, {xf2[0], xf2[1]}, time);
    std::vector<double> t, pos, vel;
    ompath::quad_solution_sample(sol, n, t, pos, vel);
    std::memcpy(t_out, t.data(), t.size() * sizeof(double));
    std::memcpy(pos_out, pos.data(), pos.size() * sizeof(double));
    std::memcpy(vel_out, vel.data(), vel.size() * sizeof(double));
  });
}

ompath_path* ompath_quad_graph_limit(double xs, double xf, int n_segments) {
  return guarded_ptr(
      [&]() -> ompath_path* { return wrap_path(ompath::quad_graph_limit(xs, xf, n_segments)); });
}

int ompath_quad_fw_times(double xs, double xf, double* t_a, double* t_b) {
  return guarded([&] {
    const auto [ta, tb] = ompath::quad_fw_times(xs, xf);
    *t_a = ta;
    *t_b = tb;
  });
}

int ompath_quad_case2_fw(double radius, double theta1, double theta2, double* t_c, double* action,
                         double* min_distance_sq) {
  return guarded([&] {
    const auto out = ompath::quad_case2_fw(radius, theta1, theta2);
    *t_c = out.time;
    *action = out.action;
    *min_distance_sq = out.min_distance_sq;
  });
}

int ompath_ms_critical_point(double epsilon, double* x_abs, double* energy) {
  return guarded([&] {
    const auto out = ompath::ms_critical_point(epsilon);
    *x_abs = out.x_abs;
    *energy = out.energy;
  });
}

}  // extern "C"
