#include "solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ompath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> eval_u(const Model& m, const Path& path) {
  std::vector<double> u(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) u[j] = m.path_potential(path.node(j));
  return u;
}

// Interior right-hand side pieces shared by both schemes: the steepest-ascent
// and rotation terms, evaluated at phi^n.
void ascent_terms(const Model& m, const Path& path, const std::vector<double>& u, double energy,
                  std::vector<double>& out) {
  const int n = path.n_segments();
  const int dim = path.dim;
  const double N = n;
  const bool non_gradient = m.kind() == ModelKind::non_gradient;
  out.assign(static_cast<size_t>(n + 1) * dim, 0.0);
  thread_local std::vector<double> gu, jac, dphi, rot;
  gu.resize(dim);
  dphi.resize(dim);
  if (non_gradient) {
    jac.resize(static_cast<size_t>(dim) * dim);
    rot.resize(dim);
  }
  for (int j = 1; j < n; ++j) {
    auto prev = path.node(j - 1);
    auto next = path.node(j + 1);
    double dphi2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      dphi[c] = (next[c] - prev[c]) * N * 0.5;
      dphi2 += dphi[c] * dphi[c];
    }
    m.grad_path_potential(path.node(j), gu);
    double gu_dot = 0.0;
    for (int c = 0; c < dim; ++c) gu_dot += gu[c] * dphi[c];
    double* o = out.data() + static_cast<size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) o[c] = dphi2 * gu[c] - gu_dot * dphi[c];
    if (non_gradient) {
      const double k2 = std::max(2.0 * (energy - u[j]), 0.0);
      // |phi'| sqrt(2K) (gradb^T - gradb) phi': the |phi'| factor keeps the
      // rotation term consistent with the alpha-normalized |phi'|^2 terms
      const double w = std::sqrt(dphi2) * std::sqrt(k2);
      m.drift_jacobian(path.node(j), jac);
      for (int r = 0; r < dim; ++r) {
        double s = 0.0;
        for (int c = 0; c < dim; ++c) s += (jac[static_cast<size_t>(c) * dim + r] - jac[static_cast<size_t>(r) * dim + c]) * dphi[c];
        o[r] += w * s;
      }
    }
  }
}

StepResult step_impl(const Model& m, const Path& path, const std::vector<double>& u, double energy,
                     const SolverConfig& cfg, Scheme scheme) {
  const int n = path.n_segments();
  const int dim = path.dim;
  const double N = n;
  const double h2 = 1.0 / (N * N);

  std::vector<double> rhs;
  ascent_terms(m, path, u, energy, rhs);

  double ds = cfg.ds;
  if (scheme == Scheme::explicit_euler) {
    double kmax = 0.0;
    for (int j = 0; j <= n; ++j) kmax = std::max(kmax, energy - u[j]);
    ds = std::min(cfg.ds, h2 / (4.0 * kmax + std::numeric_limits<double>::epsilon()));
  }

  Path next;
  next.dim = dim;
  next.nodes = path.nodes;  // endpoints stay in place

  if (scheme == Scheme::explicit_euler) {
    for (int j = 1; j < n; ++j) {
      const double k2 = std::max(2.0 * (energy - u[j]), 0.0);
      auto prev = path.node(j - 1);
      auto cur = path.node(j);
      auto nxt = path.node(j + 1);
      double* o = next.nodes.data() + static_cast<size_t>(j) * dim;
      const double* r = rhs.data() + static_cast<size_t>(j) * dim;
      for (int c = 0; c < dim; ++c) {
        const double d2 = (nxt[c] - 2.0 * cur[c] + prev[c]) * N * N;
        o[c] = cur[c] + ds * (k2 * d2 + r[c]);
      }
    }
  } else {
    // (I - 2 ds K_j D2) phi~ = phi + ds * rhs, Dirichlet rows at the ends.
    // Same tridiagonal matrix for every coordinate; Thomas elimination.
    const int rows = n + 1;
    std::vector<double> lower(rows, 0.0), diag(rows, 1.0), upper(rows, 0.0);
    for (int j = 1; j < n; ++j) {
      const double kj = std::max(energy - u[j], 0.0);
      const double w = 2.0 * ds * kj * N * N;
      lower[j] = -w;
      diag[j] = 1.0 + 2.0 * w;
      upper[j] = -w;
    }
    std::vector<double> cp(rows, 0.0);
    std::vector<double> denom(rows, 0.0);
    denom[0] = diag[0];
    cp[0] = upper[0] / denom[0];
    for (int j = 1; j < rows; ++j) {
      denom[j] = diag[j] - lower[j] * cp[j - 1];
      // dominance keeps the pivots positive
      if (!(denom[j] > 0.0)) fail(ErrorCode::internal, "semi-implicit step: singular pivot");
      if (j + 1 < rows) cp[j] = upper[j] / denom[j];
    }
    std::vector<double> d(rows), sol(rows);
    for (int c = 0; c < dim; ++c) {
      d[0] = path.nodes[c];
      for (int j = 1; j < n; ++j) {
        const double b = path.nodes[static_cast<size_t>(j) * dim + c] +
                         ds * rhs[static_cast<size_t>(j) * dim + c];
        d[j] = (b - lower[j] * d[j - 1]) / denom[j];
      }
      d[n] = (path.nodes[static_cast<size_t>(n) * dim + c] - lower[n] * d[n - 1]) / denom[n];
      sol[n] = d[n];
      for (int j = n - 1; j >= 0; --j) sol[j] = d[j] - cp[j] * sol[j + 1];
      for (int j = 0; j <= n; ++j) next.nodes[static_cast<size_t>(j) * dim + c] = sol[j];
    }
    // forward elimination with identity in row 0 leaves d[0] = endpoint; keep
    // the pinned endpoints bit-exact regardless of rounding in the sweep
    std::copy_n(path.nodes.begin(), dim, next.nodes.begin());
    std::copy_n(path.nodes.end() - dim, dim, next.nodes.end() - dim);
  }

  StepResult res;
  res.ds_used = ds;
  res.path = reparametrize_equal_arclength(next);
  return res;
}

long record_stride(const SolverConfig& cfg, long iter) {
  if (cfg.record_every > 0) return cfg.record_every;
  return iter <= 1000 ? 1 : 10;
}

}  // namespace

StepResult egma_step_explicit(const Model& m, const Path& path, double energy,
                              const SolverConfig& cfg) {
  return step_impl(m, path, eval_u(m, path), energy, cfg, Scheme::explicit_euler);
}

StepResult egma_step_semi_implicit(const Model& m, const Path& path, double energy,
                                   const SolverConfig& cfg) {
  return step_impl(m, path, eval_u(m, path), energy, cfg, Scheme::semi_implicit);
}

StepResult egma_step(const Model& m, const Path& path, double energy, const SolverConfig& cfg) {
  return step_impl(m, path, eval_u(m, path), energy, cfg, cfg.scheme);
}

double discrete_el_residual(const Model& m, const Path& path, double energy) {
  const std::vector<double> u = eval_u(m, path);
  std::vector<double> rhs;
  ascent_terms(m, path, u, energy, rhs);
  const int n = path.n_segments();
  const int dim = path.dim;
  const double N = n;
  double worst = 0.0;
  for (int j = 1; j < n; ++j) {
    const double k2 = std::max(2.0 * (energy - u[j]), 0.0);
    auto prev = path.node(j - 1);
    auto cur = path.node(j);
    auto nxt = path.node(j + 1);
    const double* r = rhs.data() + static_cast<size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) {
      const double d2 = (nxt[c] - 2.0 * cur[c] + prev[c]) * N * N;
      worst = std::max(worst, std::abs(k2 * d2 + r[c]));
    }
  }
  return worst;
}

IterationTrace egma_run(const Model& m, const Path& initial, const SolverConfig& cfg,
                        const IterObserver& observer) {
  if (initial.dim != m.dim()) fail(ErrorCode::invalid_argument, "path/model dimension mismatch");
  if (cfg.ds <= 0.0) fail(ErrorCode::invalid_argument, "solver: ds must be positive");
  if (cfg.tol <= 0.0) fail(ErrorCode::invalid_argument, "solver: tol must be positive");
  if (initial.n_segments() < 2) fail(ErrorCode::invalid_argument, "solver: need at least two segments");

  IterationTrace trace;
  Path path = reparametrize_equal_arclength(initial);
  std::vector<double> u = eval_u(m, path);
  double energy = *std::max_element(u.begin(), u.end());

  trace.steps.push_back(0);
  trace.energies.push_back(energy);
  trace.residuals.push_back(kInf);
  if (observer && !observer(0, energy, kInf, path)) {
    trace.status = SolveStatus::max_iters;
    trace.message = "stopped by observer";
    trace.final_path = std::move(path);
    return trace;
  }

  const int dim = path.dim;
  for (long iter = 1; iter <= cfg.max_iters; ++iter) {
    StepResult step = step_impl(m, path, u, energy, cfg, cfg.scheme);
    trace.iterations_run = iter;

    double delta = 0.0;
    for (size_t i = 0; i < path.nodes.size(); ++i)
      delta = std::max(delta, std::abs(step.path.nodes[i] - path.nodes[i]));
    const double residual = delta / step.ds_used;

    // divergence screens before anything touches the new values
    bool bad = false;
    int bad_node = -1;
    for (int j = 0; j < step.path.n_nodes() && !bad; ++j) {
      double norm2 = 0.0;
      for (int c = 0; c < dim; ++c) {
        const double v = step.path.nodes[static_cast<size_t>(j) * dim + c];
        if (!std::isfinite(v)) {
          bad = true;
          bad_node = j;
          break;
        }
        norm2 += v * v;
      }
      if (!bad && norm2 > cfg.divergence_radius * cfg.divergence_radius) {
        bad = true;
        bad_node = j;
      }
    }
    if (bad) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "diverged at iteration %ld (node %d)", iter, bad_node);
      trace.status = SolveStatus::diverged;
      trace.message = buf;
      trace.final_path = std::move(step.path);
      trace.steps.push_back(iter);
      trace.energies.push_back(energy);
      trace.residuals.push_back(residual);
      return trace;
    }

    path = std::move(step.path);
    u = eval_u(m, path);
    energy = *std::max_element(u.begin(), u.end());

    const bool diverged_energy = energy > cfg.divergence_energy;
    const bool converged = residual < cfg.tol;
    const bool terminal = diverged_energy || converged || iter == cfg.max_iters;
    if (terminal || iter % record_stride(cfg, iter) == 0) {
      trace.steps.push_back(iter);
      trace.energies.push_back(energy);
      trace.residuals.push_back(residual);
      if (observer && !observer(iter, energy, residual, path)) {
        trace.status = SolveStatus::max_iters;
        trace.message = "stopped by observer";
        trace.final_path = std::move(path);
        return trace;
      }
    }
    if (diverged_energy) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "diverged at iteration %ld (energy %.3e)", iter, energy);
      trace.status = SolveStatus::diverged;
      trace.message = buf;
      trace.final_path = std::move(path);
      return trace;
    }
    if (converged) {
      trace.status = SolveStatus::converged;
      trace.final_path = std::move(path);
      return trace;
    }
  }
  trace.status = SolveStatus::max_iters;
  trace.final_path = std::move(path);
  return trace;
}

}  // namespace ompath
