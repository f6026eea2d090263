#include "action.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ompath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double energy_tol(double energy) { return 1e-12 * (1.0 + std::abs(energy)); }

std::vector<double> eval_path_potential(const Model& m, const Path& path) {
  std::vector<double> u(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) u[j] = m.path_potential(path.node(j));
  return u;
}

double trapezoid(const std::vector<double>& g, int n_segments) {
  double s = 0.5 * (g.front() + g.back());
  for (size_t j = 1; j + 1 < g.size(); ++j) s += g[j];
  return s / n_segments;
}

double drift_work_integrand(const Model& m, const Path& path, const std::vector<double>& dvec,
                            int j) {
  thread_local std::vector<double> b;
  b.resize(path.dim);
  m.drift(path.node(j), b);
  double s = 0.0;
  const double* v = dvec.data() + static_cast<size_t>(j) * path.dim;
  for (int c = 0; c < path.dim; ++c) s += b[c] * v[c];
  return s;
}

double action_at_energy(const Model& m, const Path& path, double energy, bool with_drift_work) {
  if (path.dim != m.dim()) fail(ErrorCode::invalid_argument, "path/model dimension mismatch");
  const std::vector<double> u = eval_path_potential(m, path);
  const double tol = energy_tol(energy);
  for (double uj : u)
    if (uj > energy + tol) return kInf;

  const std::vector<double> mags = derivative_magnitudes(path);
  std::vector<double> g(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) {
    const double k2 = std::max(2.0 * (energy - u[j]), 0.0);
    g[j] = std::sqrt(k2) * mags[j];
  }
  if (with_drift_work) {
    const std::vector<double> dvec = derivative_vectors(path);
    for (int j = 0; j < path.n_nodes(); ++j) g[j] -= drift_work_integrand(m, path, dvec, j);
  }
  return trapezoid(g, path.n_segments());
}

}  // namespace

double geometric_action(const Model& m, const Path& path, double energy) {
  if (path_length(path) == 0.0) return 0.0;
  return action_at_energy(m, path, energy, m.kind() == ModelKind::non_gradient);
}

double fw_action(const Model& m, const Path& path) {
  if (path_length(path) == 0.0) return 0.0;
  return action_at_energy(m, path, 0.0, true);
}

double implied_transition_time(const Model& m, const Path& path, double energy) {
  if (path.dim != m.dim()) fail(ErrorCode::invalid_argument, "path/model dimension mismatch");
  if (path_length(path) == 0.0) return 0.0;
  const std::vector<double> u = eval_path_potential(m, path);
  const double tol = energy_tol(energy);
  for (double uj : u)
    if (uj > energy + tol)
      fail(ErrorCode::infeasible, "implied_transition_time: path potential exceeds the energy");
  const std::vector<double> mags = derivative_magnitudes(path);
  std::vector<double> g(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) {
    const double k2 = 2.0 * (energy - u[j]);
    if (k2 <= tol) return kInf;
    g[j] = mags[j] / std::sqrt(k2);
  }
  return trapezoid(g, path.n_segments());
}

LambdaProfile lambda_profile(const Model& m, const Path& path, double energy) {
  if (path.dim != m.dim()) fail(ErrorCode::invalid_argument, "path/model dimension mismatch");
  const std::vector<double> u = eval_path_potential(m, path);
  const std::vector<double> mags = derivative_magnitudes(path);
  LambdaProfile prof;
  prof.values.resize(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) {
    const double num = std::sqrt(std::max(2.0 * (energy - u[j]), 0.0));
    prof.values[j] = num == 0.0 ? 0.0 : num / mags[j];
  }

  // plateau-merged strict local minima; values within rounding of each other
  // belong to one plateau, missing neighbours count as +inf
  const int n = path.n_nodes();
  const auto same = [&](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)); };
  int run_start = 0;
  while (run_start < n) {
    int run_end = run_start;
    while (run_end + 1 < n && same(prof.values[run_end + 1], prof.values[run_start])) ++run_end;
    const double v = prof.values[run_start];
    const double left = run_start > 0 ? prof.values[run_start - 1] : kInf;
    const double right = run_end + 1 < n ? prof.values[run_end + 1] : kInf;
    const bool whole = run_start == 0 && run_end == n - 1;
    if (!whole && left > v && right > v)
      prof.critical_indices.push_back((run_start + run_end) / 2);
    run_start = run_end + 1;
  }
  return prof;
}

ActionReport action_report(const Model& m, const Path& path) {
  if (path.dim != m.dim()) fail(ErrorCode::invalid_argument, "path/model dimension mismatch");
  ActionReport rep;
  const std::vector<double> u = eval_path_potential(m, path);
  rep.energy = *std::max_element(u.begin(), u.end());
  if (path_length(path) == 0.0) {
    rep.geometric_action = 0.0;
    rep.fw_geometric_action = rep.energy > energy_tol(0.0) ? kInf : 0.0;
    rep.implied_time = 0.0;
    rep.om_action = 0.0;
    return rep;
  }
  rep.geometric_action = geometric_action(m, path, rep.energy);
  rep.fw_geometric_action = fw_action(m, path);
  rep.implied_time = implied_transition_time(m, path, rep.energy);
  if (std::isinf(rep.implied_time)) {
    if (rep.energy > 0.0)
      rep.om_action = -kInf;
    else if (rep.energy < 0.0)
      rep.om_action = kInf;
    else
      rep.om_action = rep.geometric_action;
  } else {
    rep.om_action = rep.geometric_action - rep.energy * rep.implied_time;
  }
  return rep;
}

}  // namespace ompath
