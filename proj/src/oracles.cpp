#include "oracles.hpp"

#include <cmath>
#include <limits>

namespace ompath {

namespace {

double dot2(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] * b[0] + a[1] * b[1];
}

double norm2(const std::array<double, 2>& a) { return std::sqrt(dot2(a, a)); }

}  // namespace

QuadSolution quad_solution(double epsilon, std::array<double, 2> xs, std::array<double, 2> xf,
                           double time) {
  if (!(time > 0.0)) fail(ErrorCode::invalid_argument, "quad_solution: T must be positive");
  if (epsilon < 0.0) fail(ErrorCode::invalid_argument, "quad_solution: epsilon must be nonnegative");
  const double em = std::exp(-time);
  const double denom = 1.0 - em * em;

  QuadSolution sol;
  sol.epsilon = epsilon;
  sol.start = xs;
  sol.finish = xf;
  sol.time = time;
  // A e^T stays O(1) as T grows; carry it instead of A itself.
  std::array<double, 2> a_scaled{}, b{};
  for (int c = 0; c < 2; ++c) {
    a_scaled[c] = (xf[c] - xs[c] * em) / denom;
    b[c] = (xs[c] - xf[c] * em) / denom;
    sol.coef_growing[c] = a_scaled[c] * em;
    sol.coef_decaying[c] = b[c];
  }
  sol.energy = 2.0 * epsilon - 2.0 * em * dot2(a_scaled, b);
  sol.om_action = 0.5 * (dot2(xf, xf) - dot2(xs, xs)) - 2.0 * epsilon * time +
                  0.5 * denom * (dot2(a_scaled, a_scaled) + dot2(b, b));
  const double na = norm2(a_scaled), nb = norm2(b);
  sol.min_distance_sq = 2.0 * em * (na * nb + dot2(a_scaled, b));
  sol.turning_time = (na > 0.0 && nb > 0.0)
                         ? 0.5 * (time + std::log(nb) - std::log(na))
                         : std::numeric_limits<double>::quiet_NaN();
  return sol;
}

void quad_solution_sample(const QuadSolution& sol, int n_samples, std::vector<double>& t_out,
                          std::vector<double>& pos_out, std::vector<double>& vel_out) {
  if (n_samples < 2) fail(ErrorCode::invalid_argument, "quad_solution_sample: need >= 2 samples");
  t_out.resize(n_samples);
  pos_out.resize(2 * static_cast<size_t>(n_samples));
  vel_out.resize(2 * static_cast<size_t>(n_samples));
  const double T = sol.time;
  const double em = std::exp(-T);
  const double denom = 1.0 - em * em;
  std::array<double, 2> a_scaled{};  // A e^T, reconstructed from the endpoints
  for (int c = 0; c < 2; ++c) a_scaled[c] = (sol.finish[c] - sol.start[c] * em) / denom;
  for (int i = 0; i < n_samples; ++i) {
    const double t = T * i / (n_samples - 1);
    t_out[i] = t;
    const double grow = std::exp(t - T);
    const double decay = std::exp(-t);
    for (int c = 0; c < 2; ++c) {
      pos_out[2 * static_cast<size_t>(i) + c] =
          a_scaled[c] * grow + sol.coef_decaying[c] * decay;
      vel_out[2 * static_cast<size_t>(i) + c] =
          a_scaled[c] * grow - sol.coef_decaying[c] * decay;
    }
  }
}

Path quad_graph_limit(double xs, double xf, int n_segments) {
  if (!(0.0 < xs && xs < xf))
    fail(ErrorCode::invalid_argument, "quad_graph_limit: need 0 < xs < xf");
  if (n_segments < 2) fail(ErrorCode::invalid_argument, "quad_graph_limit: need >= 2 segments");
  const double total = xs + xf;
  Path p;
  p.dim = 2;
  p.nodes.resize(2 * static_cast<size_t>(n_segments + 1));
  for (int j = 0; j <= n_segments; ++j) {
    const double s = total * j / n_segments;
    p.nodes[2 * static_cast<size_t>(j)] = s <= xs ? xs - s : s - xs;
    p.nodes[2 * static_cast<size_t>(j) + 1] = 0.0;
  }
  return p;
}

std::pair<double, double> quad_fw_times(double xs, double xf) {
  if (!(0.0 < xs && xs < xf)) fail(ErrorCode::invalid_argument, "quad_fw_times: need 0 < xs < xf");
  const double ta = std::log(xf / xs);
  // f(T) = (xs e^T - xf)/(xf - xs e^-T), increasing; f(ta) = 0
  const auto f = [&](double T) { return (xs * std::exp(T) - xf) / (xf - xs * std::exp(-T)); };
  double lo = ta, hi = ta + 50.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * (1.0 + hi)) break;
  }
  return {ta, 0.5 * (lo + hi)};
}

QuadCase2 quad_case2_fw(double radius, double theta1, double theta2) {
  if (!(radius > 0.0)) fail(ErrorCode::invalid_argument, "quad_case2_fw: radius must be positive");
  const double d = theta2 - theta1;
  if (!(d > 0.0 && d < M_PI / 2.0 && theta1 > 0.0 && theta2 < M_PI / 2.0))
    fail(ErrorCode::invalid_argument, "quad_case2_fw: need 0 < theta1 < theta2 < pi/2");
  QuadCase2 out;
  out.time = std::acosh(1.0 / std::cos(d));
  out.action = 4.0 * radius * radius * std::sin(d);
  out.min_distance_sq = radius * radius * std::cos(d);
  return out;
}

MsCritical ms_critical_point(double epsilon) {
  if (epsilon < 0.0) fail(ErrorCode::invalid_argument, "ms_critical_point: epsilon must be nonnegative");
  MsCritical out;
  const double x2 = (2.0 + std::sqrt(1.0 + 24.0 * epsilon)) / 3.0;
  out.x_abs = std::sqrt(x2);
  const double bx = out.x_abs - out.x_abs * x2;  // x - x^3 at y = 0
  out.energy = 4.0 * epsilon * x2 - 0.5 * bx * bx;
  return out;
}

}  // namespace ompath
