#pragma once

#include <array>
#include <utility>
#include <vector>

#include "path.hpp"

namespace ompath {

// Closed forms for the quadratic well V = |x|^2/2 in the plane and for the
// Maier-Stein critical point. Exponentials are evaluated in rescaled form so
// transition times up to ~700 stay finite.

struct QuadSolution {
  std::array<double, 2> coef_growing{};   // A in psi(t) = A e^t + B e^-t
  std::array<double, 2> coef_decaying{};  // B
  std::array<double, 2> start{};          // psi(0)
  std::array<double, 2> finish{};         // psi(T)
  double epsilon = 0.0;
  double time = 0.0;                      // T
  double energy = 0.0;                    // E(T) = 2 eps - 2 A.B
  double om_action = 0.0;                 // value of the OM functional at the minimizer
  double turning_time = 0.0;              // closest approach ln(|B|/|A|)/2; NaN when undefined
  double min_distance_sq = 0.0;           // 2|A||B| + 2 A.B
};

QuadSolution quad_solution(double epsilon, std::array<double, 2> xs, std::array<double, 2> xf,
                           double time);

// psi and dpsi/dt on a uniform grid of n_samples points spanning [0, T].
void quad_solution_sample(const QuadSolution& sol, int n_samples, std::vector<double>& t_out,
                          std::vector<double>& pos_out, std::vector<double>& vel_out);

// The T -> inf limit curve for endpoints 0 < xs < xf on the positive axis:
// down to the origin and back out, embedded in the plane with y = 0, corner
// at alpha = xs/(xs+xf).
Path quad_graph_limit(double xs, double xf, int n_segments);

// (T_a, T_b) with f(T) = B/A: f(T_a) = 0 in closed form, f(T_b) = 1 by
// bisection on [T_a, T_a + 50] (f is increasing).
std::pair<double, double> quad_fw_times(double xs, double xf);

struct QuadCase2 {
  double time = 0.0;             // argmin of the zero-noise action over T
  double action = 0.0;           // 4 R^2 sin(dtheta)
  double min_distance_sq = 0.0;  // R^2 cos(dtheta)
};

// Endpoints on one circle |x| = R at angles 0 < theta1 < theta2 < pi/2.
QuadCase2 quad_case2_fw(double radius, double theta1, double theta2);

struct MsCritical {
  double x_abs = 0.0;   // |x_c|, x_c^2 = (2 + sqrt(1+24 eps))/3
  double energy = 0.0;  // U(x_c, 0)
};

MsCritical ms_critical_point(double epsilon);

}  // namespace ompath
