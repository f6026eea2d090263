#pragma once

#include <vector>

#include "model.hpp"
#include "path.hpp"

namespace ompath {

// Everything here integrates over alpha in [0,1] with the composite trapezoid
// rule on the node grid, using the same finite differences as the solver.
// Feasibility of an energy level E uses the slack tol_E = 1e-12*(1+|E|).

struct ActionReport {
  double energy = 0.0;            // node-max of U along the path
  double geometric_action = 0.0;  // S_E at that energy
  double fw_geometric_action = 0.0;  // E = 0 functional; +inf when U > 0 somewhere
  double implied_time = 0.0;      // +inf when the path attains U = E
  double om_action = 0.0;         // S_E - E*T; -inf when T = +inf and E > 0
};

struct LambdaProfile {
  std::vector<double> values;        // one per node, >= 0
  std::vector<int> critical_indices; // strict local minima, plateaus merged
};

// Integral of sqrt(2E-2U)|phi'| (gradient models) or
// sqrt(2E-2U)|phi'| - b.phi' (non-gradient models).
// Returns +inf when some node has U > E + tol_E.
double geometric_action(const Model& m, const Path& path, double energy);

// Zero-energy functional sqrt(-2U)|phi'| - b.phi' including the drift work
// term for both model kinds; +inf when U > tol_E somewhere on the path.
double fw_action(const Model& m, const Path& path);

// Integral of |phi'|/sqrt(2E-2U). Returns +inf as soon as a node has
// 2E-2U <= tol_E; reports an infeasible-energy error when U > E + tol_E.
double implied_transition_time(const Model& m, const Path& path, double energy);

// lambda(alpha) = sqrt(max(2E-2U,0))/|phi'| per node (0 where the kinetic
// term vanishes). Local minima are found by strict comparison with plateau
// runs merged to their middle index; values within 1e-12 relative belong to
// one plateau. Endpoint minima are one-sided; a profile that is one single
// plateau has no minima.
LambdaProfile lambda_profile(const Model& m, const Path& path, double energy);

// Assembles the report at E = node-max of U. A zero-length path yields zero
// actions and zero time.
ActionReport action_report(const Model& m, const Path& path);

}  // namespace ompath
