#pragma once

#include <functional>
#include <string>
#include <vector>

#include "action.hpp"
#include "model.hpp"
#include "path.hpp"

namespace ompath {

enum class Scheme { explicit_euler, semi_implicit };
enum class SolveStatus { converged, max_iters, diverged };

struct SolverConfig {
  double ds = 0.01;       // relaxation step
  double tol = 1e-6;      // stop when max|phi^{n+1}-phi^n|/ds < tol
  long max_iters = 100000;
  Scheme scheme = Scheme::semi_implicit;
  long record_every = 0;  // 0: every step up to 1000 iterations, then every 10
  double divergence_radius = 1e3;
  double divergence_energy = 1e6;
};

struct IterationTrace {
  std::vector<long> steps;        // recorded iteration indices, starting at 0
  std::vector<double> energies;   // E_n = node-max of U after n steps
  std::vector<double> residuals;  // max|delta|/ds over nodes and coordinates; +inf at step 0
  SolveStatus status = SolveStatus::max_iters;
  long iterations_run = 0;
  Path final_path;
  std::string message;
};

struct StepResult {
  Path path;
  double ds_used = 0.0;  // the explicit scheme may shrink ds for stability
};

// One relaxation sweep at the given energy: interior update
//   phi~_j = phi_j + ds*[ 2K_j D2phi_j + |Dphi_j|^2 gU_j - (gU_j . Dphi_j) Dphi_j ]
// with K_j = max(energy - U_j, 0), plus ds*sqrt(2K_j)*(gradb^T - gradb) Dphi_j
// for non-gradient models, endpoints pinned, followed by equal-arclength
// reparametrization. The explicit step caps ds at h^2/(4 max K) for
// stability; the semi-implicit step treats the 2K D2 term at the new level by
// solving one tridiagonal system per coordinate.
StepResult egma_step_explicit(const Model& m, const Path& path, double energy,
                              const SolverConfig& cfg);
StepResult egma_step_semi_implicit(const Model& m, const Path& path, double energy,
                                   const SolverConfig& cfg);
StepResult egma_step(const Model& m, const Path& path, double energy, const SolverConfig& cfg);

// Max norm over interior nodes and coordinates of the stationarity residual
//   2K_j D2phi_j + |Dphi_j|^2 gU_j - (gU_j . Dphi_j) Dphi_j (+ rotation term)
// with K_j = max(energy - U_j, 0).
double discrete_el_residual(const Model& m, const Path& path, double energy);

// Called on every recorded iteration; return false to stop the run early
// (the run then reports max_iters with an explanatory message).
using IterObserver = std::function<bool(long iter, double energy, double residual, const Path&)>;

// Full energy-climbing relaxation: the energy is recomputed as the node-max
// of U before every step, the path is reparametrized every iteration, and the
// run stops on the residual tolerance, iteration budget, or divergence (any
// non-finite node, node norm above divergence_radius, or energy above
// divergence_energy).
IterationTrace egma_run(const Model& m, const Path& initial, const SolverConfig& cfg,
                        const IterObserver& observer = {});

}  // namespace ompath
