#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ompath {

enum class ModelKind { gradient, non_gradient };

// Diffusion model dX = b(X) dt + sqrt(2*eps) dW reduced to the evaluators the
// path functionals need. Gradient systems have drift b = -grad V and path
// potential U = eps*lap V - |grad V|^2 / 2; general systems provide b, its
// Jacobian and U = -eps*div b - |b|^2 / 2 directly.
//
// Models are immutable after construction and safe to share across threads;
// every evaluator is a pure function of (parameters, x).
//
// Extension point: subclass Model and override the evaluators your system
// supports. Evaluators that make no sense for the system (e.g. potential() on
// a non-gradient drift) keep the base implementation, which reports an
// unsupported-capability error. grad_path_potential falls back to central
// finite differences of path_potential unless an analytic form is overridden.
class Model {
 public:
  virtual ~Model() = default;

  int dim() const noexcept { return dim_; }
  double epsilon() const noexcept { return epsilon_; }
  ModelKind kind() const noexcept { return kind_; }
  virtual const char* name() const noexcept = 0;

  // V(x); gradient kind only.
  virtual double potential(std::span<const double> x) const;
  virtual void grad_potential(std::span<const double> x, std::span<double> out) const;
  virtual double laplacian_potential(std::span<const double> x) const;

  // b(x); defaults to -grad V for gradient models.
  virtual void drift(std::span<const double> x, std::span<double> out) const;
  // (grad b)_{ij} = d b_i / d x_j, row-major d*d.
  virtual void drift_jacobian(std::span<const double> x, std::span<double> out) const;

  // U(x) = -eps*div b - |b|^2 / 2.
  virtual double path_potential(std::span<const double> x) const;
  virtual void grad_path_potential(std::span<const double> x, std::span<double> out) const;

  // True when grad_path_potential is a hand-derived expression rather than a
  // finite difference of path_potential.
  virtual bool analytic_path_gradient() const noexcept { return false; }

 protected:
  Model(int dim, double epsilon, ModelKind kind);
  void check_point(std::span<const double> x) const;
  void check_out(std::span<const double> out) const;

 private:
  int dim_ = 0;
  double epsilon_ = 0.0;
  ModelKind kind_ = ModelKind::gradient;
};

// Central finite difference of path_potential with step step_scale*(1+|x|_inf).
void fd_grad_path_potential(const Model& m, std::span<const double> x, std::span<double> out,
                            double step_scale = 1e-5);

// V(x) = |x|^2 / 2 in the plane. U = 2*eps - |x|^2 / 2, grad U = -x.
class QuadraticModel final : public Model {
 public:
  explicit QuadraticModel(double epsilon);
  const char* name() const noexcept override { return "quadratic"; }
  double potential(std::span<const double> x) const override;
  void grad_potential(std::span<const double> x, std::span<double> out) const override;
  double laplacian_potential(std::span<const double> x) const override;
  void grad_path_potential(std::span<const double> x, std::span<double> out) const override;
  bool analytic_path_gradient() const noexcept override { return true; }
};

// Planar double-well with a direct channel along the x axis and a circular
// channel along the unit circle. Confining walls at |x| = 1.5 and below
// y = -0.25; gamma sets the strength of the lower wall and balances the two
// saddle energies near gamma = 12.16.
class TwoChannelModel final : public Model {
 public:
  explicit TwoChannelModel(double epsilon, double gamma = 12.16);
  const char* name() const noexcept override { return "two-channel"; }
  double gamma() const noexcept { return gamma_; }
  double potential(std::span<const double> x) const override;
  void grad_potential(std::span<const double> x, std::span<double> out) const override;
  double laplacian_potential(std::span<const double> x) const override;

 private:
  double gamma_;
};

// Cluster of n identical Lennard-Jones atoms in the plane, configuration
// x = (x1,y1,...,xn,yn). Pair energy 4*delta*((sigma/r)^12 - (sigma/r)^6).
// Evaluation requires all pair distances above 1e-8*sigma.
class LJClusterModel final : public Model {
 public:
  explicit LJClusterModel(double epsilon, int n_atoms = 7, double delta = 1.0, double sigma = 1.0);
  const char* name() const noexcept override { return "lj-cluster"; }
  int n_atoms() const noexcept { return n_atoms_; }
  double delta() const noexcept { return delta_; }
  double sigma() const noexcept { return sigma_; }
  double potential(std::span<const double> x) const override;
  void grad_potential(std::span<const double> x, std::span<double> out) const override;
  double laplacian_potential(std::span<const double> x) const override;

 private:
  int n_atoms_;
  double delta_;
  double sigma_;
};

// Planar non-gradient drift b = (x - x^3 - beta*x*y^2, -(1+x^2)*y) with
// stable fixed points at (+-1, 0). Gradient type only at beta = 1.
class MaierSteinModel final : public Model {
 public:
  MaierSteinModel(double epsilon, double beta);
  const char* name() const noexcept override { return "maier-stein"; }
  double beta() const noexcept { return beta_; }
  void drift(std::span<const double> x, std::span<double> out) const override;
  void drift_jacobian(std::span<const double> x, std::span<double> out) const override;
  double path_potential(std::span<const double> x) const override;
  void grad_path_potential(std::span<const double> x, std::span<double> out) const override;
  bool analytic_path_gradient() const noexcept override { return true; }

 private:
  double beta_;
};

struct DescendOptions {
  double grad_tol = 1e-12;  // stop when |grad V|_inf falls below this
  long max_iters = 200000;
  double initial_step = 1e-3;
};

// Gradient descent with backtracking on V; used to polish endpoint
// configurations. Returns the relaxed point.
std::vector<double> descend_potential(const Model& m, std::span<const double> x0,
                                      const DescendOptions& opts = {});

}  // namespace ompath
