#include "model.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace ompath {

Model::Model(int dim, double epsilon, ModelKind kind) : dim_(dim), epsilon_(epsilon), kind_(kind) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "model dimension must be positive");
  if (epsilon < 0.0) fail(ErrorCode::invalid_argument, "epsilon must be nonnegative");
}

void Model::check_point(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorCode::invalid_argument, "point dimension does not match model dimension");
}

void Model::check_out(std::span<const double> out) const {
  if (static_cast<int>(out.size()) != dim_)
    fail(ErrorCode::invalid_argument, "output dimension does not match model dimension");
}

double Model::potential(std::span<const double>) const {
  fail(ErrorCode::unsupported, std::string(name()) + ": potential not available");
}

void Model::grad_potential(std::span<const double>, std::span<double>) const {
  fail(ErrorCode::unsupported, std::string(name()) + ": grad_potential not available");
}

double Model::laplacian_potential(std::span<const double>) const {
  fail(ErrorCode::unsupported, std::string(name()) + ": laplacian_potential not available");
}

void Model::drift(std::span<const double> x, std::span<double> out) const {
  if (kind_ != ModelKind::gradient)
    fail(ErrorCode::unsupported, std::string(name()) + ": drift not available");
  grad_potential(x, out);
  for (double& v : out) v = -v;
}

void Model::drift_jacobian(std::span<const double>, std::span<double>) const {
  fail(ErrorCode::unsupported, std::string(name()) + ": drift_jacobian not available");
}

double Model::path_potential(std::span<const double> x) const {
  if (kind_ != ModelKind::gradient)
    fail(ErrorCode::unsupported, std::string(name()) + ": path_potential not available");
  check_point(x);
  thread_local std::vector<double> grad;
  grad.resize(x.size());
  grad_potential(x, grad);
  double g2 = 0.0;
  for (double v : grad) g2 += v * v;
  return epsilon() * laplacian_potential(x) - 0.5 * g2;
}

void Model::grad_path_potential(std::span<const double> x, std::span<double> out) const {
  fd_grad_path_potential(*this, x, out);
}

void fd_grad_path_potential(const Model& m, std::span<const double> x, std::span<double> out,
                            double step_scale) {
  if (x.size() != out.size())
    fail(ErrorCode::invalid_argument, "finite difference: size mismatch");
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  const double h = step_scale * (1.0 + xmax);
  thread_local std::vector<double> xp;
  xp.assign(x.begin(), x.end());
  for (size_t i = 0; i < x.size(); ++i) {
    const double xi = xp[i];
    xp[i] = xi + h;
    const double up = m.path_potential(xp);
    xp[i] = xi - h;
    const double um = m.path_potential(xp);
    xp[i] = xi;
    out[i] = (up - um) / (2.0 * h);
  }
}

// ---------------------------------------------------------------------------
// Quadratic

QuadraticModel::QuadraticModel(double epsilon) : Model(2, epsilon, ModelKind::gradient) {}

double QuadraticModel::potential(std::span<const double> x) const {
  check_point(x);
  return 0.5 * (x[0] * x[0] + x[1] * x[1]);
}

void QuadraticModel::grad_potential(std::span<const double> x, std::span<double> out) const {
  check_point(x);
  check_out(out);
  out[0] = x[0];
  out[1] = x[1];
}

double QuadraticModel::laplacian_potential(std::span<const double> x) const {
  check_point(x);
  return 2.0;
}

void QuadraticModel::grad_path_potential(std::span<const double> x, std::span<double> out) const {
  check_point(x);
  check_out(out);
  out[0] = -x[0];
  out[1] = -x[1];
}

// ---------------------------------------------------------------------------
// Two-channel

TwoChannelModel::TwoChannelModel(double epsilon, double gamma)
    : Model(2, epsilon, ModelKind::gradient), gamma_(gamma) {
  if (gamma <= 0.0) fail(ErrorCode::invalid_argument, "two-channel: gamma must be positive");
}

double TwoChannelModel::potential(std::span<const double> p) const {
  check_point(p);
  const double x = p[0], y = p[1];
  const double q = x * x + y * y - 1.0;
  const double g1 = std::exp(-4.0 * ((x - 1.0) * (x - 1.0) + y * y));
  const double g2 = std::exp(-4.0 * ((x + 1.0) * (x + 1.0) + y * y));
  const double wr = std::exp(8.0 * (x - 1.5));
  const double wl = std::exp(-8.0 * (x + 1.5));
  const double wy = std::exp(-gamma_ * (y + 0.25));
  const double ridge = 0.2 * std::exp(-8.0 * x * x);
  return 4.0 * q * q * y * y - g1 - g2 + wr + wl + wy + ridge;
}

void TwoChannelModel::grad_potential(std::span<const double> p, std::span<double> out) const {
  check_point(p);
  check_out(out);
  const double x = p[0], y = p[1];
  const double q = x * x + y * y - 1.0;
  const double g1 = std::exp(-4.0 * ((x - 1.0) * (x - 1.0) + y * y));
  const double g2 = std::exp(-4.0 * ((x + 1.0) * (x + 1.0) + y * y));
  const double wr = std::exp(8.0 * (x - 1.5));
  const double wl = std::exp(-8.0 * (x + 1.5));
  const double wy = std::exp(-gamma_ * (y + 0.25));
  const double ridge = 0.2 * std::exp(-8.0 * x * x);
  out[0] = 16.0 * x * q * y * y + 8.0 * (x - 1.0) * g1 + 8.0 * (x + 1.0) * g2 + 8.0 * wr -
           8.0 * wl - 16.0 * x * ridge;
  out[1] = 16.0 * q * y * y * y + 8.0 * q * q * y + 8.0 * y * g1 + 8.0 * y * g2 - gamma_ * wy;
}

double TwoChannelModel::laplacian_potential(std::span<const double> p) const {
  check_point(p);
  const double x = p[0], y = p[1];
  const double q = x * x + y * y - 1.0;
  const double r1 = (x - 1.0) * (x - 1.0) + y * y;
  const double r2 = (x + 1.0) * (x + 1.0) + y * y;
  const double g1 = std::exp(-4.0 * r1);
  const double g2 = std::exp(-4.0 * r2);
  const double wr = std::exp(8.0 * (x - 1.5));
  const double wl = std::exp(-8.0 * (x + 1.5));
  const double wy = std::exp(-gamma_ * (y + 0.25));
  const double ridge = 0.2 * std::exp(-8.0 * x * x);
  const double ring = 96.0 * q * y * y + 32.0 * x * x * y * y + 32.0 * y * y * y * y + 8.0 * q * q;
  const double wells = (16.0 - 64.0 * r1) * g1 + (16.0 - 64.0 * r2) * g2;
  return ring + wells + 64.0 * wr + 64.0 * wl + gamma_ * gamma_ * wy +
         (256.0 * x * x - 16.0) * ridge;
}

// ---------------------------------------------------------------------------
// Lennard-Jones cluster

LJClusterModel::LJClusterModel(double epsilon, int n_atoms, double delta, double sigma)
    : Model(2 * n_atoms, epsilon, ModelKind::gradient),
      n_atoms_(n_atoms),
      delta_(delta),
      sigma_(sigma) {
  if (n_atoms < 2) fail(ErrorCode::invalid_argument, "lj-cluster: need at least two atoms");
  if (delta <= 0.0 || sigma <= 0.0)
    fail(ErrorCode::invalid_argument, "lj-cluster: delta and sigma must be positive");
}

namespace {

[[noreturn]] void lj_overlap(int i, int j) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "lj-cluster: atoms %d and %d closer than 1e-8*sigma", i, j);
  fail(ErrorCode::domain, buf);
}

}  // namespace

double LJClusterModel::potential(std::span<const double> x) const {
  check_point(x);
  const double s2 = sigma_ * sigma_;
  const double rmin2 = 1e-16 * s2;
  double v = 0.0;
  for (int i = 0; i < n_atoms_; ++i) {
    for (int j = i + 1; j < n_atoms_; ++j) {
      const double dx = x[2 * i] - x[2 * j];
      const double dy = x[2 * i + 1] - x[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      if (r2 < rmin2) lj_overlap(i, j);
      const double inv2 = s2 / r2;
      const double inv6 = inv2 * inv2 * inv2;
      v += 4.0 * delta_ * (inv6 * inv6 - inv6);
    }
  }
  return v;
}

void LJClusterModel::grad_potential(std::span<const double> x, std::span<double> out) const {
  check_point(x);
  check_out(out);
  const double s2 = sigma_ * sigma_;
  const double rmin2 = 1e-16 * s2;
  for (double& v : out) v = 0.0;
  for (int i = 0; i < n_atoms_; ++i) {
    for (int j = i + 1; j < n_atoms_; ++j) {
      const double dx = x[2 * i] - x[2 * j];
      const double dy = x[2 * i + 1] - x[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      if (r2 < rmin2) lj_overlap(i, j);
      const double inv2 = s2 / r2;
      const double inv6 = inv2 * inv2 * inv2;
      // dV/dr / r = 24*delta*(inv6 - 2*inv12)/r^2
      const double coef = 24.0 * delta_ * (inv6 - 2.0 * inv6 * inv6) / r2;
      out[2 * i] += coef * dx;
      out[2 * i + 1] += coef * dy;
      out[2 * j] -= coef * dx;
      out[2 * j + 1] -= coef * dy;
    }
  }
}

double LJClusterModel::laplacian_potential(std::span<const double> x) const {
  check_point(x);
  const double s2 = sigma_ * sigma_;
  const double rmin2 = 1e-16 * s2;
  double lap = 0.0;
  // Each pair term f(r) contributes 2*(f'' + f'/r) in two planar coordinates.
  for (int i = 0; i < n_atoms_; ++i) {
    for (int j = i + 1; j < n_atoms_; ++j) {
      const double dx = x[2 * i] - x[2 * j];
      const double dy = x[2 * i + 1] - x[2 * j + 1];
      const double r2 = dx * dx + dy * dy;
      if (r2 < rmin2) lj_overlap(i, j);
      const double inv2 = s2 / r2;
      const double inv6 = inv2 * inv2 * inv2;
      const double inv12 = inv6 * inv6;
      lap += delta_ * (1152.0 * inv12 - 288.0 * inv6) / r2;
    }
  }
  return lap;
}

// ---------------------------------------------------------------------------
// Maier-Stein

MaierSteinModel::MaierSteinModel(double epsilon, double beta)
    : Model(2, epsilon, ModelKind::non_gradient), beta_(beta) {
  if (beta <= 0.0) fail(ErrorCode::invalid_argument, "maier-stein: beta must be positive");
}

void MaierSteinModel::drift(std::span<const double> p, std::span<double> out) const {
  check_point(p);
  check_out(out);
  const double x = p[0], y = p[1];
  out[0] = x - x * x * x - beta_ * x * y * y;
  out[1] = -(1.0 + x * x) * y;
}

void MaierSteinModel::drift_jacobian(std::span<const double> p, std::span<double> out) const {
  check_point(p);
  if (out.size() != 4) fail(ErrorCode::invalid_argument, "maier-stein: jacobian needs 4 entries");
  const double x = p[0], y = p[1];
  out[0] = 1.0 - 3.0 * x * x - beta_ * y * y;
  out[1] = -2.0 * beta_ * x * y;
  out[2] = -2.0 * x * y;
  out[3] = -(1.0 + x * x);
}

double MaierSteinModel::path_potential(std::span<const double> p) const {
  check_point(p);
  const double x = p[0], y = p[1];
  const double bx = x - x * x * x - beta_ * x * y * y;
  const double by = (1.0 + x * x) * y;
  return 4.0 * epsilon() * x * x + epsilon() * beta_ * y * y - 0.5 * (bx * bx + by * by);
}

void MaierSteinModel::grad_path_potential(std::span<const double> p, std::span<double> out) const {
  check_point(p);
  check_out(out);
  const double x = p[0], y = p[1];
  const double bx = x - x * x * x - beta_ * x * y * y;
  out[0] = 8.0 * epsilon() * x - bx * (1.0 - 3.0 * x * x - beta_ * y * y) -
           2.0 * x * y * y * (1.0 + x * x);
  out[1] = 2.0 * epsilon() * beta_ * y + 2.0 * beta_ * x * y * bx -
           (1.0 + x * x) * (1.0 + x * x) * y;
}

// ---------------------------------------------------------------------------

std::vector<double> descend_potential(const Model& m, std::span<const double> x0,
                                      const DescendOptions& opts) {
  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> g(x.size()), gprev(x.size()), trial(x.size()), xprev(x.size());
  double v = m.potential(x);
  m.grad_potential(x, g);
  double eta = opts.initial_step;
  for (long it = 0; it < opts.max_iters; ++it) {
    double gmax = 0.0;
    for (double c : g) gmax = std::max(gmax, std::abs(c));
    if (gmax < opts.grad_tol || !std::isfinite(gmax)) break;
    for (size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - eta * g[i];
    double vt;
    try {
      vt = m.potential(trial);
    } catch (const Error&) {
      vt = std::numeric_limits<double>::infinity();
    }
    // allow rounding-level non-decrease so the gradient keeps contracting
    // past the floor of representable V-differences
    if (!std::isfinite(vt) || vt > v + 1e-10 * (1.0 + std::abs(v))) {
      eta *= 0.5;
      if (eta < 1e-18) break;
      continue;
    }
    xprev.swap(x);
    x.swap(trial);
    gprev.swap(g);
    v = vt;
    m.grad_potential(x, g);
    // Barzilai-Borwein step estimate for the next move
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double sx = x[i] - xprev[i];
      const double sy = g[i] - gprev[i];
      num += sx * sy;
      den += sy * sy;
    }
    if (std::isfinite(num) && std::isfinite(den) && num > 0.0 && den > 0.0)
      eta = std::min(num / den, 1e3);
    else
      eta *= 1.5;
  }
  return x;
}

}  // namespace ompath
