#include "path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ompath {

namespace {

double node_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t c = 0; c < a.size(); ++c) {
    const double d = a[c] - b[c];
    s += d * d;
  }
  return std::sqrt(s);
}

// Equal-arclength resampling of an arbitrary source polyline.
Path resample_polyline(std::span<const double> src, int dim, int n_segments) {
  const int m = static_cast<int>(src.size()) / dim;  // source node count
  std::vector<double> cum(m, 0.0);
  for (int i = 1; i < m; ++i) {
    double s = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double d = src[static_cast<size_t>(i) * dim + c] - src[static_cast<size_t>(i - 1) * dim + c];
      s += d * d;
    }
    cum[i] = cum[i - 1] + std::sqrt(s);
  }
  const double total = cum[m - 1];
  if (!(total > 0.0)) fail(ErrorCode::domain, "zero-length path");

  Path out;
  out.dim = dim;
  out.nodes.resize(static_cast<size_t>(n_segments + 1) * dim);
  // endpoints unchanged
  std::copy_n(src.begin(), dim, out.nodes.begin());
  std::copy_n(src.end() - dim, dim, out.nodes.end() - dim);

  int i = 0;
  for (int j = 1; j < n_segments; ++j) {
    const double target = total * j / n_segments;
    while (cum[i + 1] < target) ++i;
    const double seg = cum[i + 1] - cum[i];  // > 0 since cum[i] < target <= cum[i+1]
    const double t = (target - cum[i]) / seg;
    const double* a = src.data() + static_cast<size_t>(i) * dim;
    const double* b = a + dim;
    double* o = out.nodes.data() + static_cast<size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) o[c] = a[c] + t * (b[c] - a[c]);
  }
  return out;
}

}  // namespace

Path make_path(std::span<const double> nodes, int dim) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "path dimension must be positive");
  if (nodes.size() % dim != 0) fail(ErrorCode::invalid_argument, "node data size not a multiple of dim");
  const int n = static_cast<int>(nodes.size()) / dim;
  if (n < 3) fail(ErrorCode::invalid_argument, "path needs at least two segments");
  Path p;
  p.dim = dim;
  p.nodes.assign(nodes.begin(), nodes.end());
  return p;
}

Path linear_path(std::span<const double> xs, std::span<const double> xf, int n_segments) {
  if (xs.size() != xf.size() || xs.empty())
    fail(ErrorCode::invalid_argument, "endpoint dimensions differ");
  if (n_segments < 2) fail(ErrorCode::invalid_argument, "need at least two segments");
  const int dim = static_cast<int>(xs.size());
  Path p;
  p.dim = dim;
  p.nodes.resize(static_cast<size_t>(n_segments + 1) * dim);
  for (int j = 0; j <= n_segments; ++j) {
    const double t = static_cast<double>(j) / n_segments;
    double* o = p.nodes.data() + static_cast<size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) o[c] = xs[c] + t * (xf[c] - xs[c]);
  }
  // keep endpoints bit-identical to the inputs
  std::copy(xs.begin(), xs.end(), p.nodes.begin());
  std::copy(xf.begin(), xf.end(), p.nodes.end() - dim);
  return p;
}

Path waypoint_path(std::span<const double> waypoints, int dim, int n_segments) {
  if (dim < 1) fail(ErrorCode::invalid_argument, "path dimension must be positive");
  if (waypoints.size() % dim != 0)
    fail(ErrorCode::invalid_argument, "waypoint data size not a multiple of dim");
  if (waypoints.size() / dim < 2) fail(ErrorCode::invalid_argument, "need at least two waypoints");
  if (n_segments < 2) fail(ErrorCode::invalid_argument, "need at least two segments");
  return resample_polyline(waypoints, dim, n_segments);
}

Path reparametrize_equal_arclength(const Path& path) {
  return resample_polyline(path.nodes, path.dim, path.n_segments());
}

double path_length(const Path& path) {
  double total = 0.0;
  for (int j = 1; j < path.n_nodes(); ++j) total += node_dist(path.node(j), path.node(j - 1));
  return total;
}

std::vector<double> segment_lengths(const Path& path) {
  std::vector<double> out(path.n_segments());
  for (int j = 1; j < path.n_nodes(); ++j) out[j - 1] = node_dist(path.node(j), path.node(j - 1));
  return out;
}

PathDerivatives central_differences(const Path& path) {
  const int n = path.n_segments();
  const int dim = path.dim;
  const double N = n;
  PathDerivatives d;
  d.first.resize(static_cast<size_t>(n - 1) * dim);
  d.second.resize(static_cast<size_t>(n - 1) * dim);
  for (int j = 1; j < n; ++j) {
    auto prev = path.node(j - 1);
    auto cur = path.node(j);
    auto next = path.node(j + 1);
    double* f = d.first.data() + static_cast<size_t>(j - 1) * dim;
    double* s = d.second.data() + static_cast<size_t>(j - 1) * dim;
    for (int c = 0; c < dim; ++c) {
      f[c] = (next[c] - prev[c]) * N * 0.5;
      s[c] = (next[c] - 2.0 * cur[c] + prev[c]) * N * N;
    }
  }
  return d;
}

std::vector<double> derivative_vectors(const Path& path) {
  const int n = path.n_segments();
  const int dim = path.dim;
  const double N = n;
  std::vector<double> out(static_cast<size_t>(n + 1) * dim);
  for (int c = 0; c < dim; ++c) {
    out[c] = (path.node(1)[c] - path.node(0)[c]) * N;
    out[static_cast<size_t>(n) * dim + c] = (path.node(n)[c] - path.node(n - 1)[c]) * N;
  }
  for (int j = 1; j < n; ++j) {
    double* o = out.data() + static_cast<size_t>(j) * dim;
    auto prev = path.node(j - 1);
    auto next = path.node(j + 1);
    for (int c = 0; c < dim; ++c) o[c] = (next[c] - prev[c]) * N * 0.5;
  }
  return out;
}

std::vector<double> derivative_magnitudes(const Path& path) {
  const std::vector<double> vecs = derivative_vectors(path);
  const int dim = path.dim;
  std::vector<double> out(path.n_nodes());
  for (int j = 0; j < path.n_nodes(); ++j) {
    double s = 0.0;
    const double* v = vecs.data() + static_cast<size_t>(j) * dim;
    for (int c = 0; c < dim; ++c) s += v[c] * v[c];
    out[j] = std::sqrt(s);
  }
  return out;
}

namespace {

double point_segment_dist2(std::span<const double> p, std::span<const double> a,
                           std::span<const double> b) {
  double ab2 = 0.0, ap_ab = 0.0;
  for (size_t c = 0; c < p.size(); ++c) {
    const double d = b[c] - a[c];
    ab2 += d * d;
    ap_ab += (p[c] - a[c]) * d;
  }
  double t = ab2 > 0.0 ? ap_ab / ab2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double s = 0.0;
  for (size_t c = 0; c < p.size(); ++c) {
    const double q = a[c] + t * (b[c] - a[c]);
    const double d = p[c] - q;
    s += d * d;
  }
  return s;
}

double directed_hausdorff2(const Path& from, const Path& to) {
  double worst = 0.0;
  for (int i = 0; i < from.n_nodes(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j + 1 < to.n_nodes(); ++j) {
      best = std::min(best, point_segment_dist2(from.node(i), to.node(j), to.node(j + 1)));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double hausdorff_distance(const Path& a, const Path& b) {
  if (a.dim != b.dim) fail(ErrorCode::invalid_argument, "hausdorff: dimension mismatch");
  return std::sqrt(std::max(directed_hausdorff2(a, b), directed_hausdorff2(b, a)));
}

}  // namespace ompath
