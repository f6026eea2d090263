#pragma once

#include <span>
#include <vector>

#include "errors.hpp"

namespace ompath {

// Discrete curve: n_segments()+1 nodes in R^dim, node j approximating the
// curve at alpha = j/N. Operations treat paths as immutable values and
// allocate fresh ones.
struct Path {
  int dim = 0;
  std::vector<double> nodes;  // (N+1)*dim, node-major

  int n_segments() const noexcept { return static_cast<int>(nodes.size()) / dim - 1; }
  int n_nodes() const noexcept { return static_cast<int>(nodes.size()) / dim; }
  std::span<const double> node(int j) const { return {nodes.data() + static_cast<size_t>(j) * dim, static_cast<size_t>(dim)}; }
  std::span<double> node(int j) { return {nodes.data() + static_cast<size_t>(j) * dim, static_cast<size_t>(dim)}; }
};

Path make_path(std::span<const double> nodes, int dim);

// nodes[j] = xs + (j/N) * (xf - xs). A degenerate xs == xf is permitted here;
// length-dependent operations reject it later.
Path linear_path(std::span<const double> xs, std::span<const double> xf, int n_segments);

// Polyline through the waypoints resampled to N+1 equal-arclength nodes.
Path waypoint_path(std::span<const double> waypoints, int dim, int n_segments);

// Redistributes nodes at equal arclength along the input polyline using
// linear interpolation; endpoints are kept bit-identical. Cumulative lengths
// L(j), targets l(j) = j*L(N)/N; ties at segment boundaries resolve to the
// left segment.
Path reparametrize_equal_arclength(const Path& path);

double path_length(const Path& path);
std::vector<double> segment_lengths(const Path& path);

// Central differences at interior nodes with h = 1/N:
//   first[j-1]  = (node[j+1] - node[j-1]) * N / 2
//   second[j-1] = (node[j+1] - 2 node[j] + node[j-1]) * N^2
struct PathDerivatives {
  std::vector<double> first;   // (N-1)*dim
  std::vector<double> second;  // (N-1)*dim
};
PathDerivatives central_differences(const Path& path);

// |phi'| at every node: central differences in the interior, one-sided at the
// endpoints.
std::vector<double> derivative_magnitudes(const Path& path);
// phi' at every node, same stencils.
std::vector<double> derivative_vectors(const Path& path);

// Symmetric max-min node-to-segment distance between the two polylines.
double hausdorff_distance(const Path& a, const Path& b);

}  // namespace ompath
