#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "path.hpp"

using namespace ompath;

namespace {

Path path2(std::initializer_list<double> flat) {
  std::vector<double> v(flat);
  return make_path(v, 2);
}

double max_abs_diff(const Path& a, const Path& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.nodes.size(); ++i)
    worst = std::max(worst, std::abs(a.nodes[i] - b.nodes[i]));
  return worst;
}

double spacing_spread(const Path& p) {
  const auto seg = segment_lengths(p);
  double lo = seg[0], hi = seg[0], mean = 0.0;
  for (double s : seg) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    mean += s;
  }
  mean /= seg.size();
  return (hi - lo) / mean;
}

// random smooth-ish planar polyline
Path random_path(std::mt19937& rng, int n_segments) {
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  const double a1 = amp(rng), a2 = amp(rng), a3 = amp(rng);
  std::vector<double> nodes;
  for (int j = 0; j <= n_segments; ++j) {
    const double t = static_cast<double>(j) / n_segments;
    nodes.push_back(t * 2.0 + a1 * std::sin(M_PI * t));
    nodes.push_back(a2 * std::sin(2.0 * M_PI * t) + a3 * t * (1.0 - t));
  }
  return make_path(nodes, 2);
}

}  // namespace

TEST_CASE("linear path lays nodes on the chord") {
  std::vector<double> xs{0.0, 0.0}, xf{1.0, 0.0};
  const Path p = linear_path(xs, xf, 4);
  REQUIRE(p.n_segments() == 4);
  for (int j = 0; j <= 4; ++j) {
    CHECK(p.node(j)[0] == doctest::Approx(0.25 * j).epsilon(1e-15));
    CHECK(p.node(j)[1] == 0.0);
  }

  const Path collinear =
      linear_path(std::vector<double>{1.0, 0.0}, std::vector<double>{2.0, 0.0}, 192);
  CHECK(collinear.n_nodes() == 193);
  CHECK(spacing_spread(collinear) < 1e-12);

  // degenerate endpoints are representable; length-based operations flag them
  const Path degen = linear_path(xs, xs, 8);
  CHECK(path_length(degen) == 0.0);
  CHECK_THROWS_AS(reparametrize_equal_arclength(degen), Error);
}

TEST_CASE("waypoint path resamples the polyline at equal arclength") {
  std::vector<double> wp{1.0, 0.0, 0.0, 1.0, -1.0, 0.0};
  const Path p = waypoint_path(wp, 2, 4);
  const double leg = std::sqrt(2.0);
  CHECK(p.node(0)[0] == doctest::Approx(1.0));
  CHECK(p.node(1)[0] == doctest::Approx(0.5));
  CHECK(p.node(1)[1] == doctest::Approx(0.5));
  CHECK(p.node(2)[0] == doctest::Approx(0.0));
  CHECK(p.node(2)[1] == doctest::Approx(1.0));
  CHECK(p.node(3)[0] == doctest::Approx(-0.5));
  CHECK(p.node(4)[0] == doctest::Approx(-1.0));
  CHECK(path_length(p) == doctest::Approx(2.0 * leg).epsilon(1e-14));

  // two waypoints reduce to the linear construction
  std::vector<double> two{0.0, 0.0, 3.0, 4.0};
  const Path pw = waypoint_path(two, 2, 10);
  const Path pl = linear_path(std::span<const double>(two.data(), 2),
                              std::span<const double>(two.data() + 2, 2), 10);
  CHECK(max_abs_diff(pw, pl) < 1e-12);

  CHECK_THROWS_AS(waypoint_path(std::vector<double>{1.0, 1.0}, 2, 4), Error);
  std::vector<double> degen{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(waypoint_path(degen, 2, 4), Error);
}

TEST_CASE("waypoint path through a sampled semicircle is uniform") {
  std::vector<double> wp;
  for (int k = 0; k < 32; ++k) {
    const double th = M_PI * k / 31.0;
    wp.push_back(std::cos(th));
    wp.push_back(std::sin(th));
  }
  const Path p = waypoint_path(wp, 2, 24);

  // arclength positions along the source polyline are uniform to rounding;
  // chord lengths across source vertices are shorter by ~(turn angle)^2/8
  std::vector<double> cum{0.0};
  for (int k = 1; k < 32; ++k)
    cum.push_back(cum.back() + std::hypot(wp[2 * k] - wp[2 * k - 2], wp[2 * k + 1] - wp[2 * k - 1]));
  const auto arc_of = [&](std::span<const double> q) {
    double best = 1e300, arc = 0.0;
    for (int k = 0; k + 1 < 32; ++k) {
      const double ax = wp[2 * k], ay = wp[2 * k + 1];
      const double bx = wp[2 * k + 2], by = wp[2 * k + 3];
      const double ab2 = (bx - ax) * (bx - ax) + (by - ay) * (by - ay);
      double t = ((q[0] - ax) * (bx - ax) + (q[1] - ay) * (by - ay)) / ab2;
      t = std::clamp(t, 0.0, 1.0);
      const double dx = q[0] - (ax + t * (bx - ax)), dy = q[1] - (ay + t * (by - ay));
      const double d2 = dx * dx + dy * dy;
      if (d2 < best) {
        best = d2;
        arc = cum[k] + t * std::sqrt(ab2);
      }
    }
    return arc;
  };
  const double target = cum.back() / 24.0;
  for (int j = 1; j < p.n_nodes(); ++j) {
    const double step = arc_of(p.node(j)) - arc_of(p.node(j - 1));
    CHECK(std::abs(step - target) <= 1e-9 * target);
  }
  const double max_turn = M_PI / 31.0;
  CHECK(spacing_spread(p) < 2.0 * max_turn * max_turn / 8.0);
}

TEST_CASE("reparametrization on a line and a right angle") {
  // three collinear nodes at 0, 0.1, 1.0
  const Path line = path2({0.0, 0.0, 0.1, 0.0, 1.0, 0.0});
  const Path even = reparametrize_equal_arclength(line);
  CHECK(even.node(1)[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(even.node(0)[0] == 0.0);
  CHECK(even.node(2)[0] == 1.0);

  // right angle, corner node aligned with the target grid
  const Path corner = path2({0.0, 0.0, 1.0, 0.0, 1.0, 1.0});
  const Path c2 = reparametrize_equal_arclength(corner);
  CHECK(c2.node(1)[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c2.node(1)[1] == doctest::Approx(0.0).epsilon(1e-14));

  std::vector<double> corner4{0.0, 0.0, 1.0, 0.0, 1.0, 1.0};
  const Path c4 = waypoint_path(corner4, 2, 4);
  CHECK(c4.node(1)[0] == doctest::Approx(0.5));
  CHECK(c4.node(2)[0] == doctest::Approx(1.0));
  CHECK(c4.node(2)[1] == doctest::Approx(0.0));
  CHECK(c4.node(3)[1] == doctest::Approx(0.5));
  CHECK(path_length(c4) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("reparametrization is idempotent on equal-chord paths") {
  // random turtle walks with a constant step: segment chords are exactly
  // equal, so redistribution must return the same nodes
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> turn(-0.7, 0.7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 20 + trial;
    std::vector<double> nodes{0.0, 0.0};
    double heading = 0.0, x = 0.0, y = 0.0;
    for (int j = 0; j < n; ++j) {
      heading += turn(rng);
      x += std::cos(heading);
      y += std::sin(heading);
      nodes.push_back(x);
      nodes.push_back(y);
    }
    const Path p = make_path(nodes, 2);
    const Path q = reparametrize_equal_arclength(p);
    CHECK(max_abs_diff(p, q) < 1e-12);
    CHECK(std::abs(path_length(p) - path_length(q)) <= 1e-12 * path_length(p));
    CHECK(hausdorff_distance(p, q) < 1e-12);
  }
}

TEST_CASE("reparametrization stays on the source polyline") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const Path raw = random_path(rng, 40 + trial);
    const Path once = reparametrize_equal_arclength(raw);

    // resampling never leaves the source polyline, so length cannot grow
    CHECK(path_length(once) <= path_length(raw) * (1.0 + 1e-12));

    // every resampled node lies on the source polyline
    double off = 0.0;
    for (int j = 0; j < once.n_nodes(); ++j) {
      double best = 1e300;
      for (int k = 0; k + 1 < raw.n_nodes(); ++k) {
        const auto a = raw.node(k), b = raw.node(k + 1), q = once.node(j);
        double ab2 = 0.0, t = 0.0;
        for (int c = 0; c < 2; ++c) {
          ab2 += (b[c] - a[c]) * (b[c] - a[c]);
          t += (q[c] - a[c]) * (b[c] - a[c]);
        }
        t = ab2 > 0.0 ? std::clamp(t / ab2, 0.0, 1.0) : 0.0;
        double acc = 0.0;
        for (int c = 0; c < 2; ++c) {
          const double d = q[c] - (a[c] + t * (b[c] - a[c]));
          acc += d * d;
        }
        best = std::min(best, acc);
      }
      off = std::max(off, std::sqrt(best));
    }
    CHECK(off < 1e-12);

    // endpoints bit-identical
    CHECK(once.node(0)[0] == raw.node(0)[0]);
    CHECK(once.node(once.n_segments())[1] == raw.node(raw.n_segments())[1]);
  }
}

TEST_CASE("central differences on straight and curved paths") {
  const Path straight =
      linear_path(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0}, 10);
  const PathDerivatives d = central_differences(straight);
  for (int j = 0; j < 9; ++j) {
    CHECK(d.first[2 * j] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(d.first[2 * j + 1] == 0.0);
    CHECK(d.second[2 * j] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(d.second[2 * j + 1] == 0.0);
  }

  // affine in several dimensions: constant first, zero second differences
  std::vector<double> xs{1.0, 2.0, 3.0}, xf{-2.0, 0.5, 7.0};
  const Path affine = linear_path(xs, xf, 6);
  const PathDerivatives da = central_differences(affine);
  for (size_t i = 0; i < da.second.size(); ++i) CHECK(std::abs(da.second[i]) < 1e-9);
  for (int j = 0; j < 5; ++j)
    for (int c = 0; c < 3; ++c)
      CHECK(da.first[3 * j + c] == doctest::Approx(xf[c] - xs[c]).epsilon(1e-12));

  // minimal two-segment path has a single interior stencil
  const Path tiny = linear_path(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 1.0}, 2);
  const PathDerivatives dt = central_differences(tiny);
  CHECK(dt.first.size() == 2);
  CHECK(dt.second.size() == 2);
}

TEST_CASE("second differences track an analytic curve") {
  // phi(alpha) = (sin(pi alpha), 0) sampled uniformly in alpha; on this grid
  // D2 approximates the analytic second derivative at O(1/N^2)
  for (int n : {32, 64, 128}) {
    std::vector<double> nodes;
    for (int j = 0; j <= n; ++j) {
      const double a = static_cast<double>(j) / n;
      nodes.push_back(std::sin(M_PI * a));
      nodes.push_back(0.0);
    }
    const Path p = make_path(nodes, 2);
    const PathDerivatives d = central_differences(p);
    double worst = 0.0;
    for (int j = 1; j < n; ++j) {
      const double a = static_cast<double>(j) / n;
      const double exact = -M_PI * M_PI * std::sin(M_PI * a);
      worst = std::max(worst, std::abs(d.second[2 * (j - 1)] - exact));
    }
    CHECK(worst <= 2.0 * std::pow(M_PI, 4) / 12.0 / (n * n));
  }
}

TEST_CASE("hausdorff distance") {
  const Path a = linear_path(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0}, 4);
  CHECK(hausdorff_distance(a, a) == 0.0);

  const Path b = linear_path(std::vector<double>{0.0, 0.3}, std::vector<double>{1.0, 0.3}, 7);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.3).epsilon(1e-13));

  // a refinement of the same polyline is at distance ~0
  const Path fine = linear_path(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 0.0}, 111);
  CHECK(hausdorff_distance(a, fine) <= 1e-12);

  const Path c =
      linear_path(std::vector<double>{0.0, 0.0, 0.0}, std::vector<double>{1.0, 0.0, 0.0}, 4);
  CHECK_THROWS_AS(hausdorff_distance(a, c), Error);
}
