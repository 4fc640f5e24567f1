#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "alex/delaunay.hpp"
#include "alex/hull.hpp"
#include "alex/solver.hpp"

using namespace alex;

namespace {

// Flat "pillow": a unit square split by a diagonal, mirrored front and back.
// diag = 0 puts the diagonal between vertices 0 and 2, diag = 1 between 1 and 3.
Triangulation square_pillow(int diag) {
  double s2 = std::sqrt(2.0);
  std::vector<Triangle> tris;
  std::vector<int> glue;
  if (diag == 0) {
    tris = {
        {{0, 1, 2}, {1, 1, s2}},
        {{0, 2, 3}, {s2, 1, 1}},
        {{1, 0, 2}, {1, s2, 1}},
        {{3, 2, 0}, {1, s2, 1}},
    };
    glue = {6, 8, 3, 2, 9, 11, 0, 10, 1, 4, 7, 5};
  } else {
    tris = {
        {{1, 2, 3}, {1, 1, s2}},
        {{1, 3, 0}, {s2, 1, 1}},
        {{2, 1, 3}, {1, s2, 1}},
        {{0, 3, 1}, {1, s2, 1}},
    };
    glue = {6, 8, 3, 2, 9, 11, 0, 10, 1, 4, 7, 5};
  }
  Triangulation T;
  T.complex = SurfaceComplex(4, tris, glue);
  T.weights.assign(4, 0.0);
  T.side_origin.assign(12, EdgeOrigin::Voronoi);
  return T;
}

std::multiset<std::set<int>> triangle_sets(const SurfaceComplex& m) {
  std::multiset<std::set<int>> out;
  for (int t = 0; t < m.triangle_count(); ++t) {
    out.insert(std::set<int>(m.tri(t).v.begin(), m.tri(t).v.end()));
  }
  return out;
}

std::multiset<std::pair<std::pair<int, int>, long long>> edge_multiset(
    const SurfaceComplex& m) {
  std::multiset<std::pair<std::pair<int, int>, long long>> out;
  for (int ds : m.edge_reps()) {
    int a = m.side_from(ds), b = m.side_to(ds);
    long long q = std::llround(m.side_length(ds) * 1e9);
    out.insert({{std::min(a, b), std::max(a, b)}, q});
  }
  return out;
}

} // namespace

TEST_CASE("triangle center and power of the equilateral triangle") {
  auto tp = triangle_center_power({1, 1, 1}, {0, 0, 0});
  CHECK(tp.power == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tp.center.x == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(tp.center.y == doctest::Approx(0.5 / std::sqrt(3.0)).epsilon(1e-12));

  auto tp2 = triangle_center_power({1, 1, 1}, {3.0 / 8, 3.0 / 8, 3.0 / 8});
  CHECK(tp2.power == doctest::Approx(-1.0 / 24).epsilon(1e-12));
  CHECK(tp2.center.x == doctest::Approx(tp.center.x).epsilon(1e-12));

  // shifting every weight by c drops the power by c, center unchanged
  auto tp3 = triangle_center_power({1.3, 0.9, 1.1}, {0.2, 0.5, 0.1});
  auto tp4 = triangle_center_power({1.3, 0.9, 1.1}, {0.9, 1.2, 0.8});
  CHECK(tp4.power == doctest::Approx(tp3.power - 0.7).epsilon(1e-12));
  CHECK(tp4.center.x == doctest::Approx(tp3.center.x).epsilon(1e-12));
  CHECK(tp4.center.y == doctest::Approx(tp3.center.y).epsilon(1e-12));

  CHECK_THROWS_AS(triangle_center_power({1, 1, 2}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("local convexity on the square pillow") {
  Triangulation T = square_pillow(0);
  REQUIRE(T.complex.validate().ok());
  // the diagonal 0-2 of the front square: side 2 of triangle 0
  int diag = side_id(0, 2);
  CHECK(is_locally_convex(T, diag) == LocalConvexity::Equality);

  // weighting an off-diagonal vertex breaks the tie
  T.weights[1] = 0.1;
  CHECK(is_locally_convex(T, diag) == LocalConvexity::Violated);

  Triangulation T2 = square_pillow(1);  // same square, contrary diagonal 1-3
  REQUIRE(T2.complex.validate().ok());
  T2.weights[1] = 0.1;
  CHECK(is_locally_convex(T2, side_id(0, 2)) == LocalConvexity::Strict);
}

TEST_CASE("local convexity of the tetrahedron") {
  PolyhedralMetric m = make_tetrahedron_metric();
  Triangulation T;
  T.complex = m;
  T.weights.assign(4, 0.0);
  T.side_origin.assign(m.side_count(), EdgeOrigin::Voronoi);
  for (int ds : T.complex.edge_reps()) {
    CHECK(is_locally_convex(T, ds) == LocalConvexity::Strict);
  }
}

TEST_CASE("flip threshold of the unit square") {
  Vec2 W{0, 0}, X{1, 0}, Y{1, 1}, Z{0, 1};
  CHECK(flip_threshold(W, X, Y, Z, 0, 0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  // additive invariance: shifting the three fixed weights shifts t equally
  double c = 0.37;
  CHECK(flip_threshold(W, X, Y, Z, c, c, c) == doctest::Approx(c).epsilon(1e-12));
  // nonconvex quadrilateral is rejected
  CHECK_THROWS_AS(flip_threshold(W, X, Vec2{0.4, 0.3}, Z, 0, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("height function along an edge") {
  Triangulation T = square_pillow(0);
  int ab = side_id(0, 0);  // unit edge 0->1
  CHECK(height_at(T, ab, 0.5) == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(height_at(T, ab, 0.0) == doctest::Approx(T.weights[0]).epsilon(1e-12));
  T.weights.assign(4, 1.0);
  CHECK(height_at(T, ab, 0.3) == doctest::Approx(0.79).epsilon(1e-12));
  CHECK_THROWS_AS(height_at(T, ab, 1.5), std::invalid_argument);
}

TEST_CASE("unweighted delaunay of the tetrahedron is the input complex") {
  PolyhedralMetric m = make_tetrahedron_metric();
  Triangulation T = unweighted_delaunay(m, voronoi_diagram(m));
  CHECK(T.complex.triangle_count() == 4);
  CHECK(triangle_sets(T.complex) == triangle_sets(m));
  for (int ds = 0; ds < T.complex.side_count(); ++ds) {
    CHECK(T.complex.side_length(ds) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(T.complex.validate().ok());
}

TEST_CASE("unweighted delaunay of the cube") {
  PolyhedralMetric m = make_cube_metric();
  Triangulation T = unweighted_delaunay(m, voronoi_diagram(m));
  CHECK(T.complex.edge_count() == 18);
  CHECK(T.complex.triangle_count() == 12);
  CHECK(T.complex.validate().ok());
  int unit = 0, diag = 0;
  for (int ds : T.complex.edge_reps()) {
    double l = T.complex.side_length(ds);
    if (std::abs(l - 1.0) < 1e-6) {
      ++unit;
    } else if (std::abs(l - std::sqrt(2.0)) < 1e-6) {
      ++diag;
    }
  }
  CHECK(unit == 12);
  CHECK(diag == 6);
  // cocircular faces: diagonals classify as equality, cube edges strict
  for (int ds : T.complex.edge_reps()) {
    double l = T.complex.side_length(ds);
    LocalConvexity lc = is_locally_convex(T, ds);
    if (std::abs(l - 1.0) < 1e-6) {
      CHECK(lc == LocalConvexity::Strict);
    } else {
      CHECK(lc == LocalConvexity::Equality);
    }
  }
  // deterministic fan rule: every face diagonal touches that face's lowest id
  for (int ds : T.complex.edge_reps()) {
    if (std::abs(T.complex.side_length(ds) - std::sqrt(2.0)) > 1e-6) continue;
    int a = T.complex.side_from(ds), b = T.complex.side_to(ds);
    // the four corners of the square containing this diagonal
    int t1 = side_tri(ds), t2 = side_tri(T.complex.glue(ds));
    std::set<int> corners(T.complex.tri(t1).v.begin(), T.complex.tri(t1).v.end());
    corners.insert(T.complex.tri(t2).v.begin(), T.complex.tri(t2).v.end());
    int lowest = *corners.begin();
    CHECK((a == lowest || b == lowest));
  }
}

TEST_CASE("unweighted delaunay on random hulls preserves the metric") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    PolyhedralMetric m = make_random_hull_metric(9, seed);
    Triangulation T = unweighted_delaunay(m, voronoi_diagram(m));
    int n = m.vertex_count();
    CHECK(T.complex.edge_count() == 3 * n - 6);
    CHECK(T.complex.triangle_count() == 2 * n - 4);
    CHECK(T.complex.validate().ok());
    // realizes the same intrinsic metric: identical defects
    DefectVector d0 = m.defects();
    DefectVector d1 = T.complex.defects();
    for (int v = 0; v < n; ++v) {
      CHECK(d1.delta[v] == doctest::Approx(d0.delta[v]).epsilon(1e-7));
    }
    for (int ds : T.complex.edge_reps()) {
      CHECK(is_locally_convex(T, ds) != LocalConvexity::Violated);
    }
  }
}

TEST_CASE("reweight with no effective change keeps the triangulation") {
  PolyhedralMetric m = make_cube_metric();
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  Triangulation T = seed;
  std::fill(T.weights.begin(), T.weights.end(), 1.0);
  Triangulation before = T;
  reweight_vertex(T, 0, 1.0);  // decrease by zero
  CHECK(triangle_sets(T.complex) == triangle_sets(before.complex));
  CHECK_THROWS_AS(reweight_vertex(T, 0, 2.0), std::invalid_argument);
}

TEST_CASE("reweight on the tetrahedron never flips") {
  PolyhedralMetric m = make_tetrahedron_metric();
  Triangulation T = unweighted_delaunay(m, voronoi_diagram(m));
  FlipStats stats;
  reweight_vertex(T, 2, -0.8, &stats);
  CHECK(stats.flips == 0);
  CHECK(triangle_sets(T.complex) == triangle_sets(m));
  CHECK(all_edges_locally_convex(T));
}

TEST_CASE("lowering a cube corner flips its incident diagonals") {
  PolyhedralMetric m = make_cube_metric();
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  // corner 0 is the lowest id, so all three incident face diagonals touch it
  int diag_at_0 = 0;
  for (int ds : seed.complex.edge_reps()) {
    if (std::abs(seed.complex.side_length(ds) - std::sqrt(2.0)) > 1e-6) continue;
    if (seed.complex.side_from(ds) == 0 || seed.complex.side_to(ds) == 0) ++diag_at_0;
  }
  CHECK(diag_at_0 == 3);

  Triangulation T = seed;
  FlipStats stats;
  reweight_vertex(T, 0, -0.5, &stats);
  CHECK(stats.flips == 3);
  CHECK(stats.min_height_gain > 0);
  CHECK(all_edges_locally_convex(T));
  // after the flips no diagonal touches the lowered vertex
  for (int ds : T.complex.edge_reps()) {
    if (std::abs(T.complex.side_length(ds) - std::sqrt(2.0)) > 1e-6) continue;
    CHECK(T.complex.side_from(ds) != 0);
    CHECK(T.complex.side_to(ds) != 0);
  }
  // matches the full recompute from the seed
  std::vector<double> w(8, 0.0);
  w[0] = -0.5;
  Triangulation full = weighted_delaunay(m, w, seed);
  CHECK(all_edges_locally_convex(full));
  CHECK(edge_multiset(T.complex) == edge_multiset(full.complex));
}

TEST_CASE("weighted delaunay with uniform weights returns the seed") {
  PolyhedralMetric m = make_cube_metric();
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  std::vector<double> w(8, 0.7);
  Triangulation T = weighted_delaunay(m, w, seed);
  CHECK(triangle_sets(T.complex) == triangle_sets(seed.complex));
}

TEST_CASE("weighted delaunay is invariant under additive weight shifts") {
  PolyhedralMetric m = make_random_hull_metric(8, 11);
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  std::vector<double> w = {0.1, -0.2, 0.05, 0.3, -0.1, 0.0, 0.15, -0.05};
  Triangulation T1 = weighted_delaunay(m, w, seed);
  std::vector<double> w2 = w;
  for (double& x : w2) x += 3.21;
  Triangulation T2 = weighted_delaunay(m, w2, seed);
  CHECK(edge_multiset(T1.complex) == edge_multiset(T2.complex));
  CHECK(all_edges_locally_convex(T1));
}

TEST_CASE("tetrahedron with circumradius weights keeps its four faces") {
  PolyhedralMetric m = make_tetrahedron_metric();
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  std::vector<double> w(4, 3.0 / 8.0);
  Triangulation T = weighted_delaunay(m, w, seed);
  CHECK(triangle_sets(T.complex) == triangle_sets(m));
}

TEST_CASE("random weights stay locally convex and match incremental updates") {
  std::uint64_t state = 999;
  auto next_unit = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    PolyhedralMetric m = make_random_hull_metric(8, seed);
    SolveContext ctx = SolveContext::build(m);
    const Triangulation& seed_tri = ctx.seed;
    auto [r0, T0] = initial_radii(ctx, SolverConfig{});
    int flips_total = 0;
    int max_degree = 0;
    for (int v = 0; v < m.vertex_count(); ++v) {
      max_degree = std::max(max_degree, seed_tri.complex.vertex_degree(v));
    }
    // random weights near a valid squared-radius vector; perturbations are
    // scaled by the squared vertex spacing, the scale on which power cells
    // live (larger noise starves cells and leaves the precondition's domain)
    double ell2 = ctx.params.ell * ctx.params.ell;
    auto draw_radii = [&](std::vector<double>& w) {
      for (size_t i = 0; i < w.size(); ++i) {
        w[i] = r0[i] * r0[i] + (next_unit() - 0.5) * 0.9 * ell2;
      }
    };
    int done = 0, attempts = 0;
    while (done < 25 && attempts < 400) {
      ++attempts;
      std::vector<double> w(m.vertex_count()), w0(m.vertex_count());
      draw_radii(w);
      draw_radii(w0);
      Triangulation T, inc;
      FlipStats stats;
      try {
        T = weighted_delaunay(m, w, seed_tri);
        inc = weighted_delaunay(m, w0, seed_tri);
        retriangulate_incremental(inc, w, &stats);
      } catch (const std::runtime_error&) {
        continue;  // precondition violation detected; vector out of domain
      }
      ++done;
      flips_total += stats.flips;
      CHECK(all_edges_locally_convex(T));
      CHECK(all_edges_locally_convex(inc));
      if (stats.flips > 0) CHECK(stats.min_height_gain > 0);
      // combinatorics agree with the from-scratch result
      CHECK(edge_multiset(inc.complex) == edge_multiset(T.complex));
    }
    CHECK(done == 25);
    CHECK(attempts <= 8 * done);  // a healthy fraction of draws is in-domain
    CHECK(flips_total <= 25 * m.vertex_count() * max_degree);
  }
}

TEST_CASE("reweighting order only affects equality edges") {
  PolyhedralMetric m = make_random_hull_metric(9, 21);
  Triangulation seed = unweighted_delaunay(m, voronoi_diagram(m));
  std::vector<double> w = {0.12, -0.08, 0.31, 0.0, -0.25, 0.19, 0.02, -0.14, 0.22};
  double w0 = *std::max_element(w.begin(), w.end());

  Triangulation Ta = seed;
  std::fill(Ta.weights.begin(), Ta.weights.end(), w0);
  for (int v = 0; v < 9; ++v) reweight_vertex(Ta, v, w[v]);

  Triangulation Tb = seed;
  std::fill(Tb.weights.begin(), Tb.weights.end(), w0);
  for (int v = 8; v >= 0; --v) reweight_vertex(Tb, v, w[v]);

  CHECK(all_edges_locally_convex(Ta));
  CHECK(all_edges_locally_convex(Tb));
  CHECK(edge_multiset(Ta.complex) == edge_multiset(Tb.complex));
}
