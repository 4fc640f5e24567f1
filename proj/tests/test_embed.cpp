#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "alex/embed.hpp"
#include "alex/hull.hpp"
#include "alex/solver.hpp"
#include "oracles.hpp"

using namespace alex;

namespace {

Triangulation as_triangulation(const PolyhedralMetric& m, double weight) {
  Triangulation T;
  T.complex = m;
  T.weights.assign(m.vertex_count(), weight);
  T.side_origin.assign(m.side_count(), EdgeOrigin::Voronoi);
  return T;
}

} // namespace

TEST_CASE("closed tetrahedron star embeds exactly") {
  PolyhedralMetric m = make_tetrahedron_metric();
  double R = std::sqrt(3.0 / 8.0);
  Triangulation T = as_triangulation(m, R * R);
  std::vector<double> r(4, R);
  auto [emb, rep] = embed_mesh(m, T, r);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      CHECK(dist(emb.coords[i], emb.coords[j]) == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  CHECK(rep.max_vertex_scatter <= 1e-9);
  CHECK(rep.accuracy <= 1e-9);
  CHECK(rep.convexity_slack ==
        doctest::Approx(kPi - std::acos(1.0 / 3.0)).epsilon(1e-9));
}

TEST_CASE("open star still embeds and reports its scatter") {
  PolyhedralMetric m = make_tetrahedron_metric();
  Triangulation T = as_triangulation(m, 100.0 * 100.0);
  std::vector<double> r(4, 100.0);
  auto [emb, rep] = embed_mesh(m, T, r);
  CHECK(rep.max_vertex_scatter > 0.1);  // kappa is near its maximum here
  CHECK(std::isfinite(rep.accuracy));
}

TEST_CASE("vertex scatter shrinks in proportion to the curvature") {
  PolyhedralMetric m = make_tetrahedron_metric();
  SolveContext ctx = SolveContext::build(m);
  double prev_ratio = -1;
  for (double R : {4.0, 16.0, 64.0, 256.0}) {
    Triangulation T = ctx.seed;
    std::fill(T.weights.begin(), T.weights.end(), R * R);
    std::vector<double> r(4, R);
    StarState st = star_state(m, T, r);
    auto [emb, rep] = embed_mesh(m, T, r);
    double bound = 4.0 * st.eps4 * ctx.params.D;  // n kappa D
    CHECK(rep.max_vertex_scatter <= bound);
    double ratio = rep.max_vertex_scatter / st.eps4;
    if (prev_ratio > 0) {
      CHECK(ratio == doctest::Approx(prev_ratio).epsilon(0.5));
    }
    prev_ratio = ratio;
  }
}

TEST_CASE("root face of the exact closed star does not matter") {
  PolyhedralMetric m = make_tetrahedron_metric();
  double R = std::sqrt(3.0 / 8.0);
  Triangulation T0 = as_triangulation(m, R * R);
  std::vector<double> r0(4, R);
  auto [e1, q1] = embed_mesh(m, T0, r0);
  // rotate the face list: different breadth-first root, congruent output
  std::vector<Triangle> tris2(4);
  std::vector<int> glue2(12);
  for (int t = 0; t < 4; ++t) tris2[t] = m.tri((t + 2) % 4);
  for (int t = 0; t < 4; ++t) {
    for (int s = 0; s < 3; ++s) {
      int g = m.glue(side_id((t + 2) % 4, s));
      glue2[side_id(t, s)] = side_id((side_tri(g) + 2) % 4, side_idx(g));
    }
  }
  Triangulation T1;
  T1.complex = SurfaceComplex(4, tris2, glue2);
  T1.weights.assign(4, R * R);
  T1.side_origin.assign(12, EdgeOrigin::Voronoi);
  auto [e2, q2] = embed_mesh(m, T1, r0);
  CHECK(congruence_check(e1.coords, e2.coords) <= 1e-9);
}

TEST_CASE("embedding is independent of the face order up to congruence") {
  PolyhedralMetric m = make_random_hull_metric(8, 5);
  SolveContext ctx = SolveContext::build(m);
  SolverConfig cfg;
  cfg.eps = 1e-7;
  SolveResult res = solve_radii(ctx, cfg);
  REQUIRE(res.converged);
  auto [emb1, rep1] = embed_mesh(m, res.T, res.r);

  // rotate the triangle list so the breadth-first placement roots elsewhere
  const SurfaceComplex& c = res.T.complex;
  int nf = c.triangle_count();
  int shift = nf / 2;
  std::vector<Triangle> tris(nf);
  std::vector<int> glue(3 * nf);
  for (int t = 0; t < nf; ++t) tris[t] = c.tri((t + shift) % nf);
  for (int t = 0; t < nf; ++t) {
    for (int s = 0; s < 3; ++s) {
      int g = c.glue(side_id((t + shift) % nf, s));
      int gt = (side_tri(g) - shift + nf) % nf;
      glue[side_id(t, s)] = side_id(gt, side_idx(g));
    }
  }
  Triangulation T2;
  T2.complex = SurfaceComplex(c.vertex_count(), tris, glue);
  T2.weights = res.T.weights;
  T2.side_origin.assign(3 * nf, EdgeOrigin::Voronoi);
  auto [emb2, rep2] = embed_mesh(m, T2, res.r);
  // at curvature eps the placements differ by the scatter scale
  double tol = 1e-9 + 4 * (rep1.max_vertex_scatter + rep2.max_vertex_scatter);
  CHECK(congruence_check(emb1.coords, emb2.coords) <= tol);
}

TEST_CASE("congruence check basics") {
  std::vector<Vec3> tetra = unit_tetrahedron_points();
  // rigid motion plus reflection
  std::vector<Vec3> moved;
  for (const Vec3& p : tetra) {
    Vec3 q{-p.x, p.z + 2.0, p.y - 1.0};
    moved.push_back(q);
  }
  CHECK(congruence_check(tetra, moved) <= 1e-12);

  std::vector<Vec3> doubled;
  for (const Vec3& p : tetra) doubled.push_back(p * 2.0);
  CHECK(congruence_check(doubled, tetra) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<Vec3> five(5);
  CHECK_THROWS_AS(congruence_check(tetra, five), std::invalid_argument);
}

TEST_CASE("uniform scaling shows up as accuracy") {
  PolyhedralMetric m = make_tetrahedron_metric();
  double R = std::sqrt(3.0 / 8.0);
  Triangulation T = as_triangulation(m, R * R);
  std::vector<double> r(4, R);
  auto [emb, rep] = embed_mesh(m, T, r);
  for (Vec3& p : emb.coords) p = p * 1.01;
  QualityReport rep2 = embedding_quality(m, T, emb);
  CHECK(rep2.accuracy == doctest::Approx(0.01).epsilon(1e-6));
}

TEST_CASE("hand-built reflex configuration reports negative slack") {
  // two apexes on the same side of a unit triangle: a crater whose rim and
  // inner edges fold back
  std::vector<Vec3> ring = {{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}};
  Vec3 top{0.5, std::sqrt(3.0) / 6, 0.9};
  Vec3 inner{0.5, std::sqrt(3.0) / 6, 0.45};
  std::vector<Vec3> pts = {top, ring[0], ring[1], ring[2], inner};
  std::vector<Triangle> tris;
  // a point inside the crater wall solid, on the axis between the two apexes
  Vec3 q0{0.5, std::sqrt(3.0) / 6, 0.6};
  auto add = [&](int a, int b, int c) {
    // wind outward: normal away from the interior reference point
    Vec3 n = cross(pts[b] - pts[a], pts[c] - pts[a]);
    Vec3 fc = (pts[a] + pts[b] + pts[c]) / 3.0;
    if (dot(n, fc - q0) < 0) std::swap(b, c);
    Triangle t;
    t.v = {a, b, c};
    t.len = {dist(pts[a], pts[b]), dist(pts[b], pts[c]), dist(pts[c], pts[a])};
    tris.push_back(t);
  };
  add(0, 1, 2);
  add(0, 2, 3);
  add(0, 3, 1);
  add(4, 2, 1);
  add(4, 3, 2);
  add(4, 1, 3);
  Triangulation T;
  T.complex = SurfaceComplex::from_triangles(5, tris);
  T.weights.assign(5, 0.0);
  T.side_origin.assign(18, EdgeOrigin::Voronoi);

  Embedding emb;
  emb.coords = pts;
  emb.orientation = 1.0;
  emb.max_vertex_scatter = 0;
  QualityReport rep = embedding_quality(T.complex, T, emb);
  CHECK(rep.accuracy <= 1e-12);  // lengths were measured from the coordinates
  CHECK(rep.convexity_slack < 0);

  // independent expected value: the most negative signed exterior dihedral,
  // reflex when the far vertex lies outside the face plane
  double expected = std::numeric_limits<double>::infinity();
  const SurfaceComplex& c = T.complex;
  for (int ds : c.edge_reps()) {
    int ds2 = c.glue(ds);
    int t1 = side_tri(ds), s1 = side_idx(ds);
    int t2 = side_tri(ds2), s2 = side_idx(ds2);
    Vec3 pi = pts[c.tri(t1).v[s1]];
    Vec3 pj = pts[c.tri(t1).v[(s1 + 1) % 3]];
    Vec3 pk = pts[c.tri(t1).v[(s1 + 2) % 3]];
    Vec3 pl = pts[c.tri(t2).v[(s2 + 2) % 3]];
    double chi = oracle::dihedral_from_points({pi, pj, pk, pl});
    Vec3 n1 = cross(pj - pi, pk - pi);  // outward by construction
    double sign = dot(n1, pl - pi) > 0 ? -1.0 : 1.0;
    expected = std::min(expected, sign * (kPi - chi));
  }
  CHECK(rep.convexity_slack == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("obj export shape and determinism") {
  PolyhedralMetric m = make_tetrahedron_metric();
  double R = std::sqrt(3.0 / 8.0);
  Triangulation T = as_triangulation(m, R * R);
  std::vector<double> r(4, R);
  auto [emb, rep] = embed_mesh(m, T, r);
  std::string obj1 = export_obj(emb, T);
  std::string obj2 = export_obj(emb, T);
  CHECK(obj1 == obj2);
  int vlines = 0, flines = 0;
  std::istringstream is(obj1);
  std::string line;
  std::map<std::pair<int, int>, int> directed;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++vlines;
    if (line.rfind("f ", 0) == 0) {
      ++flines;
      int a, b, c;
      REQUIRE(std::sscanf(line.c_str(), "f %d %d %d", &a, &b, &c) == 3);
      directed[{a, b}] += 1;
      directed[{b, c}] += 1;
      directed[{c, a}] += 1;
    }
  }
  CHECK(vlines == 4);
  CHECK(flines == 4);
  // consistent orientation: each directed edge appears exactly once, and its
  // reversal appears in the neighboring face
  for (auto& [e, count] : directed) {
    CHECK(count == 1);
    CHECK(directed.count({e.second, e.first}) == 1);
  }
}

TEST_CASE("cube obj has eight vertices and twelve faces") {
  PolyhedralMetric m = make_cube_metric();
  SolveContext ctx = SolveContext::build(m);
  SolverConfig cfg;
  cfg.eps = 1e-6;
  SolveResult res = solve_radii(ctx, cfg);
  REQUIRE(res.converged);
  auto [emb, rep] = embed_mesh(m, res.T, res.r);
  std::string obj = export_obj(emb, res.T);
  int vlines = 0, flines = 0;
  std::istringstream is(obj);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("v ", 0) == 0) ++vlines;
    if (line.rfind("f ", 0) == 0) ++flines;
  }
  CHECK(vlines == 8);
  CHECK(flines == 12);
  CHECK(congruence_check(emb.coords, unit_cube_points()) <= 1e-3);
  CHECK(rep.convexity_slack >= -1e-3);
}
