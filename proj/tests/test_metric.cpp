#include "doctest.h"

#include <cmath>
#include <set>

#include "alex/hull.hpp"
#include "alex/metric.hpp"

using namespace alex;

namespace {

const char* kTetraJson = R"({
  "vertices": 4,
  "triangles": [
    {"v": [0, 1, 2], "len": [1, 1, 1]},
    {"v": [0, 3, 1], "len": [1, 1, 1]},
    {"v": [1, 3, 2], "len": [1, 1, 1]},
    {"v": [2, 3, 0], "len": [1, 1, 1]}
  ]
})";

} // namespace

TEST_CASE("parse regular tetrahedron") {
  PolyhedralMetric m = parse_metric(kTetraJson);
  CHECK(m.vertex_count() == 4);
  CHECK(m.triangle_count() == 4);
  CHECK(m.edge_count() == 6);
  CHECK(m.validate().ok());
}

TEST_CASE("parse rejects nonpositive length") {
  std::string bad = kTetraJson;
  auto pos = bad.find("[1, 1, 1]");
  bad.replace(pos, 9, "[0, 1, 1]");
  CHECK_THROWS_WITH_AS(parse_metric(bad), "nonpositive length", std::invalid_argument);
}

TEST_CASE("parse rejects out-of-range index") {
  std::string bad = kTetraJson;
  auto pos = bad.find("[0, 1, 2]");
  bad.replace(pos, 9, "[0, 1, 7]");
  CHECK_THROWS_AS(parse_metric(bad), std::invalid_argument);
}

TEST_CASE("parse rejects malformed document") {
  CHECK_THROWS_AS(parse_metric("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_metric("{\"vertices\": 3}"), std::invalid_argument);
}

TEST_CASE("validate flags edge length mismatch") {
  std::string bad = kTetraJson;
  auto pos = bad.find("[1, 1, 1]");
  bad.replace(pos, 9, "[1.1, 1, 1]");
  PolyhedralMetric m = parse_metric(bad);
  ValidationReport rep = m.validate();
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations) found |= v.code == "edge length mismatch";
  CHECK(found);
}

TEST_CASE("validate flags nonpositive defect") {
  // hexagonal wheel with long rim edges: the hub angle sum exceeds 2 pi
  int n = 8;  // 0 and 7 are the two hubs, 1..6 the shared rim
  std::vector<Triangle> tris;
  auto rim = [&](int i) { return 1 + (i % 6); };
  for (int i = 0; i < 6; ++i) {
    tris.push_back({{0, rim(i), rim(i + 1)}, {1.0, 1.2, 1.0}});
    tris.push_back({{7, rim(i + 1), rim(i)}, {1.0, 1.2, 1.0}});
  }
  PolyhedralMetric m = SurfaceComplex::from_triangles(n, tris);
  ValidationReport rep = m.validate();
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (const auto& v : rep.violations) found |= v.code == "nonpositive defect";
  CHECK(found);
}

TEST_CASE("defects of tetrahedron and cube") {
  PolyhedralMetric tetra = make_tetrahedron_metric();
  DefectVector d = compute_defects(tetra);
  for (double delta : d.delta) CHECK(delta == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(d.sum() == doctest::Approx(4 * kPi).epsilon(1e-12));

  PolyhedralMetric cube = make_cube_metric();
  DefectVector dc = compute_defects(cube);
  REQUIRE(dc.delta.size() == 8);
  for (double delta : dc.delta) CHECK(delta == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("gauss-bonnet on random hulls") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    PolyhedralMetric m = make_random_hull_metric(10, seed);
    CHECK(m.validate().ok());
    CHECK(std::abs(m.defects().sum() - 4 * kPi) < 1e-9);
  }
}

TEST_CASE("corner angles are sane on random hulls") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PolyhedralMetric m = make_random_hull_metric(8, seed);
    for (int t = 0; t < m.triangle_count(); ++t) {
      double sum = 0;
      for (int c = 0; c < 3; ++c) {
        double a = m.corner_angle_at(t, c);
        CHECK(a > 0);
        CHECK(a < kPi);
        sum += a;
      }
      CHECK(sum == doctest::Approx(kPi).epsilon(1e-12));
    }
  }
}

TEST_CASE("serialize round trip") {
  PolyhedralMetric m = make_cube_metric();
  PolyhedralMetric m2 = parse_metric(m.to_json());
  REQUIRE(m2.triangle_count() == m.triangle_count());
  for (int t = 0; t < m.triangle_count(); ++t) {
    CHECK(m2.tri(t).v == m.tri(t).v);
    for (int s = 0; s < 3; ++s) CHECK(m2.tri(t).len[s] == m.tri(t).len[s]);
  }
  for (int ds = 0; ds < m.side_count(); ++ds) CHECK(m2.glue(ds) == m.glue(ds));
}

TEST_CASE("hull generator: unit simplex and cube") {
  PolyhedralMetric tetra = make_tetrahedron_metric();
  CHECK(tetra.vertex_count() == 4);
  CHECK(tetra.triangle_count() == 4);
  for (int ds = 0; ds < tetra.side_count(); ++ds) {
    CHECK(tetra.side_length(ds) == doctest::Approx(1.0).epsilon(1e-12));
  }

  PolyhedralMetric cube = make_cube_metric();
  CHECK(cube.vertex_count() == 8);
  CHECK(cube.triangle_count() == 12);
  std::multiset<int> kinds;
  for (int ds = 0; ds < cube.side_count(); ++ds) {
    if (ds > cube.glue(ds)) continue;
    double l = cube.side_length(ds);
    if (std::abs(l - 1.0) < 1e-12) {
      kinds.insert(1);
    } else {
      CHECK(l == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
      kinds.insert(2);
    }
  }
  CHECK(kinds.count(1) == 12);  // cube edges
  CHECK(kinds.count(2) == 6);   // one diagonal per face
}

TEST_CASE("hull generator rejects degenerate input") {
  std::vector<Vec3> flat = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK_THROWS_AS(intrinsic_from_hull(flat), std::invalid_argument);
  std::vector<Vec3> few = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(intrinsic_from_hull(few), std::invalid_argument);
  // interior point: not in convex position
  std::vector<Vec3> inner = unit_cube_points();
  inner.push_back({0.5, 0.5, 0.5});
  CHECK_THROWS_AS(intrinsic_from_hull(inner), std::invalid_argument);
}

TEST_CASE("multigraph complex with explicit gluing") {
  // two triangles glued along all three sides (a doubled triangle)
  std::vector<Triangle> tris = {
      {{0, 1, 2}, {3, 4, 3.5}},
      {{1, 0, 2}, {3, 3.5, 4}},
  };
  // side (0,s) must glue to the side of triangle 1 with the same endpoints:
  // (0,0)=0->1 with (1,0)=1->0; (0,1)=1->2 with (1,2)=2->1; (0,2)=2->0 with (1,1)=0->2
  std::vector<int> glue = {3, 5, 4, 0, 2, 1};
  SurfaceComplex m(3, tris, glue);
  CHECK(m.validate().ok());
  CHECK(m.edge_count() == 3);
  DefectVector d = m.defects();
  CHECK(d.sum() == doctest::Approx(4 * kPi).epsilon(1e-9));
}
