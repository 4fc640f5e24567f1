#pragma once

#include <cstdint>
#include <vector>

#include "alex/metric.hpp"

namespace alex {

// Intrinsic metric of the convex hull surface of the given points. All points
// must be hull vertices (convex position) and span three dimensions. Coplanar
// facets are fan-triangulated from their lowest-index vertex; side lengths are
// chord lengths; triangles wind counterclockwise seen from outside.
PolyhedralMetric intrinsic_from_hull(const std::vector<Vec3>& points);

// Same, also returning the facet triangulation as index triples into `points`.
PolyhedralMetric intrinsic_from_hull(const std::vector<Vec3>& points,
                                     std::vector<std::array<int, 3>>* faces_out);

// Reference fixture shapes.
std::vector<Vec3> unit_tetrahedron_points();  // regular, edge length 1
std::vector<Vec3> unit_cube_points();
std::vector<Vec3> random_sphere_points(int n, std::uint64_t seed);

PolyhedralMetric make_tetrahedron_metric();
PolyhedralMetric make_cube_metric();
PolyhedralMetric make_random_hull_metric(int n, std::uint64_t seed,
                                         std::vector<Vec3>* points_out = nullptr);

} // namespace alex
