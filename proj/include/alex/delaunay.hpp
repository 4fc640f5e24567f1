#pragma once

#include <array>
#include <vector>

#include "alex/metric.hpp"
#include "alex/voronoi.hpp"

namespace alex {

enum class EdgeOrigin { Voronoi, DiagonalFill, FlipCreated };
enum class LocalConvexity { Strict, Equality, Violated };

// Surface triangulation over V(M) with per-vertex weights (squared radii in
// the solver pipeline). Realizes the same intrinsic metric as the complex it
// was derived from; only the combinatorics differ.
struct Triangulation {
  SurfaceComplex complex;
  std::vector<double> weights;
  std::vector<EdgeOrigin> side_origin;  // per directed side

  std::string to_json() const { return complex.to_json(&weights); }
};

struct TrianglePower {
  Vec2 center;  // chart of the triangle (vertex 0 at origin, 1 on +x)
  double power;
};

struct FlipStats {
  int flips = 0;
  double min_height_gain = std::numeric_limits<double>::infinity();
};

// Center and power of a triangle with side lengths (l01, l12, l20) under the
// given corner weights: the unique point with equal power against all three.
TrianglePower triangle_center_power(const std::array<double, 3>& len,
                                    const std::array<double, 3>& w);

// Classifies the local convexity of the edge at directed side ds.
LocalConvexity is_locally_convex(const Triangulation& T, int ds);

// Flip preference threshold for w(W) against fixed w(X), w(Y), w(Z), for the
// embedded quadrilateral W,X,Y,Z (diagonals WY and XZ crossing at P). Throws
// std::invalid_argument when the quadrilateral is not strictly convex.
double flip_threshold(Vec2 W, Vec2 X, Vec2 Y, Vec2 Z, double wX, double wY, double wZ);

// Height function value at the point of edge XY at arc-length t from X.
double height_at(const Triangulation& T, int ds, double t);

// Dual of the all-vertex Voronoi diagram: one edge per diagram edge, higher
// degree diagram vertices fan-filled from their lowest vertex id.
Triangulation unweighted_delaunay(const PolyhedralMetric& m, const VoronoiDiagram& vor);

// Lowers the weight of v to new_weight, restoring local convexity by flips
// around v (max-threshold first).
void reweight_vertex(Triangulation& T, int v, double new_weight,
                     FlipStats* stats = nullptr);

// Full weighted Delaunay from the unweighted seed: uniform weights at
// max(w), then each vertex lowered to its target in index order.
Triangulation weighted_delaunay(const PolyhedralMetric& m, const std::vector<double>& w,
                                const Triangulation& seed, FlipStats* stats = nullptr);

// Delaunay update for new weights starting from the current triangulation:
// shift additively so every vertex weakly decreases, then reweight each.
void retriangulate_incremental(Triangulation& T, const std::vector<double>& w_new,
                               FlipStats* stats = nullptr);

// True when every interior edge classifies Strict or Equality.
bool all_edges_locally_convex(const Triangulation& T);

} // namespace alex
