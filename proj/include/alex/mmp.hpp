#pragma once

#include <string>
#include <utility>
#include <vector>

#include "alex/metric.hpp"

namespace alex {

// A point of the surface, in one of three charts: a vertex, a point on an
// edge (directed side + parameter in that side's frame), or a point inside a
// triangle (canonical-chart coordinates).
struct SurfacePoint {
  enum class Kind { Vertex, Edge, Face };
  Kind kind = Kind::Vertex;
  int vertex = -1;
  int ds = -1;
  double t = 0;
  int tri = -1;
  Vec2 pos;

  static SurfacePoint at_vertex(int v) {
    SurfacePoint p;
    p.kind = Kind::Vertex;
    p.vertex = v;
    return p;
  }
  static SurfacePoint on_edge(int ds, double t) {
    SurfacePoint p;
    p.kind = Kind::Edge;
    p.ds = ds;
    p.t = t;
    return p;
  }
  static SurfacePoint in_face(int tri, Vec2 pos) {
    SurfacePoint p;
    p.kind = Kind::Face;
    p.tri = tri;
    p.pos = pos;
    return p;
  }
};

// Interval of a directed side over which shortest paths share an unfolded
// (pseudo)source. The side's triangle is the face the paths continue into;
// the source sits on or below the edge line (src.y <= 0 in the side frame).
struct Window {
  int ds = -1;
  double b0 = 0;
  double b1 = 0;
  Vec2 src;
  double sigma = 0;
  int source = -1;

  double dist_at(double x) const { return sigma + std::hypot(x - src.x, src.y); }
  double min_dist() const { return dist_at(std::clamp(src.x, b0, b1)); }
};

struct VertexRecord {
  double dist = std::numeric_limits<double>::infinity();
  int source = -1;
  int via_ds = -1;     // side carrying the realizing window
  Vec2 via_src;        // its unfolded source in that side's frame
  double via_sigma = 0;
};

struct MmpOptions {
  long long pop_cap = 50'000'000;
  bool record_pop_keys = false;
};

struct DistanceField {
  const SurfaceComplex* complex = nullptr;
  std::vector<SurfacePoint> sources;
  // Per directed side: windows sorted by span start, disjoint, covering [0, len].
  std::vector<std::vector<Window>> side_windows;
  std::vector<VertexRecord> vertex;
  long long pops = 0;
  bool monotone = true;
  std::vector<double> pop_keys;

  double vertex_distance(int v) const { return vertex[v].dist; }
};

// Generalized continuous-Dijkstra propagation from the given sources.
// Sources must be nonempty and pairwise distinct.
DistanceField run_mmp(const PolyhedralMetric& m, const std::vector<SurfacePoint>& sources,
                      const MmpOptions& opt = {});

// Minimum distance to any source and the argmin source (lowest id on ties).
std::pair<double, int> query_distance(const DistanceField& field, const SurfacePoint& q);

// Max and min surface distance over vertex pairs (n single-source runs).
std::pair<double, double> surface_diameter(const PolyhedralMetric& m, int threads = 1);

// Full vertex-pair distance matrix.
std::vector<std::vector<double>> all_pairs_distances(const PolyhedralMetric& m,
                                                     int threads = 1);

// Debug dump of the interval lists.
std::string windows_to_json(const DistanceField& field);

} // namespace alex
