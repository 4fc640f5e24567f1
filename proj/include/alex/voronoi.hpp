#pragma once

#include <vector>

#include "alex/mmp.hpp"

namespace alex {

// A point where three or more Voronoi cells meet. Sources are listed in
// counterclockwise order around the point; angles give the direction of the
// geodesic toward each source in the point's (possibly joint) chart.
struct VoronoiVertex {
  SurfacePoint point;
  double radius = 0;
  std::vector<int> sources;
  std::vector<double> angles;
  int degree() const { return static_cast<int>(sources.size()); }
};

struct ArcSample {
  int tri = -1;
  Vec2 pos;  // canonical chart of tri
};

// Boundary curve between the cells of two sources, traced as a chain of
// per-face samples from vertex va (port pa) to vertex vb (port pb).
struct VoronoiEdge {
  int va = -1, vb = -1;
  int port_a = -1, port_b = -1;
  int src_a = -1, src_b = -1;
  double chord_len = 0;  // geodesic distance between the two sources through the disk
  std::vector<ArcSample> arc;
};

struct VoronoiDiagram {
  std::vector<VoronoiVertex> vertices;
  std::vector<VoronoiEdge> edges;
  int cell_count = 0;
  // Edge indices bounding each source's cell, in boundary-walk order.
  std::vector<std::vector<int>> cell_edges;
};

// Voronoi diagram of the given sources (all metric vertices in the public
// pipeline). Needs the completed distance field of those sources.
VoronoiDiagram voronoi_diagram(const PolyhedralMetric& m, const DistanceField& field);

// Convenience: runs MMP from all vertices first.
VoronoiDiagram voronoi_diagram(const PolyhedralMetric& m);

} // namespace alex
