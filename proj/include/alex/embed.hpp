#pragma once

#include <string>
#include <vector>

#include "alex/delaunay.hpp"
#include "alex/metric.hpp"

namespace alex {

struct Embedding {
  std::vector<Vec3> coords;                         // final, after centroid collapse
  Vec3 apex;                                        // the common origin O
  std::vector<std::array<Vec3, 3>> face_corners;    // rigid per-face copies
  double max_vertex_scatter = 0;
  double orientation = 1.0;  // +1 when stored faces wind CCW seen from outside
};

struct QualityReport {
  double accuracy = 0;         // max relative edge-length distortion
  double convexity_slack = 0;  // min signed exterior dihedral over interior edges
  double max_vertex_scatter = 0;

  std::string to_json() const;
};

// Rigidly places the apex tetrahedron of every face (breadth-first over face
// adjacency from face 0), then collapses each vertex's copies to their
// centroid.
std::pair<Embedding, QualityReport> embed_mesh(const PolyhedralMetric& m,
                                               const Triangulation& T,
                                               const std::vector<double>& r);

QualityReport embedding_quality(const PolyhedralMetric& m, const Triangulation& T,
                                const Embedding& emb);

// Max relative mismatch of the sorted pairwise-distance multisets.
double congruence_check(const std::vector<Vec3>& emb, const std::vector<Vec3>& reference);

// Text mesh: one "v x y z" line per vertex, one 1-based "f a b c" line per
// triangle, counterclockwise seen from outside.
std::string export_obj(const Embedding& emb, const Triangulation& T);

} // namespace alex
