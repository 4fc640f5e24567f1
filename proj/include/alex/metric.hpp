#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "alex/geom.hpp"

namespace alex {

// A triangle of the complex. Side s joins corner s to corner (s+1)%3, so
// len[0] = |v0 v1|, len[1] = |v1 v2|, len[2] = |v2 v0|.
struct Triangle {
  std::array<int, 3> v{-1, -1, -1};
  std::array<double, 3> len{0, 0, 0};
};

// Directed side id: 3*tri + side. The glued partner side runs the other way
// along the same surface edge.
inline int side_id(int tri, int side) { return 3 * tri + side; }
inline int side_tri(int ds) { return ds / 3; }
inline int side_idx(int ds) { return ds % 3; }

struct Violation {
  std::string code;    // stable machine-readable tag
  std::string detail;  // human-readable specifics
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Per-vertex angle deficits (2*pi minus the cone angle).
struct DefectVector {
  std::vector<double> delta;
  double min() const;
  double max() const;
  double sum() const;
};

struct MetricParams {
  int n = 0;
  double ell = 0;   // min inter-vertex surface distance
  double L = 0;     // max input edge length
  double D = 0;     // surface diameter over vertex pairs
  double S = 0;     // spread max(D, L) / ell
  double eps1 = 0;  // min defect
  double eps8 = 0;  // min complement 2*pi - max defect
};

// Triangle complex with per-side lengths glued into a topological sphere.
// Doubles as the carrier for retriangulations: same vertex set, different
// triangles. Gluing is stored explicitly per directed side, so multigraph
// complexes (two edges joining the same vertex pair) are representable.
class SurfaceComplex {
public:
  SurfaceComplex() = default;
  SurfaceComplex(int n_vertices, std::vector<Triangle> tris, std::vector<int> glue);

  // Infers the gluing from shared vertex pairs; throws std::invalid_argument
  // when a vertex pair is shared by more or fewer than two sides.
  static SurfaceComplex from_triangles(int n_vertices, std::vector<Triangle> tris);

  int vertex_count() const { return n_vertices_; }
  int triangle_count() const { return static_cast<int>(tris_.size()); }
  int side_count() const { return 3 * triangle_count(); }
  int edge_count() const { return side_count() / 2; }

  const std::vector<Triangle>& triangles() const { return tris_; }
  const Triangle& tri(int t) const { return tris_[t]; }
  int glue(int ds) const { return glue_[ds]; }

  double side_length(int ds) const { return tris_[side_tri(ds)].len[side_idx(ds)]; }
  int side_from(int ds) const { return tris_[side_tri(ds)].v[side_idx(ds)]; }
  int side_to(int ds) const { return tris_[side_tri(ds)].v[(side_idx(ds) + 1) % 3]; }

  // Canonical directed side representing the undirected edge.
  int edge_rep(int ds) const { return std::min(ds, glue_[ds]); }
  std::vector<int> edge_reps() const;

  // Corner angle at corner c of triangle t (law of cosines, clamped).
  double corner_angle_at(int t, int c) const;

  // Total cone angle at a vertex; requires a closed fan.
  double cone_angle(int v) const;

  // Directed sides leaving vertex v, in rotational order around v.
  // Walks the gluing; throws std::runtime_error if the fan does not close.
  std::vector<int> vertex_fan(int v) const;
  int vertex_degree(int v) const { return static_cast<int>(vertex_fan(v).size()); }

  // Canonical chart: corner 0 at origin, corner 1 on +x, corner 2 above.
  std::array<Vec2, 3> chart(int t) const;

  // Frame of directed side ds: side runs (0,0) -> (len,0), triangle above.
  Rigid2 canonical_to_side(int ds) const;

  // Map from the frame of ds to the frame of its glued partner.
  Rigid2 cross_transform(int ds) const;

  // Position of a side-frame point in the partner side's frame.
  // (Rotation by pi about the edge midpoint.)
  Vec2 cross_point(int ds, Vec2 p) const { return cross_transform(ds).apply(p); }

  ValidationReport validate() const;
  DefectVector defects() const;  // throws on invalid fans

  // Replaces the edge of ds (a->b, triangles abc and bad) by the contrary
  // diagonal with the given length; triangles become (c,a,d) and (d,b,c) in
  // the two slots. Returns the remapping of the quad's outer sides.
  struct FlipRemap {
    int new_diag = -1;  // directed side of the new edge, first slot
    std::array<std::pair<int, int>, 4> outer;  // old side id -> new side id
  };
  FlipRemap flip_edge(int ds, double new_len);

  // Structural serialization used by the CLI and tests.
  std::string to_json(const std::vector<double>* weights = nullptr) const;

private:
  int n_vertices_ = 0;
  std::vector<Triangle> tris_;
  std::vector<int> glue_;
};

using PolyhedralMetric = SurfaceComplex;

// Parses the metric JSON schema:
//   {"vertices": n, "triangles": [{"v":[i,j,k], "len":[lij,ljk,lki]}, ...],
//    "gluing": [[[t1,s1],[t2,s2]], ...]}            (gluing optional)
// Performs structural checks only; throws std::invalid_argument on errors.
PolyhedralMetric parse_metric(const std::string& json_text);

DefectVector compute_defects(const PolyhedralMetric& m);

// dist must hold all vertex-pair surface distances, dist[i][j] = d(v_i, v_j).
MetricParams metric_params(const PolyhedralMetric& m,
                           const std::vector<std::vector<double>>& dist);

} // namespace alex
