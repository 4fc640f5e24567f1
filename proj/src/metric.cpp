#include "alex/metric.hpp"

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace alex {

using nlohmann::json;

double DefectVector::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (double d : delta) m = std::min(m, d);
  return m;
}

double DefectVector::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double d : delta) m = std::max(m, d);
  return m;
}

double DefectVector::sum() const {
  double s = 0;
  for (double d : delta) s += d;
  return s;
}

SurfaceComplex::SurfaceComplex(int n_vertices, std::vector<Triangle> tris,
                               std::vector<int> glue)
    : n_vertices_(n_vertices), tris_(std::move(tris)), glue_(std::move(glue)) {
  if (glue_.size() != tris_.size() * 3) {
    throw std::invalid_argument("gluing must cover every triangle side");
  }
  for (int ds = 0; ds < side_count(); ++ds) {
    int g = glue_[ds];
    if (g < 0 || g >= side_count() || g == ds || glue_[g] != ds) {
      throw std::invalid_argument("gluing is not an involution on sides");
    }
  }
}

SurfaceComplex SurfaceComplex::from_triangles(int n_vertices, std::vector<Triangle> tris) {
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    for (int s = 0; s < 3; ++s) {
      int a = tris[t].v[s];
      int b = tris[t].v[(s + 1) % 3];
      by_pair[{std::min(a, b), std::max(a, b)}].push_back(side_id(t, s));
    }
  }
  std::vector<int> glue(tris.size() * 3, -1);
  for (auto& [pair, sides] : by_pair) {
    if (sides.size() != 2) {
      std::ostringstream msg;
      msg << "edge {" << pair.first << "," << pair.second << "} occurs in "
          << sides.size() << " sides; cannot infer gluing";
      throw std::invalid_argument(msg.str());
    }
    glue[sides[0]] = sides[1];
    glue[sides[1]] = sides[0];
  }
  return SurfaceComplex(n_vertices, std::move(tris), std::move(glue));
}

std::vector<int> SurfaceComplex::edge_reps() const {
  std::vector<int> reps;
  reps.reserve(edge_count());
  for (int ds = 0; ds < side_count(); ++ds) {
    if (ds < glue_[ds]) reps.push_back(ds);
  }
  return reps;
}

double SurfaceComplex::corner_angle_at(int t, int c) const {
  const Triangle& tr = tris_[t];
  double adj1 = tr.len[c];
  double adj2 = tr.len[(c + 2) % 3];
  double opp = tr.len[(c + 1) % 3];
  return corner_angle(opp, adj1, adj2);
}

std::vector<int> SurfaceComplex::vertex_fan(int v) const {
  // Find one directed side leaving v, then rotate around v.
  int start = -1;
  for (int ds = 0; ds < side_count() && start < 0; ++ds) {
    if (side_from(ds) == v) start = ds;
  }
  if (start < 0) throw std::runtime_error("vertex not present in any triangle");
  std::vector<int> fan;
  int ds = start;
  do {
    fan.push_back(ds);
    // previous side in the triangle enters v; its partner leaves v
    int t = side_tri(ds);
    int s = side_idx(ds);
    int prev = side_id(t, (s + 2) % 3);
    ds = glue_[prev];
    if (side_from(ds) != v) {
      throw std::runtime_error("inconsistent gluing around a vertex");
    }
    if (fan.size() > tris_.size() * 3u) {
      throw std::runtime_error("vertex fan does not close");
    }
  } while (ds != start);
  return fan;
}

double SurfaceComplex::cone_angle(int v) const {
  double total = 0;
  for (int ds : vertex_fan(v)) {
    total += corner_angle_at(side_tri(ds), side_idx(ds));
  }
  return total;
}

std::array<Vec2, 3> SurfaceComplex::chart(int t) const {
  const Triangle& tr = tris_[t];
  return layout_triangle(tr.len[0], tr.len[1], tr.len[2]);
}

Rigid2 SurfaceComplex::canonical_to_side(int ds) const {
  int s = side_idx(ds);
  if (s == 0) return Rigid2::identity();
  auto pos = chart(side_tri(ds));
  return Rigid2::align_to_x(pos[s], pos[(s + 1) % 3]);
}

Rigid2 SurfaceComplex::cross_transform(int ds) const {
  double l = side_length(ds);
  return Rigid2{-1.0, 0.0, l, 0.0};
}

ValidationReport SurfaceComplex::validate() const {
  ValidationReport rep;
  auto add = [&rep](const std::string& code, const std::string& detail) {
    rep.violations.push_back({code, detail});
  };
  const double rel_tol = 1e-9;

  if (n_vertices_ < 3) add("vertex count", "fewer than 3 vertices");
  if (tris_.empty()) add("no triangles", "complex has no triangles");

  std::vector<bool> seen(n_vertices_, false);
  for (int t = 0; t < triangle_count(); ++t) {
    const Triangle& tr = tris_[t];
    for (int c = 0; c < 3; ++c) {
      if (tr.v[c] < 0 || tr.v[c] >= n_vertices_) {
        add("index out of range", "triangle " + std::to_string(t));
      } else {
        seen[tr.v[c]] = true;
      }
      if (!(tr.len[c] > 0)) add("nonpositive length", "triangle " + std::to_string(t));
    }
    if (!triangle_inequality_strict(tr.len[0], tr.len[1], tr.len[2], rel_tol)) {
      add("triangle inequality", "triangle " + std::to_string(t));
    }
  }
  for (int v = 0; v < n_vertices_; ++v) {
    if (!seen[v]) add("isolated vertex", "vertex " + std::to_string(v));
  }
  if (!rep.ok()) return rep;  // structural problems make the rest unreliable

  // Glued sides carry the same length, and the gluing reverses direction
  // (consistent orientation).
  for (int ds = 0; ds < side_count(); ++ds) {
    int g = glue_[ds];
    if (g <= ds) continue;
    double a = side_length(ds), b = side_length(g);
    if (std::abs(a - b) > rel_tol * std::max(a, b)) {
      add("edge length mismatch",
          "sides " + std::to_string(ds) + "," + std::to_string(g));
    }
    if (side_from(ds) != side_to(g) || side_to(ds) != side_from(g)) {
      add("orientation mismatch",
          "sides " + std::to_string(ds) + "," + std::to_string(g));
    }
  }
  if (!rep.ok()) return rep;

  // Euler formula on the sphere: V - E + F = 2.
  int euler = n_vertices_ - edge_count() + triangle_count();
  if (euler != 2) {
    add("euler formula", "V-E+F = " + std::to_string(euler));
  }

  // Face connectivity through shared edges.
  {
    std::vector<bool> visited(triangle_count(), false);
    std::vector<int> stack{0};
    visited[0] = true;
    int count = 0;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      ++count;
      for (int s = 0; s < 3; ++s) {
        int t2 = side_tri(glue_[side_id(t, s)]);
        if (!visited[t2]) {
          visited[t2] = true;
          stack.push_back(t2);
        }
      }
    }
    if (count != triangle_count()) add("disconnected", "triangle adjacency graph");
  }
  if (!rep.ok()) return rep;

  // Closed fans with positive defect at every vertex.
  for (int v = 0; v < n_vertices_; ++v) {
    try {
      double angle = cone_angle(v);
      if (angle >= kTwoPi * (1.0 - 1e-9)) {
        add("nonpositive defect", "vertex " + std::to_string(v) + " cone angle " +
                                      std::to_string(angle));
      }
      if (!(angle > 0)) add("degenerate fan", "vertex " + std::to_string(v));
    } catch (const std::exception& e) {
      add("open fan", "vertex " + std::to_string(v) + ": " + e.what());
    }
  }
  return rep;
}

SurfaceComplex::FlipRemap SurfaceComplex::flip_edge(int ds, double new_len) {
  int ds2 = glue_[ds];
  int t1 = side_tri(ds), s1 = side_idx(ds);
  int t2 = side_tri(ds2), s2 = side_idx(ds2);
  if (t1 == t2) throw std::invalid_argument("flip_edge: self-glued edge");
  const Triangle a1 = tris_[t1];
  const Triangle a2 = tris_[t2];
  int va = a1.v[s1];
  int vb = a1.v[(s1 + 1) % 3];
  int vc = a1.v[(s1 + 2) % 3];
  int vd = a2.v[(s2 + 2) % 3];

  int e_bc = side_id(t1, (s1 + 1) % 3);
  int e_ca = side_id(t1, (s1 + 2) % 3);
  int e_ad = side_id(t2, (s2 + 1) % 3);
  int e_db = side_id(t2, (s2 + 2) % 3);
  double l_bc = side_length(e_bc);
  double l_ca = side_length(e_ca);
  double l_ad = side_length(e_ad);
  double l_db = side_length(e_db);

  // new triangles: t1 <- (c,a,d), t2 <- (d,b,c)
  tris_[t1] = Triangle{{vc, va, vd}, {l_ca, l_ad, new_len}};
  tris_[t2] = Triangle{{vd, vb, vc}, {l_db, l_bc, new_len}};

  FlipRemap remap;
  remap.new_diag = side_id(t1, 2);
  remap.outer = {{{e_ca, side_id(t1, 0)},
                  {e_ad, side_id(t1, 1)},
                  {e_db, side_id(t2, 0)},
                  {e_bc, side_id(t2, 1)}}};

  int old_partner[4];
  for (int i = 0; i < 4; ++i) old_partner[i] = glue_[remap.outer[i].first];
  glue_[side_id(t1, 2)] = side_id(t2, 2);
  glue_[side_id(t2, 2)] = side_id(t1, 2);
  for (int i = 0; i < 4; ++i) {
    int ns = remap.outer[i].second;
    int p = old_partner[i];
    // the partner may itself be one of the quad's outer sides
    for (int j = 0; j < 4; ++j) {
      if (p == remap.outer[j].first) {
        p = remap.outer[j].second;
        break;
      }
    }
    glue_[ns] = p;
    glue_[p] = ns;
  }
  return remap;
}

DefectVector SurfaceComplex::defects() const {
  DefectVector d;
  d.delta.resize(n_vertices_);
  for (int v = 0; v < n_vertices_; ++v) {
    d.delta[v] = kTwoPi - cone_angle(v);
  }
  return d;
}

std::string SurfaceComplex::to_json(const std::vector<double>* weights) const {
  json j;
  j["vertices"] = n_vertices_;
  j["triangles"] = json::array();
  for (const Triangle& t : tris_) {
    j["triangles"].push_back({{"v", t.v}, {"len", t.len}});
  }
  json g = json::array();
  for (int ds = 0; ds < side_count(); ++ds) {
    if (ds < glue_[ds]) {
      g.push_back({{side_tri(ds), side_idx(ds)},
                   {side_tri(glue_[ds]), side_idx(glue_[ds])}});
    }
  }
  j["gluing"] = g;
  if (weights) j["weights"] = *weights;
  return j.dump(2);
}

PolyhedralMetric parse_metric(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed document: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("triangles")) {
    throw std::invalid_argument("malformed document: missing vertices/triangles");
  }
  int n = j["vertices"].get<int>();
  if (n <= 0) throw std::invalid_argument("malformed document: vertex count");
  std::vector<Triangle> tris;
  for (const auto& jt : j["triangles"]) {
    Triangle t;
    auto v = jt.at("v");
    auto len = jt.at("len");
    if (v.size() != 3 || len.size() != 3) {
      throw std::invalid_argument("malformed document: triangle arity");
    }
    for (int c = 0; c < 3; ++c) {
      t.v[c] = v[c].get<int>();
      t.len[c] = len[c].get<double>();
      if (t.v[c] < 0 || t.v[c] >= n) throw std::invalid_argument("index out of range");
      if (!(t.len[c] > 0) || !std::isfinite(t.len[c])) {
        throw std::invalid_argument("nonpositive length");
      }
    }
    tris.push_back(t);
  }
  if (j.contains("gluing")) {
    std::vector<int> glue(tris.size() * 3, -1);
    for (const auto& pair : j["gluing"]) {
      if (pair.size() != 2 || pair[0].size() != 2 || pair[1].size() != 2) {
        throw std::invalid_argument("malformed document: gluing entry");
      }
      int a = side_id(pair[0][0].get<int>(), pair[0][1].get<int>());
      int b = side_id(pair[1][0].get<int>(), pair[1][1].get<int>());
      if (a < 0 || b < 0 || a >= static_cast<int>(glue.size()) ||
          b >= static_cast<int>(glue.size()) || pair[0][1].get<int>() > 2 ||
          pair[1][1].get<int>() > 2) {
        throw std::invalid_argument("index out of range in gluing");
      }
      if (glue[a] != -1 || glue[b] != -1 || a == b) {
        throw std::invalid_argument("malformed document: duplicate gluing");
      }
      glue[a] = b;
      glue[b] = a;
    }
    for (int g : glue) {
      if (g < 0) throw std::invalid_argument("malformed document: incomplete gluing");
    }
    return SurfaceComplex(n, std::move(tris), std::move(glue));
  }
  return SurfaceComplex::from_triangles(n, std::move(tris));
}

DefectVector compute_defects(const PolyhedralMetric& m) { return m.defects(); }

MetricParams metric_params(const PolyhedralMetric& m,
                           const std::vector<std::vector<double>>& dist) {
  int n = m.vertex_count();
  if (static_cast<int>(dist.size()) != n) {
    throw std::invalid_argument("missing distances");
  }
  MetricParams p;
  p.n = n;
  p.ell = std::numeric_limits<double>::infinity();
  p.D = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      p.ell = std::min(p.ell, dist[i][j]);
      p.D = std::max(p.D, dist[i][j]);
    }
  }
  p.L = 0;
  for (int ds = 0; ds < m.side_count(); ++ds) p.L = std::max(p.L, m.side_length(ds));
  p.S = std::max(p.D, p.L) / p.ell;
  DefectVector d = m.defects();
  p.eps1 = d.min();
  p.eps8 = kTwoPi - d.max();
  return p;
}

} // namespace alex
