#include "alex/embed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace alex {

namespace {

// Point at given distances from three placed points; `sign` picks the side of
// the plane through them.
Vec3 trilaterate(Vec3 p1, Vec3 p2, Vec3 p3, double d1, double d2, double d3,
                 double sign) {
  Vec3 ex = normalized(p2 - p1);
  double i = dot(ex, p3 - p1);
  Vec3 ey = normalized(p3 - p1 - ex * i);
  Vec3 ez = cross(ex, ey);
  double d = dist(p2, p1);
  double j = dot(ey, p3 - p1);
  double x = (d1 * d1 - d2 * d2 + d * d) / (2 * d);
  double y = (d1 * d1 - d3 * d3 + i * i + j * j) / (2 * j) - (i / j) * x;
  double z2 = d1 * d1 - x * x - y * y;
  if (z2 < -1e-9 * d1 * d1) {
    throw std::runtime_error("rigid placement failure: degenerate tetrahedron");
  }
  double z = std::sqrt(std::max(0.0, z2));
  return p1 + ex * x + ey * y + ez * (sign >= 0 ? z : -z);
}

} // namespace

std::pair<Embedding, QualityReport> embed_mesh(const PolyhedralMetric& m,
                                               const Triangulation& T,
                                               const std::vector<double>& r) {
  const SurfaceComplex& tc = T.complex;
  int nf = tc.triangle_count();
  int n = tc.vertex_count();
  Embedding emb;
  emb.apex = {0, 0, 0};
  emb.face_corners.assign(nf, {});

  // canonical pose for the root face
  {
    const Triangle& tr = tc.tri(0);
    double ra = r[tr.v[0]], rb = r[tr.v[1]], rc = r[tr.v[2]];
    Vec3 pa{ra, 0, 0};
    double lab = tr.len[0];
    double xb = (ra * ra + rb * rb - lab * lab) / (2 * ra);
    double yb2 = rb * rb - xb * xb;
    if (yb2 <= 0) throw std::runtime_error("rigid placement failure: flat root");
    Vec3 pb{xb, std::sqrt(yb2), 0};
    Vec3 pc = trilaterate({0, 0, 0}, pa, pb, rc, tr.len[2], tr.len[1], +1.0);
    emb.face_corners[0] = {pa, pb, pc};
  }

  std::vector<bool> placed(nf, false);
  placed[0] = true;
  std::queue<int> frontier;  // directed sides whose partner face awaits placement
  for (int s = 0; s < 3; ++s) frontier.push(side_id(0, s));
  while (!frontier.empty()) {
    int ds = frontier.front();
    frontier.pop();
    int ds2 = tc.glue(ds);
    int t2 = side_tri(ds2);
    if (placed[t2]) continue;
    int t1 = side_tri(ds);
    int s1 = side_idx(ds);
    int s2 = side_idx(ds2);
    const Triangle& tr2 = tc.tri(t2);
    Vec3 pa = emb.face_corners[t1][s1];            // shared corner a
    Vec3 pb = emb.face_corners[t1][(s1 + 1) % 3];  // shared corner b
    Vec3 pc = emb.face_corners[t1][(s1 + 2) % 3];
    // partner side runs b -> a; its third corner goes on the far side of
    // plane (O, a, b) from c
    int vd = tr2.v[(s2 + 2) % 3];
    double l_ad = tr2.len[(s2 + 1) % 3];
    double l_db = tr2.len[(s2 + 2) % 3];
    Vec3 ref = cross(pa, pb);  // normal of plane through O, a, b
    double side_c = dot(ref, pc);
    Vec3 pd = trilaterate({0, 0, 0}, pa, pb, r[vd], l_ad, l_db, +1.0);
    double side_d = dot(ref, pd - Vec3{0, 0, 0});
    if ((side_c > 0) == (side_d > 0)) {
      pd = trilaterate({0, 0, 0}, pa, pb, r[vd], l_ad, l_db, -1.0);
    }
    emb.face_corners[t2][s2] = pb;
    emb.face_corners[t2][(s2 + 1) % 3] = pa;
    emb.face_corners[t2][(s2 + 2) % 3] = pd;
    placed[t2] = true;
    for (int s = 0; s < 3; ++s) {
      if (!placed[side_tri(tc.glue(side_id(t2, s)))]) frontier.push(side_id(t2, s));
    }
  }

  // collapse copies to centroids
  emb.coords.assign(n, {0, 0, 0});
  std::vector<int> copies(n, 0);
  for (int f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      emb.coords[tc.tri(f).v[c]] += emb.face_corners[f][c];
      copies[tc.tri(f).v[c]] += 1;
    }
  }
  for (int v = 0; v < n; ++v) emb.coords[v] = emb.coords[v] / copies[v];

  emb.max_vertex_scatter = 0;
  for (int v = 0; v < n; ++v) {
    std::vector<Vec3> own;
    for (int f = 0; f < nf; ++f) {
      for (int c = 0; c < 3; ++c) {
        if (tc.tri(f).v[c] == v) own.push_back(emb.face_corners[f][c]);
      }
    }
    for (size_t i = 0; i < own.size(); ++i) {
      for (size_t j = i + 1; j < own.size(); ++j) {
        emb.max_vertex_scatter = std::max(emb.max_vertex_scatter, dist(own[i], own[j]));
      }
    }
  }

  // global orientation: positive when faces wind counterclockwise from outside
  {
    auto& fc = emb.face_corners[0];
    double det = dot(fc[0], cross(fc[1], fc[2]));
    emb.orientation = det >= 0 ? 1.0 : -1.0;
  }

  return {emb, embedding_quality(m, T, emb)};
}

QualityReport embedding_quality(const PolyhedralMetric& m, const Triangulation& T,
                                const Embedding& emb) {
  (void)m;
  const SurfaceComplex& tc = T.complex;
  if (static_cast<int>(emb.coords.size()) != tc.vertex_count()) {
    throw std::invalid_argument("embedding_quality: missing coordinates");
  }
  QualityReport rep;
  rep.max_vertex_scatter = emb.max_vertex_scatter;
  rep.accuracy = 0;
  for (int ds : tc.edge_reps()) {
    double placed = dist(emb.coords[tc.side_from(ds)], emb.coords[tc.side_to(ds)]);
    double want = tc.side_length(ds);
    rep.accuracy = std::max(rep.accuracy, std::abs(placed / want - 1.0));
  }

  rep.convexity_slack = std::numeric_limits<double>::infinity();
  for (int ds : tc.edge_reps()) {
    int ds2 = tc.glue(ds);
    int t1 = side_tri(ds), s1 = side_idx(ds);
    int t2 = side_tri(ds2), s2 = side_idx(ds2);
    Vec3 pi = emb.coords[tc.tri(t1).v[s1]];
    Vec3 pj = emb.coords[tc.tri(t1).v[(s1 + 1) % 3]];
    Vec3 pk = emb.coords[tc.tri(t1).v[(s1 + 2) % 3]];
    Vec3 pl = emb.coords[tc.tri(t2).v[(s2 + 2) % 3]];
    Vec3 u = normalized(pj - pi);
    Vec3 wk = pk - pi;
    wk = wk - u * dot(u, wk);
    Vec3 wl = pl - pi;
    wl = wl - u * dot(u, wl);
    double chi = acos_clamped(dot(normalized(wk), normalized(wl)));
    double v6 = dot(pi - pl, cross(pj - pl, pk - pl)) * emb.orientation;
    double ext = (v6 >= 0 ? 1.0 : -1.0) * (kPi - chi);
    rep.convexity_slack = std::min(rep.convexity_slack, ext);
  }
  return rep;
}

double congruence_check(const std::vector<Vec3>& emb, const std::vector<Vec3>& reference) {
  if (emb.size() != reference.size()) {
    throw std::invalid_argument("congruence_check: vertex count mismatch");
  }
  auto dists = [](const std::vector<Vec3>& pts) {
    std::vector<double> d;
    for (size_t i = 0; i < pts.size(); ++i) {
      for (size_t j = i + 1; j < pts.size(); ++j) d.push_back(dist(pts[i], pts[j]));
    }
    std::sort(d.begin(), d.end());
    return d;
  };
  std::vector<double> da = dists(emb), db = dists(reference);
  double worst = 0;
  for (size_t k = 0; k < da.size(); ++k) {
    worst = std::max(worst, std::abs(da[k] - db[k]) / std::max(db[k], 1e-300));
  }
  return worst;
}

std::string export_obj(const Embedding& emb, const Triangulation& T) {
  std::ostringstream os;
  char buf[128];
  for (const Vec3& p : emb.coords) {
    std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
    os << buf;
  }
  const SurfaceComplex& tc = T.complex;
  for (int f = 0; f < tc.triangle_count(); ++f) {
    const Triangle& tr = tc.tri(f);
    if (emb.orientation >= 0) {
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", tr.v[0] + 1, tr.v[1] + 1,
                    tr.v[2] + 1);
    } else {
      std::snprintf(buf, sizeof(buf), "f %d %d %d\n", tr.v[0] + 1, tr.v[2] + 1,
                    tr.v[1] + 1);
    }
    os << buf;
  }
  return os.str();
}

std::string QualityReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"accuracy\":" << accuracy << ",\"convexity_slack\":" << convexity_slack
     << ",\"max_vertex_scatter\":" << max_vertex_scatter << "}\n";
  return os.str();
}

} // namespace alex
