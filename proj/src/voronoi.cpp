#include "alex/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace alex {

namespace {

struct Site {
  Vec2 pos;  // canonical chart of the face
  double sigma = 0;
  int source = -1;
  bool corner = false;
  Vec2 e0, e1;  // window span endpoints (non-corner sites)

  double dist_to(Vec2 q) const { return sigma + dist(pos, q); }
};

bool site_valid(const Site& s, Vec2 q) {
  if (s.corner) return true;
  Vec2 d = q - s.pos;
  double nd = norm(d) + 1e-300;
  double c0 = cross(d, s.e0 - s.pos) / (nd * (norm(s.e0 - s.pos) + 1e-300));
  double c1 = cross(d, s.e1 - s.pos) / (nd * (norm(s.e1 - s.pos) + 1e-300));
  const double tol = 1e-9;
  return (c0 >= -tol && c1 <= tol) || (c0 <= tol && c1 >= -tol);
}

struct FaceSites {
  std::vector<Site> sites;
};

struct ChartRef {
  int tri = -1;
  Rigid2 from_primary;  // primary-chart coords -> this face's canonical coords
  Vec2 pos;             // cluster position in this chart
};

struct Port {
  int src_a = -1, src_b = -1;  // consecutive sources, CCW
  Vec2 tangent;                // outgoing bisector direction, primary chart
  int matched_edge = -1;
};

struct Cluster {
  int tri = -1;  // primary chart
  Vec2 pos;
  double u = 0;
  bool on_edge = false;
  int edge_rep = -1;
  double edge_t = 0;
  std::vector<int> sources;     // CCW
  std::vector<double> angles;   // primary chart
  std::vector<ChartRef> charts;
  std::vector<Port> ports;
};

class Builder {
public:
  Builder(const PolyhedralMetric& m, const DistanceField& field)
      : m_(m), field_(field) {
    scale_ = 0;
    min_len_ = std::numeric_limits<double>::infinity();
    for (int ds = 0; ds < m_.side_count(); ++ds) {
      scale_ = std::max(scale_, m_.side_length(ds));
      min_len_ = std::min(min_len_, m_.side_length(ds));
    }
    dist_tie_ = 1e-7 * scale_;
    pos_merge_ = 1e-6 * scale_;
    edge_snap_ = 1e-7 * scale_;
  }

  VoronoiDiagram build() {
    VoronoiDiagram out;
    out.cell_count = static_cast<int>(field_.sources.size());
    out.cell_edges.resize(out.cell_count);
    if (out.cell_count == 1) return out;

    build_sites();
    find_clusters();
    if (clusters_.empty()) {
      throw std::runtime_error("voronoi: no diagram vertices (unsupported configuration)");
    }
    setup_ports();
    index_clusters_by_face();
    trace_all(out);
    build_cells(out);

    for (const Cluster& c : clusters_) {
      VoronoiVertex v;
      v.point = c.on_edge ? SurfacePoint::on_edge(c.edge_rep, c.edge_t)
                          : SurfacePoint::in_face(c.tri, c.pos);
      v.radius = c.u;
      v.sources = c.sources;
      v.angles = c.angles;
      out.vertices.push_back(std::move(v));
    }
    return out;
  }

private:
  const PolyhedralMetric& m_;
  const DistanceField& field_;
  double scale_ = 1, min_len_ = 1;
  double dist_tie_ = 0, pos_merge_ = 0, edge_snap_ = 0;
  std::vector<FaceSites> sites_;
  std::vector<Cluster> clusters_;
  std::vector<std::vector<std::pair<int, int>>> face_clusters_;  // tri -> (cluster, chart idx)

  void build_sites() {
    sites_.resize(m_.triangle_count());
    for (int t = 0; t < m_.triangle_count(); ++t) {
      auto chart = m_.chart(t);
      for (int s = 0; s < 3; ++s) {
        int ds = side_id(t, s);
        Rigid2 inv = m_.canonical_to_side(ds).inverse();
        for (const Window& w : field_.side_windows[ds]) {
          Site site;
          site.pos = inv.apply(w.src);
          site.sigma = w.sigma;
          site.source = w.source;
          site.e0 = inv.apply({w.b0, 0});
          site.e1 = inv.apply({w.b1, 0});
          sites_[t].sites.push_back(site);
        }
        Site c;
        c.pos = chart[s];
        c.sigma = field_.vertex[m_.side_from(ds)].dist;
        c.source = field_.vertex[m_.side_from(ds)].source;
        c.corner = true;
        sites_[t].sites.push_back(c);
      }
    }
  }

  double face_distance(int tri, Vec2 q) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Site& s : sites_[tri].sites) {
      if (!site_valid(s, q)) continue;
      best = std::min(best, s.dist_to(q));
    }
    return best;
  }

  const Site* best_site_for_source(int tri, Vec2 q, int source) const {
    const Site* best = nullptr;
    double bd = std::numeric_limits<double>::infinity();
    for (const Site& s : sites_[tri].sites) {
      if (s.source != source || !site_valid(s, q)) continue;
      double d = s.dist_to(q);
      if (d < bd) {
        bd = d;
        best = &s;
      }
    }
    return best;
  }

  // Equal-power point of three additively weighted sites: q on a u-parametric
  // line, then a quadratic in u.
  void apollonius_candidates(const Site& s1, const Site& s2, const Site& s3,
                             std::vector<std::pair<Vec2, double>>& out) const {
    Vec2 p1 = s1.pos, p2 = s2.pos, p3 = s3.pos;
    double m00 = 2 * (p2.x - p1.x), m01 = 2 * (p2.y - p1.y);
    double m10 = 2 * (p3.x - p1.x), m11 = 2 * (p3.y - p1.y);
    double det = m00 * m11 - m01 * m10;
    if (std::abs(det) < 1e-12 * scale_ * scale_) return;
    double b1 = (s1.sigma * s1.sigma - s2.sigma * s2.sigma) - (norm2(p1) - norm2(p2));
    double b2 = (s1.sigma * s1.sigma - s3.sigma * s3.sigma) - (norm2(p1) - norm2(p3));
    double c1 = -2 * (s1.sigma - s2.sigma);
    double c2 = -2 * (s1.sigma - s3.sigma);
    Vec2 A{(b1 * m11 - b2 * m01) / det, (m00 * b2 - m10 * b1) / det};
    Vec2 B{(c1 * m11 - c2 * m01) / det, (m00 * c2 - m10 * c1) / det};
    Vec2 w = A - p1;
    double qa = norm2(B) - 1.0;
    double qb = 2.0 * (dot(w, B) + s1.sigma);
    double qc = norm2(w) - s1.sigma * s1.sigma;
    double sigma_max = std::max({s1.sigma, s2.sigma, s3.sigma});
    auto emit = [&](double u) {
      if (!(u >= sigma_max - dist_tie_) || !std::isfinite(u)) return;
      Vec2 q = A + B * u;
      out.push_back({q, u});
    };
    if (std::abs(qa) < 1e-14) {
      if (std::abs(qb) > 1e-300) emit(-qc / qb);
      return;
    }
    double disc = qb * qb - 4 * qa * qc;
    if (disc < 0) return;
    double sq = std::sqrt(disc);
    double t = -0.5 * (qb + (qb >= 0 ? sq : -sq));
    if (std::abs(qa) > 1e-300) emit(t / qa);
    if (std::abs(t) > 1e-300) emit(qc / t);
  }

  bool inside_face(int tri, Vec2 q, double slack) const {
    auto chart = m_.chart(tri);
    for (int s = 0; s < 3; ++s) {
      Vec2 e0 = chart[s], e1 = chart[(s + 1) % 3];
      if (cross(e1 - e0, q - e0) < -slack * dist(e0, e1)) return false;
    }
    return true;
  }

  void find_clusters() {
    for (int t = 0; t < m_.triangle_count(); ++t) {
      const auto& ss = sites_[t].sites;
      int k = static_cast<int>(ss.size());
      std::vector<std::pair<Vec2, double>> cands;
      for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
          if (ss[i].source == ss[j].source) continue;
          for (int l = j + 1; l < k; ++l) {
            if (ss[l].source == ss[i].source || ss[l].source == ss[j].source) continue;
            cands.clear();
            apollonius_candidates(ss[i], ss[j], ss[l], cands);
            for (auto& [q, u] : cands) {
              if (!inside_face(t, q, 1e-7)) continue;
              if (!site_valid(ss[i], q) || !site_valid(ss[j], q) || !site_valid(ss[l], q))
                continue;
              double d = face_distance(t, q);
              if (u > d + dist_tie_) continue;  // beaten by another source
              accept_candidate(t, q, u);
            }
          }
        }
      }
    }
    for (Cluster& c : clusters_) finish_cluster(c);
    // Only genuine diagram vertices: at least three distinct cells meet.
    clusters_.erase(std::remove_if(clusters_.begin(), clusters_.end(),
                                   [](const Cluster& c) { return c.sources.size() < 3; }),
                    clusters_.end());
  }

  void accept_candidate(int tri, Vec2 q, double u) {
    // Snap onto an edge when close, so copies found in both adjacent charts merge.
    bool on_edge = false;
    int edge_rep = -1;
    double edge_t = 0;
    auto chart = m_.chart(tri);
    for (int s = 0; s < 3; ++s) {
      Vec2 e0 = chart[s], e1 = chart[(s + 1) % 3];
      double len = dist(e0, e1);
      double off = cross(e1 - e0, q - e0) / len;
      if (std::abs(off) <= edge_snap_) {
        double tpar = dot(q - e0, e1 - e0) / len;
        if (tpar > -edge_snap_ && tpar < len + edge_snap_) {
          int ds = side_id(tri, s);
          int rep = m_.edge_rep(ds);
          on_edge = true;
          edge_rep = rep;
          edge_t = (rep == ds) ? tpar : len - tpar;
          q = e0 + (e1 - e0) * (tpar / len);  // project exactly onto the side
          break;
        }
      }
    }
    for (Cluster& c : clusters_) {
      if (on_edge && c.on_edge && c.edge_rep == edge_rep &&
          std::abs(c.edge_t - edge_t) < pos_merge_) {
        return;  // already recorded
      }
      if (!on_edge && !c.on_edge && c.tri == tri && dist(c.pos, q) < pos_merge_) {
        return;
      }
    }
    Cluster c;
    c.u = u;
    c.on_edge = on_edge;
    c.edge_rep = edge_rep;
    c.edge_t = edge_t;
    if (on_edge) {
      // primary chart = triangle of the representative side
      int tri_a = side_tri(edge_rep);
      Rigid2 inv = m_.canonical_to_side(edge_rep).inverse();
      c.tri = tri_a;
      c.pos = inv.apply({edge_t, 0});
    } else {
      c.tri = tri;
      c.pos = q;
    }
    clusters_.push_back(c);
  }

  void finish_cluster(Cluster& c) {
    // chart list
    ChartRef primary;
    primary.tri = c.tri;
    primary.from_primary = Rigid2::identity();
    primary.pos = c.pos;
    c.charts.push_back(primary);
    if (c.on_edge) {
      int ds_a = c.edge_rep;
      int ds_b = m_.glue(ds_a);
      ChartRef other;
      other.tri = side_tri(ds_b);
      // primary canonical -> frame(ds_a) -> cross -> frame(ds_b) -> canonical(tri_b)
      other.from_primary = m_.canonical_to_side(ds_b).inverse().compose(
          m_.cross_transform(ds_a).compose(m_.canonical_to_side(ds_a)));
      other.pos = other.from_primary.apply(c.pos);
      c.charts.push_back(other);
    }
    // gather tied source directions across charts
    std::vector<std::pair<double, int>> dirs;
    for (const ChartRef& ch : c.charts) {
      Rigid2 back = ch.from_primary.inverse();
      for (const Site& s : sites_[ch.tri].sites) {
        if (!site_valid(s, ch.pos)) continue;
        if (std::abs(s.dist_to(ch.pos) - c.u) > dist_tie_) continue;
        Vec2 d = s.pos - ch.pos;
        if (norm(d) < 1e-12 * scale_) continue;
        Vec2 dp = {back.c * d.x - back.s * d.y, back.s * d.x + back.c * d.y};
        double ang = std::atan2(dp.y, dp.x);
        bool dup = false;
        for (auto& [a, src] : dirs) {
          if (src != s.source) continue;
          double da = std::remainder(a - ang, kTwoPi);
          if (std::abs(da) < 1e-6) {
            dup = true;
            break;
          }
        }
        if (!dup) dirs.push_back({ang, s.source});
      }
    }
    std::sort(dirs.begin(), dirs.end());
    for (auto& [a, src] : dirs) {
      c.angles.push_back(a);
      c.sources.push_back(src);
    }
  }

  void setup_ports() {
    for (Cluster& c : clusters_) {
      int d = static_cast<int>(c.sources.size());
      c.ports.resize(d);
      for (int j = 0; j < d; ++j) {
        Port& p = c.ports[j];
        p.src_a = c.sources[j];
        p.src_b = c.sources[(j + 1) % d];
        double a0 = c.angles[j];
        double a1 = c.angles[(j + 1) % d];
        double gap = a1 - a0;
        if (j + 1 == d) gap += kTwoPi;
        if (gap < 0) gap += kTwoPi;
        p.tangent = bisector_tangent(a0, a1, a0 + 0.5 * gap);
      }
    }
  }

  // Outgoing direction of the bisector between the sources at angles a0, a1:
  // perpendicular to grad(d_a - d_b), oriented into the angular gap.
  static Vec2 bisector_tangent(double a0, double a1, double mid_angle) {
    Vec2 ga{-std::cos(a0), -std::sin(a0)};  // grad d_a = unit(q - S_a) = -toward
    Vec2 gb{-std::cos(a1), -std::sin(a1)};
    Vec2 g = ga - gb;
    Vec2 mid{std::cos(mid_angle), std::sin(mid_angle)};
    if (norm(g) < 1e-12) return mid;
    Vec2 t = normalized(perp(g));
    return dot(t, mid) >= 0 ? t : t * -1.0;
  }

  void index_clusters_by_face() {
    face_clusters_.assign(m_.triangle_count(), {});
    for (int ci = 0; ci < static_cast<int>(clusters_.size()); ++ci) {
      Cluster& c = clusters_[ci];
      for (int k = 0; k < static_cast<int>(c.charts.size()); ++k) {
        face_clusters_[c.charts[k].tri].push_back({ci, k});
      }
      // an arc can step across a side right next to a cluster and then look
      // for it in the neighboring chart; register a chart there as well
      double reach = 2.5 * arc_step();
      auto chart = m_.chart(c.tri);
      for (int s = 0; s < 3; ++s) {
        Vec2 e0 = chart[s], e1 = chart[(s + 1) % 3];
        Vec2 d = e1 - e0;
        double t = std::clamp(dot(c.pos - e0, d) / norm2(d), 0.0, 1.0);
        if (dist(c.pos, e0 + d * t) > reach) continue;
        int ds = side_id(c.tri, s);
        int nbr = side_tri(m_.glue(ds));
        bool have = false;
        for (const ChartRef& ch : c.charts) have |= ch.tri == nbr;
        if (have) continue;
        ChartRef extra;
        extra.tri = nbr;
        extra.from_primary = side_transition(ds);
        extra.pos = extra.from_primary.apply(c.pos);
        c.charts.push_back(extra);
        face_clusters_[nbr].push_back({ci, static_cast<int>(c.charts.size()) - 1});
      }
    }
  }

  double arc_step() const { return 0.05 * min_len_; }

  Rigid2 side_transition(int ds) const {
    int dsn = m_.glue(ds);
    return m_.canonical_to_side(dsn).inverse().compose(
        m_.cross_transform(ds).compose(m_.canonical_to_side(ds)));
  }

  void trace_all(VoronoiDiagram& out) {
    for (int ci = 0; ci < static_cast<int>(clusters_.size()); ++ci) {
      for (int pj = 0; pj < static_cast<int>(clusters_[ci].ports.size()); ++pj) {
        if (clusters_[ci].ports[pj].matched_edge >= 0) continue;
        trace_edge(ci, pj, out);
      }
    }
  }

  void trace_edge(int ci, int pj, VoronoiDiagram& out) {
    Cluster& c0 = clusters_[ci];
    const Port& port = c0.ports[pj];
    int sx = port.src_a, sy = port.src_b;

    int tri = c0.tri;
    Vec2 q = c0.pos;
    Vec2 dir = port.tangent;
    double h = arc_step();
    double r_stop = 1.5 * h;

    VoronoiEdge edge;
    edge.va = ci;
    edge.port_a = pj;
    edge.src_a = sx;
    edge.src_b = sy;
    edge.arc.push_back({tri, q});

    const int step_cap = 200000;
    for (int step = 1; step <= step_cap; ++step) {
      Vec2 q_new = q + dir * h;
      // corrector: pull back onto the bisector
      for (int it = 0; it < 12; ++it) {
        const Site* sa = best_site_for_source(tri, q_new, sx);
        const Site* sb = best_site_for_source(tri, q_new, sy);
        if (!sa || !sb) break;
        double g = sa->dist_to(q_new) - sb->dist_to(q_new);
        Vec2 grad = normalized(q_new - sa->pos) - normalized(q_new - sb->pos);
        double n2 = norm2(grad);
        if (n2 < 1e-18) break;
        q_new = q_new - grad * (g / n2);
        if (std::abs(g) < 1e-12 * (scale_ + c0.u)) break;
      }
      // face walk when the step leaves the triangle
      int guard = 0;
      while (!inside_face(tri, q_new, 1e-9) && guard++ < 8) {
        auto chart = m_.chart(tri);
        int cross_side = -1;
        double best_t = std::numeric_limits<double>::infinity();
        for (int s = 0; s < 3; ++s) {
          Vec2 e0 = chart[s], e1 = chart[(s + 1) % 3];
          double f0 = cross(e1 - e0, q - e0);
          double f1 = cross(e1 - e0, q_new - e0);
          if (f1 < 0 && f0 >= f1) {
            double t = f0 - f1 > 1e-300 ? f0 / (f0 - f1) : 0.0;
            if (f0 >= -1e-9 * dist(e0, e1) && t < best_t) {
              best_t = t;
              cross_side = s;
            }
          }
        }
        if (cross_side < 0) break;
        int ds = side_id(tri, cross_side);
        Rigid2 T = side_transition(ds);
        q = T.apply(q);
        q_new = T.apply(q_new);
        dir = Vec2{T.c * dir.x - T.s * dir.y, T.s * dir.x + T.c * dir.y};
        tri = side_tri(m_.glue(ds));
        // re-run a correction in the new chart
        for (int it = 0; it < 8; ++it) {
          const Site* sa = best_site_for_source(tri, q_new, sx);
          const Site* sb = best_site_for_source(tri, q_new, sy);
          if (!sa || !sb) break;
          double g = sa->dist_to(q_new) - sb->dist_to(q_new);
          Vec2 grad = normalized(q_new - sa->pos) - normalized(q_new - sb->pos);
          double n2 = norm2(grad);
          if (n2 < 1e-18) break;
          q_new = q_new - grad * (g / n2);
          if (std::abs(g) < 1e-12 * (scale_ + c0.u)) break;
        }
      }

      Vec2 step_dir = q_new - q;
      if (norm(step_dir) > 1e-14 * scale_) dir = normalized(step_dir);
      q = q_new;
      edge.arc.push_back({tri, q});

      // arrival test
      for (auto [ck, chk] : face_clusters_[tri]) {
        const Cluster& cc = clusters_[ck];
        const ChartRef& ch = cc.charts[chk];
        if (dist(q, ch.pos) > r_stop) continue;
        if (ck == ci && step <= 4) continue;
        int best_port = -1;
        double best_dot = -2;
        for (int bp = 0; bp < static_cast<int>(cc.ports.size()); ++bp) {
          const Port& cp = cc.ports[bp];
          if (!((cp.src_a == sx && cp.src_b == sy) || (cp.src_a == sy && cp.src_b == sx)))
            continue;
          if (ck == ci && bp == pj) continue;
          if (cp.matched_edge >= 0) continue;
          // port tangent in the current chart
          Vec2 tloc = {ch.from_primary.c * cp.tangent.x - ch.from_primary.s * cp.tangent.y,
                       ch.from_primary.s * cp.tangent.x + ch.from_primary.c * cp.tangent.y};
          double dd = dot(tloc, dir * -1.0);
          if (dd > best_dot) {
            best_dot = dd;
            best_port = bp;
          }
        }
        if (best_port < 0) continue;
        edge.vb = ck;
        edge.port_b = best_port;
        // samples this close to the junction may graze the third cell; keep
        // only the clean interior of the arc
        while (edge.arc.size() > 1 && edge.arc.back().tri == ch.tri &&
               dist(edge.arc.back().pos, ch.pos) < r_stop * 1.25) {
          edge.arc.pop_back();
        }
        edge.arc.push_back({ch.tri, ch.pos});
        edge.chord_len = chord_from_cluster(c0, pj);
        int idx = static_cast<int>(out.edges.size());
        clusters_[ci].ports[pj].matched_edge = idx;
        clusters_[ck].ports[best_port].matched_edge = idx;
        out.edges.push_back(std::move(edge));
        return;
      }
    }
    std::ostringstream msg;
    msg << "voronoi: arc tracing did not reach a diagram vertex (sources " << sx << ","
        << sy << " from vertex " << ci << " port " << pj << "; " << edge.arc.size()
        << " samples, last in face " << tri << " at " << q.x << "," << q.y << ")";
    throw std::runtime_error(msg.str());
  }

  double chord_from_cluster(const Cluster& c, int pj) const {
    int d = static_cast<int>(c.sources.size());
    double a0 = c.angles[pj];
    double a1 = c.angles[(pj + 1) % d];
    Vec2 x{c.u * std::cos(a0), c.u * std::sin(a0)};
    Vec2 y{c.u * std::cos(a1), c.u * std::sin(a1)};
    return dist(x, y);
  }

  void build_cells(VoronoiDiagram& out) {
    // Boundary walk per source cell. At a vertex, a cell occupies the wedge
    // between its incoming and outgoing ports.
    int nc = static_cast<int>(clusters_.size());
    std::vector<std::vector<bool>> visited(nc);
    for (int i = 0; i < nc; ++i) visited[i].assign(clusters_[i].sources.size(), false);

    for (int ci = 0; ci < nc; ++ci) {
      Cluster& c = clusters_[ci];
      int d = static_cast<int>(c.sources.size());
      for (int k = 0; k < d; ++k) {
        if (visited[ci][k]) continue;
        int src = c.sources[k];
        // walk the boundary of cell `src` starting from occurrence k at ci
        int cur_cluster = ci;
        int cur_occ = k;
        std::vector<int> edge_list;
        int guard = 0;
        do {
          visited[cur_cluster][cur_occ] = true;
          Cluster& cc = clusters_[cur_cluster];
          int out_port = cur_occ;  // port (sources[occ], sources[occ+1])
          int eidx = cc.ports[out_port].matched_edge;
          if (eidx < 0) throw std::runtime_error("voronoi: unmatched port");
          edge_list.push_back(eidx);
          const VoronoiEdge& e = out.edges[eidx];
          int nxt_cluster, nxt_port;
          if (e.va == cur_cluster && e.port_a == out_port) {
            nxt_cluster = e.vb;
            nxt_port = e.port_b;
          } else {
            nxt_cluster = e.va;
            nxt_port = e.port_a;
          }
          Cluster& cn = clusters_[nxt_cluster];
          int dn = static_cast<int>(cn.sources.size());

          // arriving port should read (other, src); the wedge of src continues
          // at occurrence (port index + 1)
          int arr = nxt_port;
          int occ2 = (arr + 1) % dn;
          if (cn.sources[occ2] != src) {
            // orientation safeguard: search the occurrence adjacent to arr
            if (cn.sources[arr] == src) {
              occ2 = arr;
            } else {
              throw std::runtime_error("voronoi: inconsistent cell walk");
            }
          }
          cur_cluster = nxt_cluster;
          cur_occ = occ2;
          if (++guard > 10000) throw std::runtime_error("voronoi: cell walk did not close");
        } while (!(cur_cluster == ci && cur_occ == k));
        auto& cell = out.cell_edges[src];
        if (!cell.empty()) {
          throw std::runtime_error("voronoi: cell boundary is not a single curve");
        }
        cell = edge_list;
      }
    }
  }
};

} // namespace

VoronoiDiagram voronoi_diagram(const PolyhedralMetric& m, const DistanceField& field) {
  Builder b(m, field);
  return b.build();
}

VoronoiDiagram voronoi_diagram(const PolyhedralMetric& m) {
  std::vector<SurfacePoint> sources;
  for (int v = 0; v < m.vertex_count(); ++v) sources.push_back(SurfacePoint::at_vertex(v));
  DistanceField f = run_mmp(m, sources);
  return voronoi_diagram(m, f);
}

} // namespace alex
