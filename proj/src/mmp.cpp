#include "alex/mmp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace alex {

namespace {

struct PoolWindow {
  Window w;
  bool alive = true;
  bool propagated = false;
};

struct Event {
  double key = 0;
  int source = -1;
  int edge_rep = -1;
  double span0 = 0;
  long long serial = 0;
  bool is_vertex = false;
  int window_id = -1;
  // vertex event payload
  int vertex = -1;
  int via_ds = -1;
  Vec2 via_src;
  double via_sigma = 0;
  int which_end = 0;
};

struct EventOrder {
  bool operator()(const Event& a, const Event& b) const {
    if (a.key != b.key) return a.key > b.key;
    if (a.source != b.source) return a.source > b.source;
    if (a.edge_rep != b.edge_rep) return a.edge_rep > b.edge_rep;
    if (a.span0 != b.span0) return a.span0 > b.span0;
    return a.serial > b.serial;
  }
};

class Engine {
public:
  Engine(const PolyhedralMetric& m, const std::vector<SurfacePoint>& sources,
         const MmpOptions& opt)
      : m_(m), opt_(opt) {
    field_.complex = &m_;
    field_.sources = sources;
    field_.side_windows.resize(m_.side_count());
    field_.vertex.resize(m_.vertex_count());
    lists_.resize(m_.side_count());
    scale_ = 0;
    for (int ds = 0; ds < m_.side_count(); ++ds) scale_ = std::max(scale_, m_.side_length(ds));
    dist_tol_ = 1e-11 * scale_;

    side_frames_.resize(m_.side_count());
    cross_.resize(m_.side_count());
    for (int ds = 0; ds < m_.side_count(); ++ds) {
      side_frames_[ds] = m_.canonical_to_side(ds);
      cross_[ds] = m_.cross_transform(ds);
    }
    cone_.resize(m_.vertex_count());
    for (int v = 0; v < m_.vertex_count(); ++v) cone_[v] = m_.cone_angle(v);
  }

  DistanceField run() {
    seed_sources();
    loop();
    finish();
    return std::move(field_);
  }

private:
  const PolyhedralMetric& m_;
  MmpOptions opt_;
  DistanceField field_;
  std::vector<PoolWindow> pool_;
  std::vector<std::vector<int>> lists_;  // per side, window ids sorted by b0
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  std::vector<Rigid2> side_frames_;
  std::vector<Rigid2> cross_;
  std::vector<double> cone_;
  std::vector<bool> vertex_done_;
  double scale_ = 1;
  double dist_tol_ = 1e-12;
  long long serial_ = 0;
  double last_key_ = -std::numeric_limits<double>::infinity();

  double len_tol(int ds) const { return 1e-12 * std::max(m_.side_length(ds), scale_); }

  void push_window_event(int id) {
    const Window& w = pool_[id].w;
    Event e;
    e.key = w.min_dist();
    e.source = w.source;
    e.edge_rep = m_.edge_rep(w.ds);
    e.span0 = w.b0;
    e.serial = serial_++;
    e.window_id = id;
    queue_.push(e);
  }

  void push_vertex_event(const Window& w, int which_end) {
    double L = m_.side_length(w.ds);
    double x = which_end == 0 ? 0.0 : L;
    Event e;
    e.is_vertex = true;
    e.key = w.dist_at(x);
    e.source = w.source;
    e.edge_rep = m_.edge_rep(w.ds);
    e.span0 = w.b0;
    e.serial = serial_++;
    e.vertex = which_end == 0 ? m_.side_from(w.ds) : m_.side_to(w.ds);
    e.via_ds = w.ds;
    e.via_src = w.src;
    e.via_sigma = w.sigma;
    e.which_end = which_end;
    queue_.push(e);
  }

  // Distance comparison with deterministic tie-breaking: smaller distance
  // wins; ties go to the lower source id, then to the incumbent.
  bool challenger_wins(const Window& cand, const Window& old, double x) const {
    double dc = cand.dist_at(x);
    double dold = old.dist_at(x);
    if (dc < dold - dist_tol_) return true;
    if (dold < dc - dist_tol_) return false;
    return cand.source < old.source;
  }

  // Parameters in (a, b) where the two distance functions cross.
  std::vector<double> crossings(const Window& w1, const Window& w2, double a,
                                double b) const {
    std::vector<double> roots;
    double p = w1.src.x, py = w1.src.y;
    double q = w2.src.x, qy = w2.src.y;
    double c = w2.sigma - w1.sigma;
    double A = 2.0 * (q - p);
    double B = (p * p + py * py) - (q * q + qy * qy);
    auto try_root = [&](double x) {
      if (!(x > a && x < b)) return;
      double d1 = w1.dist_at(x), d2 = w2.dist_at(x);
      if (std::abs(d1 - d2) > 64.0 * dist_tol_ + 1e-12 * std::abs(d1)) return;
      for (double r : roots) {
        if (std::abs(r - x) < 1e-12 * (1.0 + std::abs(x))) return;
      }
      roots.push_back(x);
    };
    if (std::abs(c) <= dist_tol_) {
      if (std::abs(A) > 1e-300) try_root(-B / A);
    } else {
      // (A x + B - c^2 ... ) squared form of sqrt(Q1) - sqrt(Q2) = c
      double Bc = B - c * c;
      double qa = A * A - 4.0 * c * c;
      double qb = 2.0 * A * Bc + 8.0 * c * c * q;
      double qc = Bc * Bc - 4.0 * c * c * (q * q + qy * qy);
      if (std::abs(qa) < 1e-14 * (std::abs(qb) + std::abs(qc) + 1.0)) {
        if (std::abs(qb) > 1e-300) try_root(-qc / qb);
      } else {
        double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0) {
          double sq = std::sqrt(disc);
          // stable quadratic roots
          double t = -0.5 * (qb + (qb >= 0 ? sq : -sq));
          if (std::abs(qa) > 1e-300) try_root(t / qa);
          if (std::abs(t) > 1e-300) try_root(qc / t);
        }
      }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  void insert_window(Window cand) {
    double L = m_.side_length(cand.ds);
    double tol = len_tol(cand.ds);
    cand.b0 = std::max(cand.b0, 0.0);
    cand.b1 = std::min(cand.b1, L);
    if (cand.b1 - cand.b0 < tol) return;
    if (cand.src.y > 0) {
      if (cand.src.y > 1e-6 * scale_) return;  // inconsistent unfolding, drop
      cand.src.y = 0;
    }

    std::vector<int>& list = lists_[cand.ds];
    std::vector<std::pair<double, double>> cand_spans{{cand.b0, cand.b1}};

    std::vector<int> old_list = list;
    for (int id : old_list) {
      PoolWindow& pw = pool_[id];
      if (!pw.alive) continue;
      const Window e = pw.w;
      double a = std::max(e.b0, cand.b0);
      double b = std::min(e.b1, cand.b1);
      if (b - a < tol * 0.5) continue;

      std::vector<double> cuts = crossings(cand, e, a, b);
      std::vector<double> pts{a};
      for (double r : cuts) pts.push_back(r);
      pts.push_back(b);

      std::vector<std::pair<double, double>> e_keep;
      if (e.b0 < a) e_keep.push_back({e.b0, a});
      std::vector<std::pair<double, double>> e_lost;
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double x0 = pts[i], x1 = pts[i + 1];
        if (x1 - x0 < tol * 0.25) {
          // degenerate cell; attribute by midpoint anyway
        }
        double mid = 0.5 * (x0 + x1);
        if (challenger_wins(cand, e, mid)) {
          e_lost.push_back({x0, x1});
        } else {
          e_keep.push_back({x0, x1});
        }
      }
      if (e.b1 > b) e_keep.push_back({b, e.b1});

      if (e_lost.empty()) {
        // cand loses the whole overlap [a, b]
        subtract_span(cand_spans, a, b);
        continue;
      }
      for (auto [x0, x1] : e_keep) {
        if (x1 > cand.b0 && x0 < cand.b1) {
          subtract_span(cand_spans, std::max(x0, cand.b0), std::min(x1, cand.b1));
        }
      }
      replace_window(cand.ds, id, e_keep);
    }

    for (auto [x0, x1] : cand_spans) {
      if (x1 - x0 < tol) continue;
      Window piece = cand;
      piece.b0 = x0;
      piece.b1 = x1;
      add_window(piece, false);
    }
  }

  static void subtract_span(std::vector<std::pair<double, double>>& spans, double a,
                            double b) {
    std::vector<std::pair<double, double>> out;
    for (auto [x0, x1] : spans) {
      if (b <= x0 || a >= x1) {
        out.push_back({x0, x1});
        continue;
      }
      if (a > x0) out.push_back({x0, a});
      if (b < x1) out.push_back({b, x1});
    }
    spans = std::move(out);
  }

  void replace_window(int ds, int id, const std::vector<std::pair<double, double>>& keep) {
    PoolWindow& pw = pool_[id];
    Window base = pw.w;
    bool was_propagated = pw.propagated;
    pw.alive = false;
    std::vector<int>& list = lists_[ds];
    list.erase(std::remove(list.begin(), list.end(), id), list.end());
    double tol = len_tol(ds);
    // merge adjacent keep pieces
    std::vector<std::pair<double, double>> merged;
    for (auto span : keep) {
      if (!merged.empty() && span.first - merged.back().second < tol * 0.5) {
        merged.back().second = span.second;
      } else {
        merged.push_back(span);
      }
    }
    for (auto [x0, x1] : merged) {
      if (x1 - x0 < tol) continue;
      Window piece = base;
      piece.b0 = x0;
      piece.b1 = x1;
      add_window(piece, was_propagated);
    }
  }

  void add_window(Window w, bool propagated) {
    int id = static_cast<int>(pool_.size());
    pool_.push_back({w, true, propagated});
    std::vector<int>& list = lists_[w.ds];
    auto it = std::lower_bound(list.begin(), list.end(), w.b0, [this](int lhs, double b0) {
      return pool_[lhs].w.b0 < b0;
    });
    list.insert(it, id);
    if (!propagated) push_window_event(id);
    double L = m_.side_length(w.ds);
    double tol = len_tol(w.ds);
    if (w.b0 <= tol) push_vertex_event(w, 0);
    if (w.b1 >= L - tol) push_vertex_event(w, 1);
  }

  void seed_sources() {
    vertex_done_.assign(m_.vertex_count(), false);
    if (field_.sources.empty()) throw std::invalid_argument("sources must be nonempty");
    for (size_t i = 0; i < field_.sources.size(); ++i) {
      for (size_t j = i + 1; j < field_.sources.size(); ++j) {
        if (same_point(field_.sources[i], field_.sources[j])) {
          throw std::invalid_argument("duplicate sources");
        }
      }
    }
    for (int k = 0; k < static_cast<int>(field_.sources.size()); ++k) {
      const SurfacePoint& sp = field_.sources[k];
      switch (sp.kind) {
        case SurfacePoint::Kind::Vertex: {
          int v = sp.vertex;
          field_.vertex[v] = {0.0, k, -1, Vec2{0, 0}, 0.0};
          vertex_done_[v] = true;
          emit_from_vertex(v, 0.0, k);
          break;
        }
        case SurfacePoint::Kind::Face: {
          for (int s = 0; s < 3; ++s) {
            int ds = side_id(sp.tri, s);
            Vec2 in_side = side_frames_[ds].apply(sp.pos);
            Window w;
            w.ds = m_.glue(ds);
            w.b0 = 0;
            w.b1 = m_.side_length(w.ds);
            w.src = cross_[ds].apply(in_side);
            w.sigma = 0;
            w.source = k;
            insert_window(w);
          }
          break;
        }
        case SurfacePoint::Kind::Edge: {
          int ds = sp.ds;
          double L = m_.side_length(ds);
          Window w;
          w.ds = ds;
          w.b0 = 0;
          w.b1 = L;
          w.src = {sp.t, 0.0};
          w.sigma = 0;
          w.source = k;
          insert_window(w);
          Window w2;
          w2.ds = m_.glue(ds);
          w2.b0 = 0;
          w2.b1 = L;
          w2.src = {L - sp.t, 0.0};
          w2.sigma = 0;
          w2.source = k;
          insert_window(w2);
          break;
        }
      }
    }
  }

  static bool same_point(const SurfacePoint& a, const SurfacePoint& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case SurfacePoint::Kind::Vertex:
        return a.vertex == b.vertex;
      case SurfacePoint::Kind::Edge:
        return a.ds == b.ds && a.t == b.t;
      case SurfacePoint::Kind::Face:
        return a.tri == b.tri && a.pos.x == b.pos.x && a.pos.y == b.pos.y;
    }
    return false;
  }

  // Pseudosource (or original source) emission: light every incident triangle
  // through its far side, plus along-edge windows on the incident edges.
  void emit_from_vertex(int v, double sigma, int source) {
    std::vector<int> fan = m_.vertex_fan(v);
    for (int ds : fan) {
      int t = side_tri(ds);
      int c = side_idx(ds);  // corner c of t is v
      int opp = side_id(t, (c + 1) % 3);
      // v is the apex of the frame of side opp
      Vec2 apex = side_frames_[opp].apply(m_.chart(t)[c]);
      Window w;
      w.ds = m_.glue(opp);
      w.b0 = 0;
      w.b1 = m_.side_length(opp);
      w.src = cross_[opp].apply(apex);
      w.sigma = sigma;
      w.source = source;
      insert_window(w);

      // along-edge windows on the side leaving v
      double L = m_.side_length(ds);
      Window e1;
      e1.ds = ds;
      e1.b0 = 0;
      e1.b1 = L;
      e1.src = {0.0, 0.0};
      e1.sigma = sigma;
      e1.source = source;
      insert_window(e1);
      Window e2 = e1;
      e2.ds = m_.glue(ds);
      e2.src = {L, 0.0};
      insert_window(e2);
    }
  }

  void loop() {
    while (!queue_.empty()) {
      Event ev = queue_.top();
      queue_.pop();
      if (ev.is_vertex) {
        handle_vertex_event(ev);
        continue;
      }
      int id = ev.window_id;
      if (id < 0 || !pool_[id].alive || pool_[id].propagated) continue;
      // stale key (window shrank since queueing): requeue with current key
      double key_now = pool_[id].w.min_dist();
      if (key_now > ev.key + dist_tol_) {
        push_window_event(id);
        continue;
      }
      if (++field_.pops > opt_.pop_cap) {
        throw std::runtime_error("mmp propagation failure: pop cap exceeded");
      }
      if (opt_.record_pop_keys) field_.pop_keys.push_back(ev.key);
      if (ev.key < last_key_ - 1e-9 * (scale_ + 1.0)) field_.monotone = false;
      last_key_ = std::max(last_key_, ev.key);
      pool_[id].propagated = true;
      propagate(pool_[id].w);
    }
  }

  void handle_vertex_event(const Event& ev) {
    int v = ev.vertex;
    if (vertex_done_[v]) return;
    vertex_done_[v] = true;
    field_.vertex[v] = {ev.key, ev.source, ev.via_ds, ev.via_src, ev.via_sigma};
    // Standard vertex rule: spawn a pseudosource when the cone angle on the
    // far side of the incoming direction is at least pi.
    double L = m_.side_length(ev.via_ds);
    double sx = ev.via_src.x, sy = ev.via_src.y;
    double approach =
        ev.which_end == 0 ? std::atan2(-sy, sx) : std::atan2(-sy, L - sx);
    double far = cone_[v] - approach;
    if (far >= kPi - 1e-9) {
      emit_from_vertex(v, ev.key, ev.source);
    }
  }

  void propagate(const Window& w) {
    int ds = w.ds;
    int t = side_tri(ds);
    int s = side_idx(ds);
    double L = m_.side_length(ds);
    auto chart = m_.chart(t);
    const Rigid2& F = side_frames_[ds];
    Vec2 A{0, 0};
    Vec2 B{L, 0};
    Vec2 C = F.apply(chart[(s + 2) % 3]);

    double sx = w.src.x, sy = w.src.y;
    for (int k = 1; k <= 2; ++k) {
      int starget = (s + k) % 3;
      Vec2 G0 = (k == 1) ? B : C;
      Vec2 G1 = (k == 1) ? C : A;
      Vec2 D = G1 - G0;
      // lit range in u on [0,1]: b0 <= x*(u) <= b1, with positive denominator
      double A0 = (sx - w.b0) * (G0.y - sy) - sy * (G0.x - sx);
      double B0 = (sx - w.b0) * D.y - sy * D.x;
      double A1 = (w.b1 - sx) * (G0.y - sy) + sy * (G0.x - sx);
      double B1 = (w.b1 - sx) * D.y + sy * D.x;
      double lo = 0.0, hi = 1.0;
      double coef_tol = 1e-13 * scale_ * scale_;
      if (!clip_halfline(A0, B0, lo, hi, coef_tol)) continue;
      if (!clip_halfline(A1, B1, lo, hi, coef_tol)) continue;
      if (hi - lo < 1e-14) continue;

      int tds = side_id(t, starget);
      double Lt = m_.side_length(tds);
      Rigid2 to_target = cross_[tds].compose(
          side_frames_[tds].compose(F.inverse()));
      Window child;
      child.ds = m_.glue(tds);
      child.b0 = Lt * (1.0 - hi);
      child.b1 = Lt * (1.0 - lo);
      child.src = to_target.apply(w.src);
      child.sigma = w.sigma;
      child.source = w.source;
      insert_window(child);
    }
  }

  // Intersects {u : A + B u >= 0} with [lo, hi]; returns false when empty.
  static bool clip_halfline(double A, double B, double& lo, double& hi,
                            double coef_tol) {
    if (std::abs(B) < coef_tol) return A >= -coef_tol;
    double r = -A / B;
    if (B > 0) {
      lo = std::max(lo, r);
    } else {
      hi = std::min(hi, r);
    }
    return hi - lo > 0;
  }

  void finish() {
    // Authoritative vertex records recomputed from the final interval lists.
    for (int v = 0; v < m_.vertex_count(); ++v) {
      VertexRecord best = field_.vertex[v];
      for (int ds = 0; ds < m_.side_count(); ++ds) {
        double L = m_.side_length(ds);
        double tol = len_tol(ds);
        bool from_here = m_.side_from(ds) == v;
        bool to_here = m_.side_to(ds) == v;
        if (!from_here && !to_here) continue;
        for (int id : lists_[ds]) {
          if (!pool_[id].alive) continue;
          const Window& w = pool_[id].w;
          double x = -1;
          if (from_here && w.b0 <= tol) x = 0;
          else if (to_here && w.b1 >= L - tol) x = L;
          else continue;
          double d = w.dist_at(x);
          if (d < best.dist - dist_tol_ ||
              (d < best.dist + dist_tol_ && w.source < best.source)) {
            best = {d, w.source, ds, w.src, w.sigma};
          }
        }
      }
      field_.vertex[v] = best;
    }
    // Compact the interval lists.
    for (int ds = 0; ds < m_.side_count(); ++ds) {
      auto& out = field_.side_windows[ds];
      for (int id : lists_[ds]) {
        if (pool_[id].alive) out.push_back(pool_[id].w);
      }
      std::sort(out.begin(), out.end(),
                [](const Window& a, const Window& b) { return a.b0 < b.b0; });
    }
  }
};

} // namespace

DistanceField run_mmp(const PolyhedralMetric& m, const std::vector<SurfacePoint>& sources,
                      const MmpOptions& opt) {
  Engine engine(m, sources, opt);
  return engine.run();
}

std::pair<double, int> query_distance(const DistanceField& field, const SurfacePoint& q) {
  const SurfaceComplex& m = *field.complex;
  double best = std::numeric_limits<double>::infinity();
  int best_source = -1;
  auto consider = [&](double d, int source) {
    if (best_source < 0) {
      best = d;
      best_source = source;
      return;
    }
    double tol = 1e-11 * (1.0 + std::min(std::abs(best), std::abs(d)));
    if (d < best - tol) {
      best = d;
      best_source = source;
    } else if (d < best + tol && source < best_source) {
      best = std::min(best, d);
      best_source = source;
    }
  };
  switch (q.kind) {
    case SurfacePoint::Kind::Vertex:
      return {field.vertex[q.vertex].dist, field.vertex[q.vertex].source};
    case SurfacePoint::Kind::Edge: {
      double L = m.side_length(q.ds);
      if (q.t < -1e-9 * L || q.t > L * (1 + 1e-9)) {
        throw std::invalid_argument("query point not on the surface");
      }
      for (const Window& w : field.side_windows[q.ds]) {
        if (q.t >= w.b0 - 1e-9 * L && q.t <= w.b1 + 1e-9 * L) consider(w.dist_at(q.t), w.source);
      }
      int gs = m.glue(q.ds);
      double tg = L - q.t;
      for (const Window& w : field.side_windows[gs]) {
        if (tg >= w.b0 - 1e-9 * L && tg <= w.b1 + 1e-9 * L) consider(w.dist_at(tg), w.source);
      }
      break;
    }
    case SurfacePoint::Kind::Face: {
      auto chart = m.chart(q.tri);
      for (int s = 0; s < 3; ++s) {
        Vec2 e0 = chart[s], e1 = chart[(s + 1) % 3];
        if (cross(e1 - e0, q.pos - e0) < -1e-9 * dist(e0, e1)) {
          throw std::invalid_argument("query point not on the surface");
        }
      }
      for (int s = 0; s < 3; ++s) {
        int ds = side_id(q.tri, s);
        Rigid2 F = m.canonical_to_side(ds);
        Vec2 p = F.apply(q.pos);
        for (const Window& w : field.side_windows[ds]) {
          double den = p.y - w.src.y;
          if (den <= 0) {
            // point on the edge line: direct span check
            if (p.x >= w.b0 - 1e-9 && p.x <= w.b1 + 1e-9) consider(w.dist_at(p.x), w.source);
            continue;
          }
          double xstar = w.src.x - w.src.y * (p.x - w.src.x) / den;
          double tol = 1e-9 * (1.0 + m.side_length(ds));
          if (xstar >= w.b0 - tol && xstar <= w.b1 + tol) {
            consider(w.sigma + dist(w.src, p), w.source);
          }
        }
        // path ending at the corner, then straight to the query point
        int v = m.side_from(ds);
        if (field.vertex[v].dist < std::numeric_limits<double>::infinity()) {
          consider(field.vertex[v].dist + dist(chart[s], q.pos), field.vertex[v].source);
        }
      }
      // sources inside the same face
      for (int k = 0; k < static_cast<int>(field.sources.size()); ++k) {
        const SurfacePoint& sp = field.sources[k];
        if (sp.kind == SurfacePoint::Kind::Face && sp.tri == q.tri) {
          consider(dist(sp.pos, q.pos), k);
        }
      }
      break;
    }
  }
  if (best_source < 0) throw std::runtime_error("query point not covered");
  return {best, best_source};
}

namespace {

std::vector<double> single_source_vertex_distances(const PolyhedralMetric& m, int v) {
  DistanceField f = run_mmp(m, {SurfacePoint::at_vertex(v)});
  std::vector<double> d(m.vertex_count());
  for (int i = 0; i < m.vertex_count(); ++i) d[i] = f.vertex[i].dist;
  return d;
}

} // namespace

std::vector<std::vector<double>> all_pairs_distances(const PolyhedralMetric& m,
                                                     int threads) {
  int n = m.vertex_count();
  std::vector<std::vector<double>> out(n);
  if (threads <= 1) {
    for (int v = 0; v < n; ++v) out[v] = single_source_vertex_distances(m, v);
    return out;
  }
  std::vector<std::thread> pool;
  std::atomic_int next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      while (true) {
        int v = next.fetch_add(1);
        if (v >= n) return;
        out[v] = single_source_vertex_distances(m, v);
      }
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::pair<double, double> surface_diameter(const PolyhedralMetric& m, int threads) {
  auto d = all_pairs_distances(m, threads);
  double D = 0, ell = std::numeric_limits<double>::infinity();
  int n = m.vertex_count();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      D = std::max(D, d[i][j]);
      ell = std::min(ell, d[i][j]);
    }
  }
  return {D, ell};
}

std::string windows_to_json(const DistanceField& field) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (int ds = 0; ds < static_cast<int>(field.side_windows.size()); ++ds) {
    for (const Window& w : field.side_windows[ds]) {
      if (!first) os << ",";
      first = false;
      os << "\n  {\"side\":" << ds << ",\"span\":[" << w.b0 << "," << w.b1
         << "],\"src\":[" << w.src.x << "," << w.src.y << "],\"offset\":" << w.sigma
         << ",\"source\":" << w.source << "}";
    }
  }
  os << "\n]\n";
  return os.str();
}

} // namespace alex
