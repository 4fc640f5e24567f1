#include "alex/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace alex {

namespace {

// Joint chart of the two triangles at ds: a=(0,0), b=(L,0), c above (triangle
// of ds), d below (partner triangle).
struct QuadChart {
  Vec2 a, b, c, d;
  int va, vb, vc, vd;
};

QuadChart quad_chart(const SurfaceComplex& m, int ds) {
  int ds2 = m.glue(ds);
  int t1 = side_tri(ds), s1 = side_idx(ds);
  int t2 = side_tri(ds2), s2 = side_idx(ds2);
  const Triangle& tr1 = m.tri(t1);
  const Triangle& tr2 = m.tri(t2);
  double L = tr1.len[s1];
  QuadChart q;
  q.va = tr1.v[s1];
  q.vb = tr1.v[(s1 + 1) % 3];
  q.vc = tr1.v[(s1 + 2) % 3];
  q.vd = tr2.v[(s2 + 2) % 3];
  q.a = {0, 0};
  q.b = {L, 0};
  double l_bc = tr1.len[(s1 + 1) % 3];
  double l_ca = tr1.len[(s1 + 2) % 3];
  q.c = locate_above(q.a, q.b, l_ca, l_bc);
  double l_ad = tr2.len[(s2 + 1) % 3];
  double l_db = tr2.len[(s2 + 2) % 3];
  // the frame of the reversed segment puts this point below the shared edge
  q.d = locate_above(q.b, q.a, l_db, l_ad);
  return q;
}

Vec2 weighted_center(Vec2 p0, Vec2 p1, Vec2 p2, double w0, double w1, double w2) {
  // pairwise equal power: 2(p1-p0).q = |p1|^2-|p0|^2 - (w1-w0), same for p2
  double a00 = 2 * (p1.x - p0.x), a01 = 2 * (p1.y - p0.y);
  double a10 = 2 * (p2.x - p0.x), a11 = 2 * (p2.y - p0.y);
  double r0 = norm2(p1) - norm2(p0) - (w1 - w0);
  double r1 = norm2(p2) - norm2(p0) - (w2 - w0);
  double det = a00 * a11 - a01 * a10;
  if (std::abs(det) < 1e-14 * (norm2(p1 - p0) + norm2(p2 - p0) + 1e-300)) {
    throw std::invalid_argument("degenerate triangle");
  }
  return {(r0 * a11 - r1 * a01) / det, (a00 * r1 - a10 * r0) / det};
}

} // namespace

TrianglePower triangle_center_power(const std::array<double, 3>& len,
                                    const std::array<double, 3>& w) {
  if (!triangle_inequality_strict(len[0], len[1], len[2])) {
    throw std::invalid_argument("degenerate triangle");
  }
  auto pos = layout_triangle(len[0], len[1], len[2]);
  Vec2 center = weighted_center(pos[0], pos[1], pos[2], w[0], w[1], w[2]);
  return {center, norm2(center - pos[0]) - w[0]};
}

LocalConvexity is_locally_convex(const Triangulation& T, int ds) {
  const SurfaceComplex& m = T.complex;
  if (m.glue(ds) == ds) throw std::invalid_argument("edge on fewer than 2 triangles");
  QuadChart q = quad_chart(m, ds);
  double wa = T.weights[q.va], wb = T.weights[q.vb];
  double wc = T.weights[q.vc], wd = T.weights[q.vd];
  Vec2 center = weighted_center(q.a, q.b, q.c, wa, wb, wc);
  double power = norm2(center - q.a) - wa;
  double pd = norm2(center - q.d) - wd;
  double diff = pd - power;
  double magnitude = std::max({std::abs(power), std::abs(pd), 1e-300});
  if (diff > 1e-10 * magnitude) return LocalConvexity::Strict;
  if (diff < -1e-10 * magnitude) return LocalConvexity::Violated;
  return LocalConvexity::Equality;
}

double flip_threshold(Vec2 W, Vec2 X, Vec2 Y, Vec2 Z, double wX, double wY, double wZ) {
  // P = WY intersect XZ, interior to both for a strictly convex quad
  double denom = cross(Y - W, Z - X);
  if (std::abs(denom) < 1e-300) throw std::invalid_argument("nonconvex quadrilateral");
  double s = cross(X - W, Z - X) / denom;
  double u = cross(X - W, Y - W) / denom;
  const double tol = 1e-12;
  if (!(s > tol && s < 1 - tol && u > tol && u < 1 - tol)) {
    throw std::invalid_argument("nonconvex quadrilateral");
  }
  Vec2 P = W + (Y - W) * s;
  double WY = dist(W, Y), XZ = dist(X, Z);
  double PW = dist(P, W), PY = dist(P, Y), PX = dist(P, X), PZ = dist(P, Z);
  return (WY / PY) *
         ((PZ * wX + PX * wZ) / XZ - PW * wY / WY - PX * PZ + PW * PY);
}

double height_at(const Triangulation& T, int ds, double t) {
  double L = T.complex.side_length(ds);
  if (t < -1e-12 * L || t > L * (1 + 1e-12)) {
    throw std::invalid_argument("point off edge");
  }
  double wx = T.weights[T.complex.side_from(ds)];
  double wy = T.weights[T.complex.side_to(ds)];
  double px = t, py = L - t;
  return (py * wx + px * wy) / L - px * py;
}

namespace {

struct FanEntry {
  int ds;      // directed side v -> neighbor
  int y;       // the neighbor vertex
};

// Threshold for flipping edge v->y given fan neighbors (x, y, z), plus a
// magnitude for tolerance scaling. Quadrilateral convexity failures mean the
// edge can never lose local convexity, so they report -inf (never flip).
struct FanThreshold {
  double t = -std::numeric_limits<double>::infinity();
  double scale = 1.0;
};

FanThreshold fan_threshold(const Triangulation& T, int ds_vy) {
  const SurfaceComplex& m = T.complex;
  QuadChart q = quad_chart(m, ds_vy);
  // chart: a=v, b=y, c above = next neighbor (z), d below = previous (x)
  Vec2 W = q.a, Y = q.b, Z = q.c, X = q.d;
  FanThreshold out;
  out.scale = norm2(Y - W) + std::abs(T.weights[q.va]) + std::abs(T.weights[q.vb]) +
              std::abs(T.weights[q.vc]) + std::abs(T.weights[q.vd]);
  try {
    out.t = flip_threshold(W, X, Y, Z, T.weights[q.vd], T.weights[q.vb],
                           T.weights[q.vc]);
  } catch (const std::invalid_argument&) {
  }
  return out;
}

} // namespace

void reweight_vertex(Triangulation& T, int v, double new_weight, FlipStats* stats) {
  SurfaceComplex& m = T.complex;
  if (new_weight > T.weights[v] + 1e-12 * (1 + std::abs(T.weights[v]))) {
    throw std::invalid_argument("reweight_vertex: weight must not increase");
  }
  // Thresholds depend only on the neighbors' weights, so the lowered weight
  // can be installed up front; every flip below then happens at the final
  // weight, where the height gain of the new diagonal is strict.
  T.weights[v] = new_weight;
  // Flip the maximum-threshold edge until every threshold is at most the
  // target weight (the priority queue of the reweighting algorithm; the fan
  // changes with each flip, so thresholds are recomputed).
  while (true) {
    std::vector<int> fan = m.vertex_fan(v);
    int d = static_cast<int>(fan.size());
    if (d <= 3) {
      // a degree-3 vertex cannot shed edges (the opposite "quadrilateral"
      // repeats a corner); if an incident edge is violated anyway, the weight
      // vector admits no locally convex triangulation over V(M)
      for (int j = 0; j < d; ++j) {
        if (is_locally_convex(T, fan[j]) == LocalConvexity::Violated) {
          throw std::runtime_error(
              "reweight_vertex: quadrilateral convexity precondition violated");
        }
      }
      break;
    }
    double best_t = -std::numeric_limits<double>::infinity();
    double best_scale = 1.0;
    int best_ds = -1;
    for (int j = 0; j < d; ++j) {
      FanThreshold ft = fan_threshold(T, fan[j]);
      if (ft.t > best_t) {
        best_t = ft.t;
        best_scale = ft.scale;
        best_ds = fan[j];
      }
    }
    // cocircular (equality) configurations sit exactly at the threshold and
    // are never flipped
    if (best_ds < 0 || best_t <= new_weight + 1e-10 * best_scale) break;
    // flip v->y to the contrary diagonal x-z
    QuadChart q = quad_chart(m, best_ds);
    double new_len = dist(q.c, q.d);
    double h_old = 0, h_new = 0;
    {
      // height of the diagonal crossing increases with every flip
      double denom = q.c.y - q.d.y;
      double px = q.d.x + (0 - q.d.y) * (q.c.x - q.d.x) / denom;
      double L = dist(q.a, q.b);
      h_old = ((L - px) * T.weights[q.va] + px * T.weights[q.vb]) / L - px * (L - px);
      Vec2 P{px, 0};
      double PX = dist(P, q.d), PZ = dist(P, q.c);
      double XZ = new_len;
      h_new = (PZ * T.weights[q.vd] + PX * T.weights[q.vc]) / XZ - PX * PZ;
    }
    if (stats) {
      stats->flips += 1;
      stats->min_height_gain = std::min(stats->min_height_gain, h_new - h_old);
    }
    if (h_new <= h_old - 1e-9 * (1 + std::abs(h_old))) {
      throw std::runtime_error("reweight_vertex: flip did not increase height");
    }
    auto remap = m.flip_edge(best_ds, new_len);
    T.side_origin[remap.new_diag] = EdgeOrigin::FlipCreated;
    T.side_origin[m.glue(remap.new_diag)] = EdgeOrigin::FlipCreated;
    std::array<EdgeOrigin, 4> olds;
    for (int i = 0; i < 4; ++i) olds[i] = T.side_origin[remap.outer[i].first];
    for (int i = 0; i < 4; ++i) {
      T.side_origin[remap.outer[i].second] = olds[i];
      T.side_origin[m.glue(remap.outer[i].second)] = olds[i];
    }
  }
}

namespace {

// Lowers every vertex from its current weight to the target in bounded
// sweeps. Dropping one vertex far below the rest in a single pass can starve
// its power cell even when the target vector is fine, so each sweep moves at
// most a fraction of the squared minimum edge length.
void lower_weights(Triangulation& T, const std::vector<double>& w, FlipStats* stats) {
  int n = T.complex.vertex_count();
  double drop = 0;
  for (int v = 0; v < n; ++v) drop = std::max(drop, T.weights[v] - w[v]);
  if (drop <= 0) {
    for (int v = 0; v < n; ++v) T.weights[v] = w[v];
    return;
  }
  double lmin = std::numeric_limits<double>::infinity();
  for (int ds = 0; ds < T.complex.side_count(); ++ds) {
    lmin = std::min(lmin, T.complex.side_length(ds));
  }
  double step = 0.25 * lmin * lmin;
  int sweeps = std::min<long long>(1 + static_cast<long long>(drop / step), 1000000);
  for (int k = 1; k <= sweeps; ++k) {
    double level = drop - (drop * k) / sweeps;
    for (int v = 0; v < n; ++v) {
      double target = std::min(T.weights[v], w[v] + level);
      if (T.weights[v] > target) reweight_vertex(T, v, target, stats);
    }
  }
}

} // namespace

Triangulation weighted_delaunay(const PolyhedralMetric& m, const std::vector<double>& w,
                                const Triangulation& seed, FlipStats* stats) {
  if (static_cast<int>(w.size()) != m.vertex_count()) {
    throw std::invalid_argument("weight count mismatch");
  }
  Triangulation T = seed;
  double w0 = *std::max_element(w.begin(), w.end());
  std::fill(T.weights.begin(), T.weights.end(), w0);
  lower_weights(T, w, stats);
  return T;
}

void retriangulate_incremental(Triangulation& T, const std::vector<double>& w_new,
                               FlipStats* stats) {
  int n = T.complex.vertex_count();
  double shift = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) shift = std::max(shift, w_new[v] - T.weights[v]);
  // additive shifts preserve convexity, so only the spread of the weight
  // changes is left for the per-vertex lowering
  for (double& w : T.weights) w += shift;
  lower_weights(T, w_new, stats);
}

bool all_edges_locally_convex(const Triangulation& T) {
  for (int ds : T.complex.edge_reps()) {
    if (is_locally_convex(T, ds) == LocalConvexity::Violated) return false;
  }
  return true;
}

Triangulation unweighted_delaunay(const PolyhedralMetric& m, const VoronoiDiagram& vor) {
  int n = m.vertex_count();
  std::vector<Triangle> tris;
  // map: (diagram vertex, boundary slot k = side source[k]->source[k+1]) -> (tri, side)
  std::vector<std::vector<std::pair<int, int>>> boundary_slot(vor.vertices.size());

  for (int ci = 0; ci < static_cast<int>(vor.vertices.size()); ++ci) {
    const VoronoiVertex& c = vor.vertices[ci];
    int d = c.degree();
    if (d < 3) throw std::invalid_argument("malformed diagram: vertex degree < 3");
    // inscribed polygon of the empty disk
    std::vector<Vec2> pos(d);
    for (int k = 0; k < d; ++k) {
      pos[k] = {c.radius * std::cos(c.angles[k]), c.radius * std::sin(c.angles[k])};
    }
    // fan root: first occurrence of the lowest vertex id
    int rho = 0;
    for (int k = 1; k < d; ++k) {
      if (c.sources[k] < c.sources[rho]) rho = k;
    }
    boundary_slot[ci].assign(d, {-1, -1});
    int base = static_cast<int>(tris.size());
    for (int j = 1; j + 1 < d; ++j) {
      int i0 = rho, i1 = (rho + j) % d, i2 = (rho + j + 1) % d;
      Triangle t;
      t.v = {c.sources[i0], c.sources[i1], c.sources[i2]};
      t.len = {dist(pos[i0], pos[i1]), dist(pos[i1], pos[i2]), dist(pos[i2], pos[i0])};
      tris.push_back(t);
      // boundary slots covered by this fan triangle
      boundary_slot[ci][i1] = {base + j - 1, 1};
      if (j == 1) boundary_slot[ci][i0] = {base, 0};
      if (j + 2 == d) boundary_slot[ci][i2] = {base + j - 1, 2};
    }
  }

  int total_sides = static_cast<int>(tris.size()) * 3;
  std::vector<int> glue(total_sides, -1);
  std::vector<EdgeOrigin> side_origin(total_sides, EdgeOrigin::DiagonalFill);

  // glue fan diagonals: consecutive fan triangles share (root, q_{j+1})
  {
    int cursor = 0;
    for (int ci = 0; ci < static_cast<int>(vor.vertices.size()); ++ci) {
      int d = vor.vertices[ci].degree();
      int fan_count = d - 2;
      for (int j = 0; j + 1 < fan_count; ++j) {
        int ta = cursor + j;
        int tb = cursor + j + 1;
        glue[side_id(ta, 2)] = side_id(tb, 0);
        glue[side_id(tb, 0)] = side_id(ta, 2);
      }
      cursor += fan_count;
    }
  }

  // boundary sides glue according to the diagram's edges
  for (const VoronoiEdge& e : vor.edges) {
    auto [ta, sa] = boundary_slot[e.va][e.port_a];
    auto [tb, sb] = boundary_slot[e.vb][e.port_b];
    if (ta < 0 || tb < 0) throw std::invalid_argument("malformed diagram: unmatched port");
    int da = side_id(ta, sa), db = side_id(tb, sb);
    if (glue[da] != -1 || glue[db] != -1) {
      throw std::invalid_argument("malformed diagram: port glued twice");
    }
    glue[da] = db;
    glue[db] = da;
    side_origin[da] = EdgeOrigin::Voronoi;
    side_origin[db] = EdgeOrigin::Voronoi;
    // reconcile the two disks' chord lengths
    double la = tris[ta].len[sa], lb = tris[tb].len[sb];
    if (std::abs(la - lb) > 1e-6 * std::max(la, lb)) {
      throw std::invalid_argument("malformed diagram: chord length mismatch");
    }
    double avg = 0.5 * (la + lb);
    tris[ta].len[sa] = avg;
    tris[tb].len[sb] = avg;
  }
  for (int s = 0; s < total_sides; ++s) {
    if (glue[s] < 0) throw std::invalid_argument("malformed diagram: open side");
  }

  Triangulation T;
  T.complex = SurfaceComplex(n, std::move(tris), std::move(glue));
  T.weights.assign(n, 0.0);
  T.side_origin = std::move(side_origin);

  int E = T.complex.edge_count();
  int F = T.complex.triangle_count();
  if (E != 3 * n - 6 || F != 2 * n - 4) {
    throw std::invalid_argument("malformed diagram: Euler counts off");
  }
  return T;
}

} // namespace alex
