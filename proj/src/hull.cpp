#include "alex/hull.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace alex {

namespace {

struct Facet {
  Vec3 normal;             // outward unit normal
  double offset;           // plane: dot(n, x) = offset
  std::vector<int> verts;  // counterclockwise from outside
};

// Brute-force facet enumeration; fine at the scale this library targets.
std::vector<Facet> hull_facets(const std::vector<Vec3>& pts) {
  int n = static_cast<int>(pts.size());
  if (n < 4) throw std::invalid_argument("fewer than 4 hull vertices");

  double scale = 0;
  for (const Vec3& p : pts)
    for (const Vec3& q : pts) scale = std::max(scale, dist(p, q));
  if (scale == 0) throw std::invalid_argument("points not full-dimensional");
  const double plane_tol = 1e-9 * scale;

  std::vector<Facet> facets;
  std::set<std::vector<int>> seen;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        double nn = norm(nrm);
        if (nn < 1e-12 * scale * scale) continue;
        nrm = nrm / nn;
        double off = dot(nrm, pts[i]);
        int above = 0, below = 0;
        for (int m = 0; m < n; ++m) {
          double d = dot(nrm, pts[m]) - off;
          if (d > plane_tol) ++above;
          if (d < -plane_tol) ++below;
        }
        if (above > 0 && below > 0) continue;
        if (below > 0) {
          nrm = nrm * -1.0;
          off = -off;
        }
        std::vector<int> on_plane;
        for (int m = 0; m < n; ++m) {
          if (std::abs(dot(nrm, pts[m]) - off) <= plane_tol) on_plane.push_back(m);
        }
        std::vector<int> key = on_plane;
        if (!seen.insert(key).second) continue;

        // Order the coplanar points counterclockwise around their centroid,
        // viewed against the outward normal.
        Vec3 centroid{0, 0, 0};
        for (int m : on_plane) centroid += pts[m];
        centroid = centroid / static_cast<double>(on_plane.size());
        Vec3 ux = normalized(pts[on_plane[0]] - centroid);
        Vec3 uy = cross(nrm, ux);
        std::sort(on_plane.begin(), on_plane.end(), [&](int a, int b) {
          double ta = std::atan2(dot(pts[a] - centroid, uy), dot(pts[a] - centroid, ux));
          double tb = std::atan2(dot(pts[b] - centroid, uy), dot(pts[b] - centroid, ux));
          return ta < tb;
        });
        facets.push_back({nrm, off, on_plane});
      }
    }
  }
  if (facets.size() < 4) throw std::invalid_argument("points not full-dimensional");

  // Every input point must be a hull vertex.
  std::set<int> used;
  for (const Facet& f : facets) used.insert(f.verts.begin(), f.verts.end());
  if (static_cast<int>(used.size()) != n) {
    throw std::invalid_argument("input points are not in convex position");
  }
  return facets;
}

} // namespace

PolyhedralMetric intrinsic_from_hull(const std::vector<Vec3>& points,
                                     std::vector<std::array<int, 3>>* faces_out) {
  std::vector<Facet> facets = hull_facets(points);
  std::vector<Triangle> tris;
  for (const Facet& f : facets) {
    // Deterministic fan from the lowest-index vertex of the facet.
    int lo = 0;
    for (int i = 1; i < static_cast<int>(f.verts.size()); ++i) {
      if (f.verts[i] < f.verts[lo]) lo = i;
    }
    int m = static_cast<int>(f.verts.size());
    for (int i = 1; i + 1 < m; ++i) {
      int a = f.verts[lo];
      int b = f.verts[(lo + i) % m];
      int c = f.verts[(lo + i + 1) % m];
      Triangle t;
      t.v = {a, b, c};
      t.len = {dist(points[a], points[b]), dist(points[b], points[c]),
               dist(points[c], points[a])};
      tris.push_back(t);
      if (faces_out) faces_out->push_back({a, b, c});
    }
  }
  return SurfaceComplex::from_triangles(static_cast<int>(points.size()), std::move(tris));
}

PolyhedralMetric intrinsic_from_hull(const std::vector<Vec3>& points) {
  return intrinsic_from_hull(points, nullptr);
}

std::vector<Vec3> unit_tetrahedron_points() {
  double s = 1.0 / (2.0 * std::sqrt(2.0));
  return {Vec3{1, 1, 1} * s, Vec3{1, -1, -1} * s, Vec3{-1, 1, -1} * s,
          Vec3{-1, -1, 1} * s};
}

std::vector<Vec3> unit_cube_points() {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i) {
    pts.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                   static_cast<double>((i >> 2) & 1)});
  }
  return pts;
}

namespace {

// Deterministic uniform doubles from a splitmix-style generator; avoids
// distribution differences across standard libraries.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_double() {  // in [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
};

} // namespace

std::vector<Vec3> random_sphere_points(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec3> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < n) {
    if (++guard > 100000) throw std::runtime_error("sphere sampling did not converge");
    double z = 2.0 * rng.next_double() - 1.0;
    double phi = kTwoPi * rng.next_double();
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec3 p{r * std::cos(phi), r * std::sin(phi), z};
    // Keep points angularly separated so the metric has a sane spread.
    bool ok = true;
    for (const Vec3& q : pts) {
      if (dist(p, q) < 0.35) {
        ok = false;
        break;
      }
    }
    if (ok) pts.push_back(p);
  }
  return pts;
}

PolyhedralMetric make_tetrahedron_metric() {
  return intrinsic_from_hull(unit_tetrahedron_points());
}

PolyhedralMetric make_cube_metric() { return intrinsic_from_hull(unit_cube_points()); }

PolyhedralMetric make_random_hull_metric(int n, std::uint64_t seed,
                                         std::vector<Vec3>* points_out) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec3> pts = random_sphere_points(n, seed * 1000003ULL + attempt);
    try {
      PolyhedralMetric m = intrinsic_from_hull(pts);
      if (m.validate().ok()) {
        if (points_out) *points_out = pts;
        return m;
      }
    } catch (const std::exception&) {
      // nearly-degenerate sample; draw again
    }
  }
  throw std::runtime_error("could not sample a valid random hull metric");
}

} // namespace alex
