#include "alex/star.hpp"

#include <cmath>

namespace alex {

namespace {

// Squared-length formulation. With p = AB^2, q = AC^2, s = AD^2 and the
// Gram entries X1 = AB.AC, X2 = AB.AD, X3 = AC.AD,
//   cos(theta) ~ N = p X3 - X1 X2,
//   sin(theta) ~ sqrt(p G), G = det of the Gram matrix (36 V^2),
// both over the common denominator 4 [ABC][ABD], so theta = atan2(sqrt(pG), N).
//
// The A-anchored products cancel catastrophically when all three edges at A
// are long (the far-apex regime: p q s grows like R^6 against G ~ R^2), so the
// values of G, N, K are taken from whichever edge anchor of AB has the
// smaller product of incident squared lengths. Both anchors describe the same
// dihedral.
struct TetraCore {
  double p, q, s;
  double X1, X2, X3;
  double N, G;
  double K;  // 16 [ABC]^2 [ABD]^2 = (pq - X1^2)(ps - X2^2)

  explicit TetraCore(const TetraLengths& t) {
    p = t.ab * t.ab;
    q = t.ac * t.ac;
    s = t.ad * t.ad;
    double a = t.bc * t.bc, b = t.bd * t.bd, c = t.cd * t.cd;
    X1 = 0.5 * (p + q - a);
    X2 = 0.5 * (p + s - b);
    X3 = 0.5 * (q + s - c);
    if (q * s <= a * b) {
      N = p * X3 - X1 * X2;
      G = p * q * s + 2 * X1 * X2 * X3 - p * X3 * X3 - q * X2 * X2 - s * X1 * X1;
      K = (p * q - X1 * X1) * (p * s - X2 * X2);
    } else {
      // anchor at B: Y1 = BA.BC, Y2 = BA.BD, Y3 = BC.BD
      double Y1 = 0.5 * (p + a - q);
      double Y2 = 0.5 * (p + b - s);
      double Y3 = 0.5 * (a + b - c);
      N = p * Y3 - Y1 * Y2;
      G = p * a * b + 2 * Y1 * Y2 * Y3 - p * Y3 * Y3 - a * Y2 * Y2 - b * Y1 * Y1;
      K = (p * a - Y1 * Y1) * (p * b - Y2 * Y2);
    }
  }

  double max_side(const TetraLengths& t) const {
    return std::max({t.ab, t.ac, t.ad, t.bc, t.bd, t.cd});
  }

  void check(const TetraLengths& t) const {
    double m = max_side(t);
    double vol = G > 0 ? std::sqrt(G) / 6.0 : 0.0;
    if (!(vol > 1e-12 * m * m * m)) {
      throw StarError("degenerate tetrahedron");
    }
    if (!(K > 0)) throw StarError("degenerate tetrahedron face");
  }
};

} // namespace

double dihedral_angle(const TetraLengths& t) {
  TetraCore c(t);
  c.check(t);
  return std::atan2(std::sqrt(c.p * c.G), c.N);
}

std::array<double, 3> dihedral_gradient(const TetraLengths& t) {
  TetraCore c(t);
  c.check(t);
  double p = c.p, q = c.q, s = c.s;
  double X1 = c.X1, X2 = c.X2, X3 = c.X3;

  // partials of the Gram determinant and numerator in p, q, s
  double Gp = (q * s - X3 * X3) + (X2 * X3 - s * X1) + (X1 * X3 - q * X2);
  double Gq = (p * s - X2 * X2) + (X2 * X3 - s * X1) + (X1 * X2 - p * X3);
  double Gs = (p * q - X1 * X1) + (X1 * X3 - q * X2) + (X1 * X2 - p * X3);
  double Np = X3 - 0.5 * (X1 + X2);
  double Nq = 0.5 * (p - X2);
  double Ns = 0.5 * (p - X1);

  double Sv = std::sqrt(p * c.G);
  double N = c.N;
  double K = c.K;  // Sv^2 + N^2

  // d(theta)/dx = (N dSv - Sv dN) / K, then chain to lengths (dp = 2 ab, ...)
  double dSv_p = (c.G + p * Gp) / (2.0 * Sv);
  double dSv_q = (p * Gq) / (2.0 * Sv);
  double dSv_s = (p * Gs) / (2.0 * Sv);

  double th_p = (N * dSv_p - Sv * Np) / K;
  double th_q = (N * dSv_q - Sv * Nq) / K;
  double th_s = (N * dSv_s - Sv * Ns) / K;

  return {2.0 * t.ab * th_p, 2.0 * t.ac * th_q, 2.0 * t.ad * th_s};
}

std::array<double, 3> dihedral_gradient_fd(const TetraLengths& t, double rel_step) {
  std::array<double, 3> g;
  TetraLengths tt = t;
  double* fields[3] = {&tt.ab, &tt.ac, &tt.ad};
  const double vals[3] = {t.ab, t.ac, t.ad};
  for (int i = 0; i < 3; ++i) {
    double h = rel_step * vals[i];
    *fields[i] = vals[i] + h;
    double up = dihedral_angle(tt);
    *fields[i] = vals[i] - h;
    double dn = dihedral_angle(tt);
    *fields[i] = vals[i];
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

namespace {

// Apex dihedral angles of the tetrahedron over face (i, j, k): returns the
// angle along O-v_i, O-v_j, O-v_k in that order.
std::array<double, 3> face_apex_dihedrals(const Triangle& tr, const std::vector<double>& r) {
  double ri = r[tr.v[0]], rj = r[tr.v[1]], rk = r[tr.v[2]];
  double lij = tr.len[0], ljk = tr.len[1], lki = tr.len[2];
  std::array<double, 3> out;
  out[0] = dihedral_angle({ri, rj, rk, lij, lki, ljk});
  out[1] = dihedral_angle({rj, rk, ri, ljk, lij, lki});
  out[2] = dihedral_angle({rk, ri, rj, lki, ljk, lij});
  return out;
}

} // namespace

StarState star_state(const PolyhedralMetric& m, const Triangulation& T,
                     const std::vector<double>& r) {
  const SurfaceComplex& tc = T.complex;
  int n = tc.vertex_count();
  if (static_cast<int>(r.size()) != n) throw StarError("radius count mismatch");
  for (double ri : r) {
    if (!(ri > 0)) throw StarError("radii must be positive");
  }

  StarState st;
  st.kappa.assign(n, kTwoPi);
  st.altitudes.resize(tc.triangle_count());

  for (int f = 0; f < tc.triangle_count(); ++f) {
    const Triangle& tr = tc.tri(f);
    TrianglePower tp = triangle_center_power(
        tr.len, {r[tr.v[0]] * r[tr.v[0]], r[tr.v[1]] * r[tr.v[1]],
                 r[tr.v[2]] * r[tr.v[2]]});
    if (!(tp.power < 0)) {
      throw StarError("nonnegative face power: no apex tetrahedron");
    }
    st.altitudes[f] = std::sqrt(-tp.power);
    auto th = face_apex_dihedrals(tr, r);
    for (int c = 0; c < 3; ++c) st.kappa[tr.v[c]] -= th[c];
  }

  st.phi_edges = tc.edge_reps();
  st.phi.reserve(st.phi_edges.size());
  st.eps3 = std::numeric_limits<double>::infinity();
  for (int ds : st.phi_edges) {
    double l = tc.side_length(ds);
    double phi = corner_angle(l, r[tc.side_from(ds)], r[tc.side_to(ds)]);
    st.phi.push_back(phi);
    st.eps3 = std::min(st.eps3, phi);
  }

  st.eps5 = std::numeric_limits<double>::infinity();
  for (int f = 0; f < tc.triangle_count(); ++f) {
    for (int c = 0; c < 3; ++c) st.eps5 = std::min(st.eps5, tc.corner_angle_at(f, c));
  }

  DefectVector delta = m.defects();
  st.eps2 = std::numeric_limits<double>::infinity();
  st.eps4 = -std::numeric_limits<double>::infinity();
  double ratio_min = std::numeric_limits<double>::infinity();
  double ratio_max = -std::numeric_limits<double>::infinity();
  for (int v = 0; v < n; ++v) {
    st.eps2 = std::min(st.eps2, delta.delta[v] - st.kappa[v]);
    st.eps4 = std::max(st.eps4, st.kappa[v]);
    double ratio = st.kappa[v] / delta.delta[v];
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
  }
  st.eps7 = ratio_min > 0 ? ratio_max / ratio_min - 1.0
                          : std::numeric_limits<double>::infinity();
  return st;
}

Matrix jacobian(const PolyhedralMetric& m, const Triangulation& T,
                const std::vector<double>& r) {
  (void)m;
  const SurfaceComplex& tc = T.complex;
  int n = tc.vertex_count();
  Matrix J(n, n);
  for (int f = 0; f < tc.triangle_count(); ++f) {
    const Triangle& tr = tc.tri(f);
    double lij = tr.len[0], ljk = tr.len[1], lki = tr.len[2];
    int vi = tr.v[0], vj = tr.v[1], vk = tr.v[2];
    // per-corner dihedral along O-v_c, differentiated in (r_c, r_next, r_prev)
    const TetraLengths tets[3] = {
        {r[vi], r[vj], r[vk], lij, lki, ljk},
        {r[vj], r[vk], r[vi], ljk, lij, lki},
        {r[vk], r[vi], r[vj], lki, ljk, lij},
    };
    const int order[3][3] = {{vi, vj, vk}, {vj, vk, vi}, {vk, vi, vj}};
    for (int c = 0; c < 3; ++c) {
      auto g = dihedral_gradient(tets[c]);
      J(order[c][0], order[c][0]) -= g[0];
      J(order[c][0], order[c][1]) -= g[1];
      J(order[c][0], order[c][2]) -= g[2];
    }
  }
  return J;
}

} // namespace alex
