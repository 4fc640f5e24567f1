#pragma once

#include <vector>

#include "alex/delaunay.hpp"
#include "alex/linalg.hpp"
#include "alex/metric.hpp"

namespace alex {

// Side lengths of a tetrahedron ABCD, apex edge AB first.
struct TetraLengths {
  double ab, ac, ad, bc, bd, cd;
};

// Geometry of the generalized convex polyhedron (M, T, r): curvatures about
// the radial segments, apex angles, tetrahedron altitudes, and the goodness
// diagnostics the solver tracks.
struct StarState {
  std::vector<double> kappa;      // per vertex
  std::vector<double> phi;        // per edge rep (parallel to edge_reps())
  std::vector<int> phi_edges;     // edge rep ids
  std::vector<double> altitudes;  // per face
  double eps2 = 0;                // min defect-curvature gap
  double eps3 = 0;                // min apex angle
  double eps4 = 0;                // max curvature
  double eps5 = 0;                // min surface triangle angle
  double eps7 = 0;                // curvature skew
};

struct StarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dihedral angle along AB. Requires a nondegenerate tetrahedron.
double dihedral_angle(const TetraLengths& t);

// Analytic partials of the dihedral angle in the lengths AB, AC, AD.
std::array<double, 3> dihedral_gradient(const TetraLengths& t);

// Finite-difference reference for the gradient (test and debug builds).
std::array<double, 3> dihedral_gradient_fd(const TetraLengths& t, double rel_step = 1e-6);

StarState star_state(const PolyhedralMetric& m, const Triangulation& T,
                     const std::vector<double>& r);

// J[i][j] = d(kappa_i)/d(r_j); nonzero only on the diagonal and Delaunay
// edges of T.
Matrix jacobian(const PolyhedralMetric& m, const Triangulation& T,
                const std::vector<double>& r);

} // namespace alex
