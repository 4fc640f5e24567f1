#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alex/delaunay.hpp"
#include "alex/metric.hpp"
#include "alex/star.hpp"
#include "alex/voronoi.hpp"

namespace alex {

struct SolverConfig {
  double eps = 1e-6;
  int max_iters = 10000;
  double p0 = 0.1;
  double radius_growth = 2.0;
  bool full_retriangulate = false;
  int threads = 1;
  bool debug_checks = false;  // cross-check incremental vs full retriangulation
};

struct TraceRecord {
  int iter = 0;
  double p = 0;
  double eps2 = 0, eps4 = 0, eps7 = 0;
  bool accepted = false;
  int flips = 0;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-metric cached pipeline: validation, defects, surface distances, the
// all-vertex Voronoi diagram and the unweighted Delaunay seed.
struct SolveContext {
  PolyhedralMetric metric;
  DefectVector delta;
  MetricParams params;
  VoronoiDiagram vor;
  Triangulation seed;

  static SolveContext build(const PolyhedralMetric& m, int threads = 1);
};

struct SolveResult {
  std::vector<double> r;
  Triangulation T;
  StarState star;
  std::vector<TraceRecord> trace;
  int iterations = 0;
  bool converged = false;
};

// Equal radii accepted by the goodness conditions, found by geometric search.
std::pair<std::vector<double>, Triangulation> initial_radii(const SolveContext& ctx,
                                                            const SolverConfig& cfg);

// Target curvature for one step: kappa* = kappa - p kappa - p (kappa - delta
// min_j kappa_j/delta_j).
std::vector<double> step_target(const StarState& star, const DefectVector& delta,
                                double p);

struct StepCandidate {
  bool valid = false;
  std::vector<double> r;
  Triangulation T;
  StarState star;
  double error = 0;  // |kappa' - kappa*|_inf
  int flips = 0;
  std::string reject_reason;
};

StepCandidate propose_step(const SolveContext& ctx, const std::vector<double>& r,
                           const Triangulation& T, const StarState& star, double p,
                           const SolverConfig& cfg);

SolveResult solve_radii(const SolveContext& ctx, const SolverConfig& cfg);

std::string trace_to_json(const std::vector<TraceRecord>& trace);

} // namespace alex
