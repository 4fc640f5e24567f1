#include "alex/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "alex/linalg.hpp"
#include "alex/mmp.hpp"

namespace alex {

SolveContext SolveContext::build(const PolyhedralMetric& m, int threads) {
  ValidationReport rep = m.validate();
  if (!rep.ok()) {
    std::ostringstream msg;
    msg << "invalid metric:";
    for (const auto& v : rep.violations) msg << " [" << v.code << ": " << v.detail << "]";
    throw std::invalid_argument(msg.str());
  }
  SolveContext ctx;
  ctx.metric = m;
  ctx.delta = m.defects();
  ctx.params = metric_params(m, all_pairs_distances(m, threads));
  ctx.vor = voronoi_diagram(m);
  ctx.seed = unweighted_delaunay(m, ctx.vor);
  return ctx;
}

std::pair<std::vector<double>, Triangulation> initial_radii(const SolveContext& ctx,
                                                            const SolverConfig& cfg) {
  const PolyhedralMetric& m = ctx.metric;
  int n = m.vertex_count();
  // Uniform weights leave the unweighted Delaunay unchanged, so the seed
  // triangulation serves for every trial radius.
  const Triangulation& T0 = ctx.seed;
  double r_min = 0;
  for (int f = 0; f < T0.complex.triangle_count(); ++f) {
    const Triangle& tr = T0.complex.tri(f);
    r_min = std::max(r_min, circumradius(tr.len[0], tr.len[1], tr.len[2]));
  }
  double goodness_bound = ctx.params.eps8 / (4.0 * kPi);
  double R = r_min * (1.0 + 1e-9);
  double cap = 1e6 * std::max(ctx.params.D, r_min);
  while (R <= cap) {
    std::vector<double> r(n, R);
    try {
      StarState st = star_state(m, T0, r);
      bool ok = st.eps2 > 0 && st.eps7 < goodness_bound;
      for (int v = 0; v < n && ok; ++v) ok = st.kappa[v] > 0;
      if (ok) {
        Triangulation T = T0;
        std::fill(T.weights.begin(), T.weights.end(), R * R);
        return {r, T};
      }
    } catch (const StarError&) {
      // radius too small for a valid apex; keep growing
    }
    R *= cfg.radius_growth;
  }
  throw SolverError("initialization failed: no good equal-radius assignment found");
}

std::vector<double> step_target(const StarState& star, const DefectVector& delta,
                                double p) {
  int n = static_cast<int>(star.kappa.size());
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    min_ratio = std::min(min_ratio, star.kappa[i] / delta.delta[i]);
  }
  std::vector<double> target(n);
  for (int i = 0; i < n; ++i) {
    double k = star.kappa[i];
    target[i] = k - p * k - p * (k - delta.delta[i] * min_ratio);
  }
  return target;
}

namespace {

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

StepCandidate propose_step(const SolveContext& ctx, const std::vector<double>& r,
                           const Triangulation& T, const StarState& star, double p,
                           const SolverConfig& cfg) {
  StepCandidate cand;
  const PolyhedralMetric& m = ctx.metric;
  int n = m.vertex_count();

  std::vector<double> kstar = step_target(star, ctx.delta, p);
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = kstar[i] - star.kappa[i];

  Matrix J = jacobian(m, T, r);
  std::vector<double> dr;
  double cond = condition_estimate(J);
  if (std::isfinite(cond) && cond < 1e12) {
    LuResult lu = lu_solve(J, rhs);
    if (lu.singular) {
      cand.reject_reason = "singular jacobian";
      return cand;
    }
    dr = std::move(lu.x);
  } else {
    dr = ridge_solve(J, rhs, 1e-12 * std::max(1.0, J.norm_inf()));
  }

  cand.r.resize(n);
  for (int i = 0; i < n; ++i) {
    cand.r[i] = r[i] + dr[i];
    if (!(cand.r[i] > 0) || !std::isfinite(cand.r[i])) {
      cand.reject_reason = "nonpositive radius";
      return cand;
    }
  }

  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = cand.r[i] * cand.r[i];
  FlipStats flips;
  try {
    if (cfg.full_retriangulate) {
      cand.T = weighted_delaunay(m, w, ctx.seed);
    } else {
      cand.T = T;
      retriangulate_incremental(cand.T, w, &flips);
    }
    if (cfg.debug_checks) {
      Triangulation full = weighted_delaunay(m, w, ctx.seed);
      if (!all_edges_locally_convex(full) || !all_edges_locally_convex(cand.T)) {
        throw SolverError("retriangulation cross-check failed");
      }
    }
  } catch (const std::exception& e) {
    cand.reject_reason = std::string("retriangulation: ") + e.what();
    return cand;
  }
  cand.flips = flips.flips;

  try {
    cand.star = star_state(m, cand.T, cand.r);
  } catch (const StarError& e) {
    cand.reject_reason = std::string("star: ") + e.what();
    return cand;
  }
  cand.error = inf_norm_diff(cand.star.kappa, kstar);
  cand.valid = true;
  return cand;
}

SolveResult solve_radii(const SolveContext& ctx, const SolverConfig& cfg) {
  if (!(cfg.eps > 0)) throw std::invalid_argument("config: eps must be positive");
  if (!(cfg.p0 > 0 && cfg.p0 < 1)) throw std::invalid_argument("config: p0 in (0,1)");
  if (!(cfg.radius_growth > 1)) {
    throw std::invalid_argument("config: radius_growth must exceed 1");
  }
  const PolyhedralMetric& m = ctx.metric;
  int n = m.vertex_count();

  SolveResult res;
  auto [r, T] = initial_radii(ctx, cfg);
  res.r = std::move(r);
  res.T = std::move(T);
  res.star = star_state(m, res.T, res.r);

  double goodness_bound = ctx.params.eps8 / (4.0 * kPi);
  double p = std::min(cfg.p0, 0.5);

  if (res.star.eps4 <= cfg.eps) {
    res.converged = true;
    return res;
  }

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    StepCandidate cand = propose_step(ctx, res.r, res.T, res.star, p, cfg);

    bool accepted = false;
    if (cand.valid) {
      double min_kappa = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) min_kappa = std::min(min_kappa, res.star.kappa[i]);
      double floor = cfg.eps / 10.0;
      double bound = std::min({p * res.star.eps4 / 2.0, p * ctx.params.eps1 / 2.0,
                               p * (ctx.params.eps1 / (4.0 * kPi)) *
                                   std::max(min_kappa, floor)});
      bool within = cand.error <= bound;
      bool good = cand.star.eps2 > 0 && cand.star.eps7 < goodness_bound;
      double min_new = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) min_new = std::min(min_new, cand.star.kappa[i]);
      good = good && min_new > -cfg.eps / 2.0;
      accepted = within && good;
      if (accepted) {
        res.r = std::move(cand.r);
        res.T = std::move(cand.T);
        res.star = std::move(cand.star);
        if (cand.error < bound / 2.0) p = std::min(2.0 * p, 0.5);
      }
    }
    res.trace.push_back({iter, p, res.star.eps2, res.star.eps4,
                         std::isfinite(res.star.eps7) ? res.star.eps7 : 1e30, accepted,
                         cand.flips});
    res.iterations = iter;
    if (accepted && res.star.eps4 <= cfg.eps) {
      res.converged = true;
      return res;
    }
    if (!accepted) {
      p *= 0.5;
      if (p < 1e-18) {
        throw SolverError("step size collapsed: " + cand.reject_reason);
      }
    }
  }
  return res;  // not converged; caller inspects res.converged
}

std::string trace_to_json(const std::vector<TraceRecord>& trace) {
  std::ostringstream os;
  os.precision(17);
  for (const TraceRecord& t : trace) {
    os << "{\"iter\":" << t.iter << ",\"p\":" << t.p << ",\"eps2\":" << t.eps2
       << ",\"eps4\":" << t.eps4 << ",\"eps7\":" << t.eps7
       << ",\"accepted\":" << (t.accepted ? "true" : "false") << ",\"flips\":" << t.flips
       << "}\n";
  }
  return os.str();
}

} // namespace alex
