// Command-line driver: validate metrics, generate fixtures, compute weighted
// Delaunay triangulations, solve for radii, and embed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "alex/embed.hpp"
#include "alex/hull.hpp"
#include "alex/mmp.hpp"
#include "alex/solver.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitSolver = 4;
constexpr int kExitIo = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Declared outputs land atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw std::ios_base::failure("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

alex::PolyhedralMetric load_metric(const std::string& path) {
  return alex::parse_metric(read_file(path));
}

alex::PolyhedralMetric generate_shape(const std::string& shape, int n,
                                      std::uint64_t seed,
                                      std::vector<alex::Vec3>* pts = nullptr) {
  if (shape == "tetra") {
    if (pts) *pts = alex::unit_tetrahedron_points();
    return alex::make_tetrahedron_metric();
  }
  if (shape == "cube") {
    if (pts) *pts = alex::unit_cube_points();
    return alex::make_cube_metric();
  }
  if (shape == "random") {
    return alex::make_random_hull_metric(n, seed, pts);
  }
  throw CLI::ValidationError("--shape must be tetra, cube, or random");
}

std::vector<double> load_radii(const std::string& path, int n) {
  auto j = nlohmann::json::parse(read_file(path));
  std::vector<double> r = j.at("radii").get<std::vector<double>>();
  if (static_cast<int>(r.size()) != n) {
    throw std::invalid_argument("radius count does not match metric");
  }
  return r;
}

int run_solve_pipeline(const alex::PolyhedralMetric& m, const alex::SolverConfig& cfg,
                       const std::string& out_path, const std::string& trace_path,
                       alex::SolveResult* result_out) {
  alex::SolveContext ctx = alex::SolveContext::build(m, cfg.threads);
  alex::SolveResult res = alex::solve_radii(ctx, cfg);
  if (!trace_path.empty()) {
    write_file_atomic(trace_path, alex::trace_to_json(res.trace));
  }
  if (!res.converged) {
    std::cerr << "solver did not reach eps=" << cfg.eps << " in " << res.iterations
              << " iterations (max curvature " << res.star.eps4 << ")\n";
    return kExitSolver;
  }
  if (!out_path.empty()) {
    nlohmann::json j;
    j["radii"] = res.r;
    j["max_curvature"] = res.star.eps4;
    j["iterations"] = res.iterations;
    write_file_atomic(out_path, j.dump(2) + "\n");
  }
  std::cout << "solved: max curvature " << res.star.eps4 << " after " << res.iterations
            << " iterations\n";
  if (result_out) *result_out = std::move(res);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"convex polyhedral metric embedding"};
  app.require_subcommand(1);

  std::string in_path, out_path, report_path, trace_path, weights_path, dump_path;
  std::string shape = "random";
  std::string radii_path;
  int n = 8;
  std::uint64_t seed = 0;
  alex::SolverConfig cfg;

  auto* c_validate = app.add_subcommand("validate", "check a metric file");
  c_validate->add_option("metric", in_path)->required();

  auto* c_gen = app.add_subcommand("gen", "generate a fixture metric");
  c_gen->add_option("--shape", shape, "tetra | cube | random");
  c_gen->add_option("--n", n, "vertex count for random shapes");
  c_gen->add_option("--seed", seed);
  c_gen->add_option("-o,--output", out_path)->required();

  auto* c_del = app.add_subcommand("delaunay", "weighted Delaunay triangulation");
  c_del->add_option("metric", in_path)->required();
  c_del->add_option("--weights", weights_path, "JSON array of vertex weights");
  c_del->add_option("-o,--output", out_path)->required();
  c_del->add_option("--dump-intervals", dump_path, "debug dump of MMP interval lists");

  auto* c_solve = app.add_subcommand("solve", "find radii with small curvature");
  c_solve->add_option("metric", in_path)->required();
  c_solve->add_option("--eps", cfg.eps);
  c_solve->add_option("--max-iters", cfg.max_iters);
  c_solve->add_option("--p0", cfg.p0);
  c_solve->add_option("--seed", seed);
  c_solve->add_option("--threads", cfg.threads);
  c_solve->add_flag("--full-retriangulate", cfg.full_retriangulate);
  c_solve->add_option("--trace", trace_path);
  c_solve->add_option("-o,--output", out_path)->required();

  auto* c_embed = app.add_subcommand("embed", "embed a solved metric");
  c_embed->add_option("metric", in_path)->required();
  c_embed->add_option("radii", radii_path)->required();
  c_embed->add_option("-o,--output", out_path)->required();
  c_embed->add_option("--report", report_path);

  auto* c_pipe = app.add_subcommand("pipeline", "gen + solve + embed");
  c_pipe->add_option("--shape", shape);
  c_pipe->add_option("--n", n);
  c_pipe->add_option("--seed", seed);
  c_pipe->add_option("--eps", cfg.eps);
  c_pipe->add_option("--max-iters", cfg.max_iters);
  c_pipe->add_option("--threads", cfg.threads);
  c_pipe->add_flag("--full-retriangulate", cfg.full_retriangulate);
  c_pipe->add_option("--trace", trace_path);
  c_pipe->add_option("-o,--output", out_path)->required();
  c_pipe->add_option("--report", report_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c_validate->parsed()) {
      alex::PolyhedralMetric m = load_metric(in_path);
      alex::ValidationReport rep = m.validate();
      if (!rep.ok()) {
        for (const auto& v : rep.violations) {
          std::cout << "violation: " << v.code << " (" << v.detail << ")\n";
        }
        return kExitValidation;
      }
      std::cout << "valid: n=" << m.vertex_count() << "\n";
      return 0;
    }

    if (c_gen->parsed()) {
      alex::PolyhedralMetric m = generate_shape(shape, n, seed);
      write_file_atomic(out_path, m.to_json() + "\n");
      std::cout << "wrote " << out_path << " (n=" << m.vertex_count() << ")\n";
      return 0;
    }

    if (c_del->parsed()) {
      alex::PolyhedralMetric m = load_metric(in_path);
      alex::ValidationReport rep = m.validate();
      if (!rep.ok()) {
        std::cerr << "invalid metric (" << rep.violations[0].code << ")\n";
        return kExitValidation;
      }
      std::vector<double> w(m.vertex_count(), 0.0);
      if (!weights_path.empty()) {
        auto j = nlohmann::json::parse(read_file(weights_path));
        w = j.get<std::vector<double>>();
        if (static_cast<int>(w.size()) != m.vertex_count()) {
          throw std::invalid_argument("weight count does not match metric");
        }
      }
      if (!dump_path.empty()) {
        std::vector<alex::SurfacePoint> sources;
        for (int v = 0; v < m.vertex_count(); ++v) {
          sources.push_back(alex::SurfacePoint::at_vertex(v));
        }
        alex::DistanceField f = alex::run_mmp(m, sources);
        write_file_atomic(dump_path, alex::windows_to_json(f));
      }
      alex::VoronoiDiagram vor = alex::voronoi_diagram(m);
      alex::Triangulation seed_tri = alex::unweighted_delaunay(m, vor);
      alex::Triangulation T = alex::weighted_delaunay(m, w, seed_tri);
      write_file_atomic(out_path, T.to_json() + "\n");
      std::cout << "wrote " << out_path << " (" << T.complex.triangle_count()
                << " triangles)\n";
      return 0;
    }

    if (c_solve->parsed()) {
      alex::PolyhedralMetric m = load_metric(in_path);
      return run_solve_pipeline(m, cfg, out_path, trace_path, nullptr);
    }

    if (c_embed->parsed()) {
      alex::PolyhedralMetric m = load_metric(in_path);
      std::vector<double> r = load_radii(radii_path, m.vertex_count());
      alex::SolveContext ctx = alex::SolveContext::build(m, cfg.threads);
      std::vector<double> w(r.size());
      for (size_t i = 0; i < r.size(); ++i) w[i] = r[i] * r[i];
      alex::Triangulation T = alex::weighted_delaunay(m, w, ctx.seed);
      auto [emb, rep] = alex::embed_mesh(m, T, r);
      write_file_atomic(out_path, alex::export_obj(emb, T));
      if (!report_path.empty()) write_file_atomic(report_path, rep.to_json());
      std::cout << "embedded: accuracy " << rep.accuracy << ", convexity slack "
                << rep.convexity_slack << "\n";
      return 0;
    }

    if (c_pipe->parsed()) {
      alex::PolyhedralMetric m = generate_shape(shape, n, seed);
      alex::SolveResult res;
      int code = run_solve_pipeline(m, cfg, "", trace_path, &res);
      if (code != 0) return code;
      auto [emb, rep] = alex::embed_mesh(m, res.T, res.r);
      write_file_atomic(out_path, alex::export_obj(emb, res.T));
      if (!report_path.empty()) write_file_atomic(report_path, rep.to_json());
      std::cout << "embedded: accuracy " << rep.accuracy << ", convexity slack "
                << rep.convexity_slack << "\n";
      return 0;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const alex::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
