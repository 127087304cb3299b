// Command-line front end: run a configured scenario, run a convergence
// ladder, or list the available scenarios.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kinetic/config.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/output.hpp"
#include "kinetic/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

bool is_config_error(kinetic::errc c) {
  return c == kinetic::errc::parse_error || c == kinetic::errc::validation_error ||
         c == kinetic::errc::unknown_scenario;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) kinetic::fail(kinetic::errc::io_error, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

kinetic::RunConfig load_config(const std::string& path, const std::string& output_dir,
                               int cadence) {
  kinetic::RunConfig rc = kinetic::parse_config(read_file(path));
  if (!output_dir.empty()) rc.output_dir = output_dir;
  if (cadence > 0) rc.cadence = cadence;
  return rc;
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

int cmd_run(const kinetic::RunConfig& rc) {
  using namespace kinetic;
  Scenario sc = build_scenario(rc.scenario, rc.overrides);
  PhaseMesh mesh = sc.make_mesh();
  BoundaryWorkspace bws = build_boundary_workspace(mesh, sc.walls);
  DistributionField f = DistributionField::zeros(mesh);
  sc.init(mesh, f);

  std::filesystem::create_directories(rc.output_dir);
  std::ofstream diag(join_path(rc.output_dir, "diagnostics.csv"),
                     std::ios::binary | std::ios::trunc);
  if (!diag) fail(errc::io_error, "cannot write diagnostics.csv in '" + rc.output_dir + "'");

  // Header: per-wall-label net/gross mean flux densities follow the globals.
  std::vector<FluxReport> reports = flux_by_label(bws);
  diag << "step,t,mass,max_df,df_l1";
  for (const auto& r : reports) diag << ",net_" << r.label << ",gross_" << r.label;
  diag << "\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  RunResult rr =
      run_transient(mesh, f, &bws, sc.cfg, sc.dt, sc.t_end, sc.steady_tol,
                    [&](int step, double t, const StepStats& st) {
                      if (step % rc.cadence != 0) return;
                      diag << step << ',' << num(t) << ',' << num(st.mass) << ','
                           << num(st.max_df) << ',' << num(st.df_l1);
                      for (const auto& r : flux_by_label(bws))
                        diag << ',' << num(r.net) << ',' << num(r.gross);
                      diag << "\n";
                    });
  diag.close();
  if (!diag) fail(errc::io_error, "failed writing diagnostics.csv");

  for (const auto& fmt : rc.outputs) {
    if (fmt == "moments-csv")
      write_moments_csv(mesh, f, sc.gamma, join_path(rc.output_dir, "moments.csv"));
    else if (fmt == "field-vtk")
      write_field_vtk(mesh, f, sc.gamma, join_path(rc.output_dir, "field.vtk"));
  }

  std::printf("scenario %s: %d steps to t=%.6g%s, mass %.12g\n", rc.scenario.c_str(), rr.steps,
              rr.t, rr.steady ? " (steady-state exit)" : "", rr.last.mass);
  return 0;
}

int cmd_converge(const kinetic::RunConfig& rc, const std::string& ladder_arg) {
  using namespace kinetic;
  std::vector<int> ladder;
  {
    std::stringstream ss(ladder_arg);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
        ladder.push_back(v);
      } catch (const std::exception&) {
        fail(errc::validation_error, "--ladder expects comma-separated positive integers");
      }
    }
  }

  Scenario sc = build_scenario(rc.scenario, rc.overrides);
  ConvergenceReport rep = convergence_study(sc, ladder);

  std::filesystem::create_directories(rc.output_dir);
  std::ofstream out(join_path(rc.output_dir, "convergence.csv"),
                    std::ios::binary | std::ios::trunc);
  if (!out) fail(errc::io_error, "cannot write convergence.csv in '" + rc.output_dir + "'");
  out << "nx,dt,err_interior,err_boundary,order_interior,order_boundary\n";
  std::printf("%6s %12s %14s %14s %10s %10s\n", "nx", "dt", "e_interior", "e_boundary", "o_int",
              "o_bnd");
  for (std::size_t k = 0; k < rep.ladder.size(); ++k) {
    auto cell = [&](const std::vector<double>& v, std::size_t shift) {
      return k >= shift && k - shift < v.size() ? v[k - shift] : std::nan("");
    };
    const double ei = cell(rep.err_interior, 1), eb = cell(rep.err_boundary, 1);
    const double oi = cell(rep.order_interior, 2), ob = cell(rep.order_boundary, 2);
    char line[256];
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g", rep.ladder[k],
                  rep.dt_used[k], ei, eb, oi, ob);
    out << line << "\n";
    std::printf("%6d %12.4e %14.6e %14.6e %10.3f %10.3f\n", rep.ladder[k], rep.dt_used[k], ei, eb,
                oi, ob);
  }
  out.close();
  if (!out) fail(errc::io_error, "failed writing convergence.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic kinetic relaxation solver"};
  app.require_subcommand(1);

  std::string config_path, output_dir, ladder = "32,64,128";
  int cadence = 0;

  CLI::App* run = app.add_subcommand("run", "Run a scenario from a config file");
  run->add_option("config", config_path, "config file path")->required();
  run->add_option("--output-dir", output_dir, "directory for diagnostics and outputs");
  run->add_option("--cadence", cadence, "diagnostics row every k steps")
      ->check(CLI::PositiveNumber);

  CLI::App* conv = app.add_subcommand("converge", "Self-convergence ladder for a config");
  conv->add_option("config", config_path, "config file path")->required();
  conv->add_option("--ladder", ladder, "comma-separated nested mesh sizes");
  conv->add_option("--output-dir", output_dir, "directory for convergence.csv");

  CLI::App* list = app.add_subcommand("scenarios", "List available scenarios");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& n : kinetic::scenario_names()) std::printf("%s\n", n.c_str());
    return 0;
  }

  kinetic::RunConfig rc;
  try {
    rc = load_config(config_path, output_dir, cadence);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(rc);
    return cmd_converge(rc, ladder);
  } catch (const kinetic::solver_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return is_config_error(e.code()) ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
