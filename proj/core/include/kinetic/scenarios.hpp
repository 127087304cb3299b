#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/boundary.hpp"
#include "kinetic/stepper.hpp"

namespace kinetic {

// nv entries are points per velocity semi-axis (axis total 2*nv+1, so v = 0
// always sits on a node); vmax entries are half-widths.
struct ScenarioOverrides {
  std::optional<int> nx, ny;
  std::optional<std::array<int, 3>> nv;
  std::optional<std::array<double, 3>> vmax;
  std::optional<double> eps;
  std::optional<double> nu, c_tau, omega;
  std::optional<double> t_end, dt, cfl;
  std::optional<double> mach_in;
  std::optional<GhostFillMode> ghost_mode;
  std::map<std::string, WallSpec> walls;  // merged over the scenario defaults
  std::optional<std::string> profile_path;  // airfoil polyline ("x y" lines)
};

struct Scenario {
  std::string name;
  SpatialGrid grid;
  VelocityGrid vel;
  Geometry geom;
  std::map<std::string, WallSpec> walls;
  StepConfig cfg;
  double cfl = 0.3;
  double dt = 0.0;  // explicit override or cfl-derived
  double t_end = 1.0;
  double steady_tol = 0.0;  // > 0 enables the steady-state exit
  double gamma = 1.4;
  std::function<void(const PhaseMesh&, DistributionField&)> init;

  PhaseMesh make_mesh() const { return PhaseMesh::build(grid, vel, geom); }
};

std::vector<std::string> scenario_names();

// Throws UnknownScenario for names outside scenario_names().
Scenario build_scenario(const std::string& name, const ScenarioOverrides& ov = {});

struct ConvergenceReport {
  std::vector<int> ladder;
  std::vector<double> dt_used;         // per level
  std::vector<double> err_interior;    // between consecutive levels
  std::vector<double> err_boundary;    // restricted near the walls
  std::vector<double> order_interior;  // log2 ratios of consecutive errors
  std::vector<double> order_boundary;
};

// Self-convergence on a nested factor-2 ladder of spatial meshes sharing one
// velocity grid; dt scales with h^2 from the coarsest level's CFL-limited
// step so the first-order time error cannot mask the spatial order.
ConvergenceReport convergence_study(const Scenario& base, const std::vector<int>& ladder);

struct LayerReport {
  std::string label;
  double bulk_p = 0.0;
  double bulk_variation = 0.0;  // max |p - bulk_p| / bulk_p over the middle half
  double magnitude = 0.0;       // max |p - bulk_p| in the wall quarter
  double width = 0.0;           // first distance where |p - bulk_p| < magnitude/2
};

// Knudsen-layer metrics of a 1D pressure profile, one entry per wall piece.
std::vector<LayerReport> layer_metrics(const PhaseMesh& mesh, const DistributionField& f);

// Same, gated on the steady flag of the producing run (throws NotSteady).
std::vector<LayerReport> knudsen_layer_diagnostics(const PhaseMesh& mesh,
                                                   const DistributionField& f, bool steady);

}  // namespace kinetic
