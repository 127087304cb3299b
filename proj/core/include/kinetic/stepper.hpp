#pragma once

#include <functional>

#include "kinetic/boundary.hpp"
#include "kinetic/collision.hpp"
#include "kinetic/field.hpp"

namespace kinetic {

struct StepConfig {
  RelaxationModel model;
  double eps = 1.0;
  GhostFillMode ghost_mode = GhostFillMode::ilw;
  bool debug_poison = false;  // NaN-poison ghost rows before each fill
};

struct StepStats {
  double mass = 0.0;    // integral of f over interior cells
  double max_df = 0.0;  // max pointwise change of this step
  double df_l1 = 0.0;   // L1 norm of the change over interior phase space
  double min_f = 0.0;   // most negative value after the step
};

// One step: explicit upwind transport, then relaxation taken implicitly via
// the exactly-relaxed second moment, so the step stays stable uniformly in
// the stiffness parameter. `bws` is null on periodic meshes.
StepStats imex_step(const PhaseMesh& mesh, DistributionField& f, BoundaryWorkspace* bws,
                    const StepConfig& cfg, double dt, DistributionField& scratch);

struct RunResult {
  double t = 0.0;
  int steps = 0;
  bool steady = false;
  StepStats last{};
};

using StepObserver = std::function<void(int step, double t, const StepStats&)>;

// Fixed-dt loop to t_end with the final step shortened to land exactly.
// steady_tol > 0 enables the steady-state exit on ||df||_1 / dt.
RunResult run_transient(const PhaseMesh& mesh, DistributionField& f, BoundaryWorkspace* bws,
                        const StepConfig& cfg, double dt, double t_end, double steady_tol = 0.0,
                        const StepObserver& observer = {});

}  // namespace kinetic
