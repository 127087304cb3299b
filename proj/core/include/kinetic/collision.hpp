#pragma once

#include "kinetic/moments.hpp"
#include "kinetic/velocity_grid.hpp"

namespace kinetic {

// Relaxation collision model. nu = 0 recovers plain BGK (Pr = 1); nu in
// [-1/2, 0) lowers the Prandtl number, Pr = 1/(1-nu).
struct RelaxationModel {
  double nu = 0.0;
  double c_tau = 1.0;
  double omega = 1.0;  // tau = c_tau * rho * T^(1-omega)
};

double relaxation_time(const RelaxationModel& model, double rho, double T);

// Q(f) = (tau/eps) (G[f] - f) evaluated against the supplied moments.
// Returns tau. `out` may alias nothing; scratch allocation is internal.
double collision_operator(const VelocityGrid& grid, const double* f, const MacroState& ms,
                          const RelaxationModel& model, double eps, double* out);

}  // namespace kinetic
