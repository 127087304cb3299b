#pragma once

#include "kinetic/field.hpp"
#include "kinetic/phase_mesh.hpp"

namespace kinetic {

// cfl * min over transport axes of h / vmax.
double cfl_timestep(const PhaseMesh& mesh, double cfl);

// Second-order one-sided upwind v . grad_x f for one interior slot, written
// into out (nvel entries). Ghost rows must be filled first.
void transport_term(const PhaseMesh& mesh, const DistributionField& f, int slot, double* out);

}  // namespace kinetic
