#pragma once

#include <string>

#include "kinetic/field.hpp"
#include "kinetic/phase_mesh.hpp"

namespace kinetic {

// One row per interior node in grid order: x[,y],rho,ux,uy,uz,T,p,mach with
// p = rho*T and mach = |u|/sqrt(gamma*T); header row; 17 significant digits.
void write_moments_csv(const PhaseMesh& mesh, const DistributionField& f, double gamma,
                       const std::string& path);

// Legacy ASCII VTK structured-points file of the moment scalars over the full
// node grid; a 0/1 blanking scalar marks interior nodes and every moment is
// zero outside them.
void write_field_vtk(const PhaseMesh& mesh, const DistributionField& f, double gamma,
                     const std::string& path);

}  // namespace kinetic
