#include "kinetic/velocity_grid.hpp"

#include "kinetic/errors.hpp"

namespace kinetic {

VelocityGrid VelocityGrid::make(std::array<int, 3> half_points, std::array<double, 3> half_width) {
  VelocityGrid g;
  g.half = half_points;
  g.vmax = half_width;
  for (int k = 0; k < 3; ++k) {
    if (g.half[k] < 1) fail(errc::validation_error, "velocity grid needs at least 3 points per axis");
    if (!(g.vmax[k] > 0.0)) fail(errc::validation_error, "velocity half-width must be positive");
    g.npts[k] = 2 * g.half[k] + 1;
    g.dv[k] = g.vmax[k] / g.half[k];
    g.coords[k].resize(static_cast<std::size_t>(g.npts[k]));
    for (int j = 0; j < g.npts[k]; ++j) g.coords[k][j] = (j - g.half[k]) * g.dv[k];
  }
  g.total = g.npts[0] * g.npts[1] * g.npts[2];
  g.weight = g.dv[0] * g.dv[1] * g.dv[2];
  return g;
}

}  // namespace kinetic
