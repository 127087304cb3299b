#include "kinetic/spatial_grid.hpp"

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {
void check(int dim, std::array<double, 2> lo, std::array<double, 2> hi, std::array<int, 2> ncells) {
  if (dim != 1 && dim != 2) fail(errc::validation_error, "spatial dimension must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (ncells[a] < 4) fail(errc::validation_error, "spatial grid needs at least 4 cells per axis");
    if (!(hi[a] > lo[a])) fail(errc::validation_error, "box extent must be positive");
  }
}
}  // namespace

SpatialGrid SpatialGrid::over_box(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
                                  std::array<int, 2> ncells) {
  check(dim, lo, hi, ncells);
  SpatialGrid g;
  g.dim = dim;
  g.cells = ncells;
  g.box_lo = lo;
  g.box_hi = hi;
  for (int a = 0; a < dim; ++a) {
    g.h[a] = (hi[a] - lo[a]) / ncells[a];
    g.origin[a] = lo[a] - pad * g.h[a];
    g.npts[a] = ncells[a] + 1 + 2 * pad;
  }
  if (dim == 1) {
    g.h[1] = 1.0;
    g.origin[1] = 0.0;
    g.npts[1] = 1;
  }
  return g;
}

SpatialGrid SpatialGrid::periodic_box(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
                                      std::array<int, 2> ncells) {
  check(dim, lo, hi, ncells);
  SpatialGrid g;
  g.dim = dim;
  g.periodic = true;
  g.cells = ncells;
  g.box_lo = lo;
  g.box_hi = hi;
  for (int a = 0; a < dim; ++a) {
    g.h[a] = (hi[a] - lo[a]) / ncells[a];
    g.origin[a] = lo[a];
    g.npts[a] = ncells[a];
  }
  if (dim == 1) {
    g.h[1] = 1.0;
    g.origin[1] = 0.0;
    g.npts[1] = 1;
  }
  return g;
}

}  // namespace kinetic
