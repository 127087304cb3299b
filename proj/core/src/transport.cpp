#include "kinetic/transport.hpp"

#include <cassert>
#include <cmath>

#include "kinetic/errors.hpp"

namespace kinetic {

double cfl_timestep(const PhaseMesh& mesh, double cfl) {
  if (!(cfl > 0.0)) fail(errc::validation_error, "cfl must be positive");
  double dt = cfl * mesh.grid.h[0] / mesh.vel.max_speed(0);
  if (mesh.grid.dim == 2) dt = std::min(dt, cfl * mesh.grid.h[1] / mesh.vel.max_speed(1));
  return dt;
}

void transport_term(const PhaseMesh& mesh, const DistributionField& f, int slot, double* out) {
  const VelocityGrid& vel = mesh.vel;
  const auto& nb = mesh.nb[static_cast<std::size_t>(slot)];
  const double* c = f.row(slot);

  // nb order: x-2, x-1, x+1, x+2, y-2, y-1, y+1, y+2.
  const double* xr[4] = {nullptr, nullptr, nullptr, nullptr};
  const double* yr[4] = {nullptr, nullptr, nullptr, nullptr};
  for (int k = 0; k < 4; ++k) {
    if (nb[k] >= 0) xr[k] = f.row(nb[k]);
    if (nb[4 + k] >= 0) yr[k] = f.row(nb[4 + k]);
  }
  const bool do_y = mesh.grid.dim == 2;
  const double ax = 1.0 / (2.0 * mesh.grid.h[0]);
  const double ay = do_y ? 1.0 / (2.0 * mesh.grid.h[1]) : 0.0;

  const int n1 = vel.npts[1], n2 = vel.npts[2];
  int j = 0;
  if (!do_y) {
    // 1D: the upwind pick and coefficient are constant over the whole
    // (jy, jz) block, so the inner loop is a single branch-free sweep.
    const int m = n1 * n2;
    for (int jx = 0; jx < vel.npts[0]; ++jx) {
      const double vx = vel.coord(0, jx);
      const double* x1 = vx > 0.0 ? xr[1] : xr[2];  // first upwind neighbor
      const double* x2 = vx > 0.0 ? xr[0] : xr[3];
      assert(vx == 0.0 || (x1 && x2));
      const double acx = std::abs(vx) * ax;
      if (!x1 || !x2) x1 = x2 = c;  // vx == 0: coefficient is zero
      for (int k = 0; k < m; ++k, ++j)
        out[j] = acx * (3.0 * c[j] - 4.0 * x1[j] + x2[j]);
    }
    return;
  }
  for (int jx = 0; jx < vel.npts[0]; ++jx) {
    const double vx = vel.coord(0, jx);
    const double* x1 = vx > 0.0 ? xr[1] : xr[2];
    const double* x2 = vx > 0.0 ? xr[0] : xr[3];
    assert(vx == 0.0 || (x1 && x2));
    const double acx = std::abs(vx) * ax;
    if (!x1 || !x2) x1 = x2 = c;
    for (int jy = 0; jy < n1; ++jy) {
      const double vy = vel.coord(1, jy);
      const double* y1 = vy > 0.0 ? yr[1] : yr[2];
      const double* y2 = vy > 0.0 ? yr[0] : yr[3];
      assert(vy == 0.0 || (y1 && y2));
      const double acy = std::abs(vy) * ay;
      if (!y1 || !y2) y1 = y2 = c;
      for (int jz = 0; jz < n2; ++jz, ++j)
        out[j] = acx * (3.0 * c[j] - 4.0 * x1[j] + x2[j]) +
                 acy * (3.0 * c[j] - 4.0 * y1[j] + y2[j]);
    }
  }
}

}  // namespace kinetic
