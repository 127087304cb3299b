#include "kinetic/moments.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kinetic/errors.hpp"

namespace kinetic {

RawMoments raw_moments(const VelocityGrid& grid, const double* f) {
  RawMoments r;
  const double* vx = grid.coords[0].data();
  const double* vy = grid.coords[1].data();
  const double* vz = grid.coords[2].data();
  std::size_t idx = 0;
  for (int jx = 0; jx < grid.npts[0]; ++jx) {
    const double ax = vx[jx];
    for (int jy = 0; jy < grid.npts[1]; ++jy) {
      const double ay = vy[jy];
      double s0 = 0.0, sz = 0.0, szz = 0.0;
      for (int jz = 0; jz < grid.npts[2]; ++jz, ++idx) {
        const double w = f[idx];
        const double az = vz[jz];
        s0 += w;
        sz += az * w;
        szz += az * az * w;
      }
      r.m0 += s0;
      r.m1.x += ax * s0;
      r.m1.y += ay * s0;
      r.m1.z += sz;
      r.m2.xx += ax * ax * s0;
      r.m2.yy += ay * ay * s0;
      r.m2.zz += szz;
      r.m2.xy += ax * ay * s0;
      r.m2.xz += ax * sz;
      r.m2.yz += ay * sz;
    }
  }
  return r;
}

MacroState macro_from_raw(const VelocityGrid& grid, const RawMoments& raw) {
  const double w = grid.weight;
  MacroState ms;
  ms.rho = raw.m0 * w;
  if (!(ms.rho > 1e-300)) fail(errc::empty_density, "density vanished in moment evaluation");
  ms.u = (w / ms.rho) * raw.m1;
  ms.sigma = w * raw.m2;
  ms.theta = (1.0 / ms.rho) * ms.sigma - SymMat3::outer(ms.u);
  ms.T = ms.theta.trace() / 3.0;
  ms.E = 0.5 * ms.sigma.trace();
  return ms;
}

MacroState compute_moments(const VelocityGrid& grid, const double* f) {
  // Small negative values are tolerated (extrapolation undershoot), but a
  // node more negative than 1e-8 of the peak means the state is unusable.
  double mn = 0.0, mx = 0.0;
  for (int j = 0; j < grid.total(); ++j) {
    mn = std::min(mn, f[j]);
    mx = std::max(mx, f[j]);
  }
  if (mn < -1e-8 * mx)
    fail(errc::validation_error, "distribution has large negative values");
  return macro_from_raw(grid, raw_moments(grid, f));
}

void maxwellian(const VelocityGrid& grid, double rho, Vec3 u, double T, double* out) {
  if (!(T > 0.0)) fail(errc::non_positive_temperature, "maxwellian needs T > 0");
  if (!(rho >= 0.0)) fail(errc::validation_error, "maxwellian needs rho >= 0");
  const double pref = rho * std::pow(2.0 * M_PI * T, -1.5);
  const double inv2T = 0.5 / T;
  const double uc[3] = {u.x, u.y, u.z};
  std::vector<double> ax[3];
  for (int k = 0; k < 3; ++k) {
    ax[k].resize(grid.npts[k]);
    for (int j = 0; j < grid.npts[k]; ++j) {
      const double d = grid.coords[k][j] - uc[k];
      ax[k][j] = std::exp(-d * d * inv2T);
    }
  }
  std::size_t idx = 0;
  for (int jx = 0; jx < grid.npts[0]; ++jx) {
    const double px = pref * ax[0][jx];
    for (int jy = 0; jy < grid.npts[1]; ++jy) {
      const double pxy = px * ax[1][jy];
      const double* gz = ax[2].data();
      for (int jz = 0; jz < grid.npts[2]; ++jz, ++idx) out[idx] = pxy * gz[jz];
    }
  }
}

SymMat3 corrected_tensor(const MacroState& ms, double nu) {
  if (!(nu >= -0.5 && nu < 1.0)) fail(errc::validation_error, "nu must lie in [-1/2, 1)");
  return SymMat3::identity((1.0 - nu) * ms.T) + nu * ms.theta;
}

namespace {

void gaussian_diagonal(const VelocityGrid& grid, double rho, Vec3 u, double Tx, double Ty,
                       double Tz, double* out) {
  const double pref =
      rho * std::pow(2.0 * M_PI, -1.5) / std::sqrt(Tx * Ty * Tz);
  const double uc[3] = {u.x, u.y, u.z};
  const double inv2[3] = {0.5 / Tx, 0.5 / Ty, 0.5 / Tz};
  std::vector<double> ax[3];
  for (int k = 0; k < 3; ++k) {
    ax[k].resize(grid.npts[k]);
    for (int j = 0; j < grid.npts[k]; ++j) {
      const double d = grid.coords[k][j] - uc[k];
      ax[k][j] = std::exp(-d * d * inv2[k]);
    }
  }
  std::size_t idx = 0;
  for (int jx = 0; jx < grid.npts[0]; ++jx) {
    const double px = pref * ax[0][jx];
    for (int jy = 0; jy < grid.npts[1]; ++jy) {
      const double pxy = px * ax[1][jy];
      const double* gz = ax[2].data();
      for (int jz = 0; jz < grid.npts[2]; ++jz, ++idx) out[idx] = pxy * gz[jz];
    }
  }
}

}  // namespace

void gaussian_esbgk(const VelocityGrid& grid, double rho, Vec3 u, const SymMat3& tensor,
                    double* out) {
  if (!(rho >= 0.0)) fail(errc::validation_error, "gaussian needs rho >= 0");
  // Off-diagonal entries far below roundoff relative to the mean eigenvalue
  // are summation noise (e.g. symmetric 1D flows); route them to the cheap
  // separable path instead of the Cholesky sweep.
  const double snap = 1e-13 * (tensor.trace() / 3.0);
  const bool diag = std::abs(tensor.xy) <= snap && std::abs(tensor.xz) <= snap &&
                    std::abs(tensor.yz) <= snap;
  if (diag && tensor.xx == tensor.yy && tensor.yy == tensor.zz) {
    maxwellian(grid, rho, u, tensor.xx, out);
    return;
  }
  if (diag) {
    if (!(tensor.xx > 0.0 && tensor.yy > 0.0 && tensor.zz > 0.0))
      fail(errc::tensor_not_spd, "diagonal relaxation tensor has a non-positive entry");
    gaussian_diagonal(grid, rho, u, tensor.xx, tensor.yy, tensor.zz, out);
    return;
  }
  Chol3 ch;
  if (!ch.factor(tensor, 1e-12 * tensor.trace()))
    fail(errc::tensor_not_spd, "relaxation tensor is not positive definite");
  const double pref = rho * std::pow(2.0 * M_PI, -1.5) / std::sqrt(ch.det());
  std::size_t idx = 0;
  for (int jx = 0; jx < grid.npts[0]; ++jx) {
    const double cx = grid.coords[0][jx] - u.x;
    for (int jy = 0; jy < grid.npts[1]; ++jy) {
      const double cy = grid.coords[1][jy] - u.y;
      // Forward substitution split so the z sweep costs two fma and one exp.
      const double w0 = cx / ch.l00;
      const double w1p = (cy - ch.l10 * w0) / ch.l11;
      const double base = w0 * w0 + w1p * w1p;
      const double c20 = -ch.l20 * w0 - ch.l21 * w1p;
      for (int jz = 0; jz < grid.npts[2]; ++jz, ++idx) {
        const double w2 = (grid.coords[2][jz] - u.z + c20) / ch.l22;
        out[idx] = pref * std::exp(-0.5 * (base + w2 * w2));
      }
    }
  }
}

}  // namespace kinetic
