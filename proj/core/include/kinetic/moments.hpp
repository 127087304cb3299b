#pragma once

#include "kinetic/vec3.hpp"
#include "kinetic/velocity_grid.hpp"

namespace kinetic {

struct RawMoments {
  double m0 = 0.0;      // sum f
  Vec3 m1{};            // sum v f
  SymMat3 m2{};         // sum v (x) v f
};

struct MacroState {
  double rho = 0.0;
  Vec3 u{};
  double T = 0.0;
  double E = 0.0;       // (1/2) integral |v|^2 f
  SymMat3 theta{};      // stress tensor (1/rho) integral (v-u)(x)(v-u) f
  SymMat3 sigma{};      // raw second moment integral v (x) v f
};

RawMoments raw_moments(const VelocityGrid& grid, const double* f);

// Midpoint-rule moments. Throws EmptyDensity when the mass is not usable.
MacroState compute_moments(const VelocityGrid& grid, const double* f);
MacroState macro_from_raw(const VelocityGrid& grid, const RawMoments& raw);

// f_M(v) = rho (2 pi T)^{-3/2} exp(-|v-u|^2 / (2T)), sampled at grid nodes.
void maxwellian(const VelocityGrid& grid, double rho, Vec3 u, double T, double* out);

// Relaxation target tensor (1-nu) T I + nu Theta; nu in [-1/2, 1).
SymMat3 corrected_tensor(const MacroState& ms, double nu);

inline double prandtl_of_nu(double nu) { return 1.0 / (1.0 - nu); }

// Anisotropic Gaussian rho / sqrt(det(2 pi Tensor)) exp(-(v-u).Tensor^{-1}(v-u)/2).
// Falls back to the separable product for diagonal tensors and to maxwellian
// for exactly isotropic ones.
void gaussian_esbgk(const VelocityGrid& grid, double rho, Vec3 u, const SymMat3& tensor,
                    double* out);

}  // namespace kinetic
