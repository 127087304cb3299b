#pragma once

#include <cmath>
#include <vector>

#include "kinetic/phase_mesh.hpp"

namespace kinetic {

inline constexpr double kWenoEps = 1e-6;

// ----- 1D outflow extrapolation -----
// Stencil values ordered outward-to-inward with spacing dx; the boundary sits
// at xi_b <= 0 in the inward axis coordinate whose origin is the first node.
struct Weno1D {
  double beta[3];
  double w[3];
  double fk[3];  // blended value / first / second derivative at the boundary
};

Weno1D weno_extrapolate_1d(const double f[3], double dx, double xi_b, double eps_w = kWenoEps);

// Taylor evaluation about the boundary point; s is the inward-positive offset.
inline double weno1d_eval(const Weno1D& e, double s) {
  return e.fk[0] + s * (e.fk[1] + 0.5 * s * e.fk[2]);
}

// ----- 2D nested stencil -----
struct Stencil2D {
  int levels = 0;     // usable nested substencils
  int line_axis = 1;  // stencil lines have constant coordinate along this axis
  int slots[3][3] = {{-1, -1, -1}, {-1, -1, -1}, {-1, -1, -1}};
  Vec2 pos[3][3];
  int count[3] = {0, 0, 0};  // interior nodes found per line
  int nlines = 0;
};

// Full 3x3 selection along the inward normal; throws InsufficientInterior
// when the domain is too thin for it.
Stencil2D select_stencil_2d(const PhaseMesh& mesh, Vec2 xp, Vec2 inward);
// Largest admissible nested substencil (levels in 1..3).
Stencil2D select_stencil_2d_partial(const PhaseMesh& mesh, Vec2 xp, Vec2 inward);

struct Weno2DWorkspace {
  Stencil2D stencil;
  double d[3] = {0, 0, 0};
  double beta0 = 0.0;  // dx^2 + dy^2, also the level-0 smoothness indicator
  double B1[10] = {0};  // packed symmetric form on the 4 level-1 nodes
  double B2[45] = {0};  // packed symmetric form on the 9 level-2 nodes
  double eps_w = kWenoEps;
  struct Target {
    double c0 = 0.0;
    double c1[4] = {0, 0, 0, 0};
    double c2[9] = {0, 0, 0, 0, 0, 0, 0, 0, 0};
  };
  std::vector<Target> targets;
  int gather_slots[9] = {-1, -1, -1, -1, -1, -1, -1, -1, -1};  // line-major
};

// Precomputes evaluation data for a stencil and a set of target points.
// Throws StencilOutsideDomain if a used stencil node is not interior.
Weno2DWorkspace build_weno2d(const PhaseMesh& mesh, const Stencil2D& st,
                             const std::vector<Vec2>& targets, Vec2 xp,
                             double eps_w = kWenoEps);

struct Weno2DEval {
  double beta[3];
  double w[3];
};

// vals holds the gathered node values in workspace order (9 entries; unused
// positions ignored). Returns the blended value at targets[target].
double weno2d_value(const Weno2DWorkspace& ws, const double* vals, int target,
                    Weno2DEval* diag = nullptr);

// Two-phase evaluation: nonlinear weights once per data row, then cheap
// per-target application.
void weno2d_weights(const Weno2DWorkspace& ws, const double* vals, double w[3],
                    double beta[3] = nullptr);
double weno2d_apply(const Weno2DWorkspace& ws, const double* vals, const double w[3], int target);

// ----- ENO tangential derivative -----
// Positions s strictly increasing, values g, center index c. Second-order
// divided-difference derivative; stencil grows toward the smoother side and
// growth is rejected when the quadratic correction dwarfs the local slope.
double eno_derivative(const double* s, const double* g, int n, int c);

// ----- ILW ghost kernel -----
// ghost = f_p + (dist / vhat_x) * (dtf + vy_dtang - qterm); zeroth-order
// fallback to f_p when |vhat_x| < vcut.
inline double ilw_ghost_value(double f_p, double dist, double vhat_x, double dtf,
                              double vy_dtang, double qterm, double vcut) {
  if (!(vhat_x >= vcut || vhat_x <= -vcut)) return f_p;
  return f_p + (dist / vhat_x) * (dtf + vy_dtang - qterm);
}

// Attenuation of the characteristic ghost correction by the collisional
// optical depth r = (collision rate) * dist / vhat_x of the extrapolation
// leg. The exact upstream reconstruction amplifies the boundary
// disequilibrium by e^{+r}, which is ill posed once the leg spans more than
// a mean free path; attenuating the linear correction by e^{-r} recovers the
// full formula as r -> 0 (error O(r) on an O(dist) term) and degrades to the
// stable zeroth-order fill in the collision-dominated limit.
inline double ilw_attenuation(double r) { return r > 0.0 ? std::exp(-r) : 1.0; }

}  // namespace kinetic
