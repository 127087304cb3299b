#pragma once

#include <map>
#include <string>
#include <vector>

#include "kinetic/collision.hpp"
#include "kinetic/field.hpp"
#include "kinetic/phase_mesh.hpp"
#include "kinetic/weno.hpp"

namespace kinetic {

enum class WallKind { maxwell, specular, diffuse, inflow, absorbing };

struct WallSpec {
  WallKind kind = WallKind::diffuse;
  double alpha = 1.0;   // accommodation coefficient (maxwell)
  double Tw = 1.0;      // wall temperature (maxwell / diffuse)
  double rho_in = 1.0;  // upstream state (inflow)
  Vec3 u_in{};
  double T_in = 1.0;
};

// zeroth keeps the wall condition but drops the characteristic correction in
// the ghost values (ghost = foot value for incoming velocities).
enum class GhostFillMode { ilw, zeroth };

// Everything precomputed for one boundary foot: the outflow extrapolation
// stencil with per-target coefficients, wall-kernel rows, reflection tables
// and the tangential-derivative layout.
struct FootWork {
  int wall = -1;              // geometry piece / wall spec index
  double cs = 1.0, sn = 0.0;  // inward normal components

  int slots1d[3] = {-1, -1, -1};  // 1D stencil, outward-to-inward
  double xi_b = 0.0;              // boundary offset from the first stencil node

  Weno2DWorkspace w2;  // 2D; targets: [0] = foot, then attached ghosts in order

  std::vector<int> ghost_slot;
  std::vector<double> ghost_dist;

  std::vector<double> wall_row;  // exp(-|v|^2/2Tw) or the inflow maxwellian
  double influx = 0.0;           // sum_{vhat>0} vhat wall_row (no dv^3 factor)
  double q_rate = 0.0;           // collision rate tau/eps of the last foot row

  // Specular reflection: exact index flip when the wall is axis-aligned,
  // otherwise bilinear interpolation in the (vx, vy) pane.
  bool refl_exact = false;
  int refl_axis = 0;
  struct Corner {
    int pane[4] = {-1, -1, -1, -1};
    double w[4] = {0, 0, 0, 0};
  };
  std::vector<Corner> refl;  // per (jx, jy) pane, incoming panes only

  // Tangential derivative along the wall (2D): neighbor feet by arc offset.
  std::vector<int> nb_feet;  // foot ids, arc-ordered, includes this foot
  std::vector<double> nb_s;
  int nb_center = 0;
  bool tang_fallback = false;  // one-sided interior difference instead
  int fb_slot = -1;
  double fb_inv_s = 0.0;
};

struct FluxReport {
  std::string label;
  double net = 0.0;    // mean over the label's feet of sum vhat f dv^3
  double gross = 0.0;  // same with |vhat|
};

struct BoundaryWorkspace {
  const PhaseMesh* mesh = nullptr;
  std::vector<WallSpec> walls;  // per geometry piece
  std::vector<FootWork> feet;
  double vcut = 0.0;

  // Rolling per-foot boundary rows for the time-derivative term.
  std::vector<double> now, prev, q, tang;
  std::vector<double> net, gross;  // per foot fluxes from the latest fill
  double dt_prev = 0.0;
  bool have_prev = false;

  double* now_row(int foot) { return now.data() + static_cast<std::size_t>(foot) * nvel(); }
  const double* now_row(int foot) const {
    return now.data() + static_cast<std::size_t>(foot) * nvel();
  }
  int nvel() const { return mesh->vel.total; }
};

// Resolves wall specs against the geometry piece labels and precomputes the
// per-foot pipeline. Throws ZeroWallFlux when a wall kernel has no incoming
// mass flux and ValidationError on label mismatches.
BoundaryWorkspace build_boundary_workspace(const PhaseMesh& mesh,
                                           const std::map<std::string, WallSpec>& walls);

// Fills every ghost row of f in three phases: outgoing-velocity extrapolation
// at feet and ghosts, the wall condition at each foot, and the characteristic
// normal-derivative reconstruction for incoming velocities.
void fill_all_ghosts(BoundaryWorkspace& ws, DistributionField& f, const RelaxationModel& model,
                     double eps, double dt, GhostFillMode mode = GhostFillMode::ilw);

// Reference specular fill for one ghost on a 1D mesh: quadratic interpolation
// at the mirror point with the normal velocity reversed, written into out.
void mirror_fill(const PhaseMesh& mesh, const DistributionField& f, int ghost_id, double* out);

std::vector<FluxReport> flux_by_label(const BoundaryWorkspace& ws);

}  // namespace kinetic
