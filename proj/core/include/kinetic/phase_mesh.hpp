#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kinetic/geometry.hpp"
#include "kinetic/spatial_grid.hpp"
#include "kinetic/velocity_grid.hpp"

namespace kinetic {

enum class NodeClass : std::uint8_t { unused, interior, ghost };

struct GhostPoint {
  int grid_node = -1;
  int slot = -1;
  int foot = -1;
  double dist = 0.0;  // |x_g - x_p|
};

struct BoundaryFoot {
  Vec2 point{};
  Vec2 inward{};
  double theta = 0.0;
  int piece = -1;
  std::vector<int> ghosts;  // attached ghost ids, nearest first
};

// Phase-space mesh: spatial classification against the wall geometry plus the
// shared velocity grid. Active nodes (interior and ghost) get dense slots;
// distribution fields store one contiguous velocity row per slot.
struct PhaseMesh {
  SpatialGrid grid;
  VelocityGrid vel;
  Geometry geom;

  std::vector<NodeClass> cls;    // per grid node
  std::vector<int> slot_of;      // grid node -> slot, -1 when unused
  std::vector<int> node_of;      // slot -> grid node
  std::vector<int> interior;     // interior slots in grid order
  std::vector<double> mass_w;    // per slot: fraction of the node cell inside
                                 // the domain (cut-cell quadrature weight)
  std::vector<GhostPoint> ghosts;
  std::vector<BoundaryFoot> feet;

  // Per slot: x-2, x-1, x+1, x+2, y-2, y-1, y+1, y+2 neighbor slots (-1 if absent).
  std::vector<std::array<int, 8>> nb;

  static PhaseMesh build(SpatialGrid grid, VelocityGrid vel, Geometry geom);
  static PhaseMesh build_periodic(SpatialGrid grid, VelocityGrid vel);

  int active_count() const { return static_cast<int>(node_of.size()); }
  void split(int grid_node, int& ix, int& iy) const {
    ix = grid_node / grid.npts[1];
    iy = grid_node % grid.npts[1];
  }
  Vec2 position(int grid_node) const {
    int ix, iy;
    split(grid_node, ix, iy);
    return {grid.x(ix), grid.y(iy)};
  }
  double hmin() const { return grid.dim == 2 ? std::min(grid.h[0], grid.h[1]) : grid.h[0]; }
};

}  // namespace kinetic
