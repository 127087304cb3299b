#pragma once

#include <array>

namespace kinetic {

// Uniform Cartesian node grid over a bounding box. The wall geometry lives
// strictly inside the box; bounded grids carry two extra node layers per side
// so ghost layers never run off the array. Refining cells by 2 keeps every
// coarse box node coincident with a fine node (coarse i -> fine 2i - 2 with
// the pad offset, pure integers).
struct SpatialGrid {
  int dim = 1;
  bool periodic = false;
  std::array<int, 2> cells{};           // box subdivisions per axis
  std::array<double, 2> box_lo{};
  std::array<double, 2> box_hi{};
  std::array<double, 2> h{1.0, 1.0};
  std::array<double, 2> origin{};       // coordinate of node index 0
  std::array<int, 2> npts{1, 1};

  static SpatialGrid over_box(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
                              std::array<int, 2> ncells);
  static SpatialGrid periodic_box(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
                                  std::array<int, 2> ncells);

  double x(int ix) const { return origin[0] + ix * h[0]; }
  double y(int iy) const { return origin[1] + iy * h[1]; }
  int lin(int ix, int iy) const { return ix * npts[1] + iy; }
  int total() const { return npts[0] * npts[1]; }

  static constexpr int pad = 2;
};

}  // namespace kinetic
