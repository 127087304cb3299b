#pragma once

#include <array>
#include <vector>

#include "kinetic/vec3.hpp"

namespace kinetic {

// Uniform Cartesian velocity grid, symmetric about the origin per axis:
// 2*half[k]+1 points at v = (j - half[k]) * dv[k], so v = 0 is always a node
// and every node has an exact mirror partner.
struct VelocityGrid {
  std::array<int, 3> half{};
  std::array<double, 3> vmax{};
  std::array<double, 3> dv{};
  std::array<int, 3> npts{};
  int total = 0;
  double weight = 0.0;  // midpoint cell measure dv[0]*dv[1]*dv[2]
  std::array<std::vector<double>, 3> coords;

  static VelocityGrid make(std::array<int, 3> half_points, std::array<double, 3> half_width);

  double coord(int axis, int j) const { return coords[axis][static_cast<std::size_t>(j)]; }

  int lin(int jx, int jy, int jz) const { return (jx * npts[1] + jy) * npts[2] + jz; }

  void split(int j, int& jx, int& jy, int& jz) const {
    jz = j % npts[2];
    j /= npts[2];
    jy = j % npts[1];
    jx = j / npts[1];
  }

  Vec3 node(int j) const {
    int jx, jy, jz;
    split(j, jx, jy, jz);
    return {coords[0][jx], coords[1][jy], coords[2][jz]};
  }

  // Index of the node with the velocity component along `axis` negated.
  int reflect(int j, int axis) const {
    int jc[3];
    split(j, jc[0], jc[1], jc[2]);
    jc[axis] = 2 * half[axis] - jc[axis];
    return lin(jc[0], jc[1], jc[2]);
  }

  double max_speed(int axis) const { return vmax[axis]; }
};

}  // namespace kinetic
