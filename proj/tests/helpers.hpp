#pragma once

// Shared fixtures for the unit suites: small bounded / periodic meshes and
// field fillers. Kept header-only; every builder is cheap enough to call
// per test case.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "kinetic/boundary.hpp"
#include "kinetic/field.hpp"
#include "kinetic/moments.hpp"
#include "kinetic/phase_mesh.hpp"

namespace kt {

using namespace kinetic;

// 1D bounded mesh: box [-1, 1], walls at +-1/2, nx cells across the box.
inline PhaseMesh interval_mesh(int nx, int nv = 4, double V = 8.0) {
  SpatialGrid g = SpatialGrid::over_box(1, {-1.0, 0.0}, {1.0, 0.0}, {nx, 1});
  VelocityGrid vel = VelocityGrid::make({nv, nv, nv}, {V, V, V});
  return PhaseMesh::build(g, vel, Geometry::interval(-0.5, 0.5));
}

inline PhaseMesh periodic_mesh_1d(int nx, int nv = 4, double V = 8.0) {
  SpatialGrid g = SpatialGrid::periodic_box(1, {0.0, 0.0}, {1.0, 0.0}, {nx, 1});
  VelocityGrid vel = VelocityGrid::make({nv, nv, nv}, {V, V, V});
  return PhaseMesh::build_periodic(g, vel);
}

// 2D bounded mesh: box [-1, 1]^2 with the domain the upper half-plane y > yw.
inline PhaseMesh halfplane_mesh(int n, double yw = 0.0, int nv = 3, double V = 6.0) {
  SpatialGrid g = SpatialGrid::over_box(2, {-1.0, -1.0}, {1.0, 1.0}, {n, n});
  VelocityGrid vel = VelocityGrid::make({nv, nv, nv}, {V, V, V});
  Geometry geom;
  geom.dim = 2;
  geom.add_half_plane({0.0, yw}, {0.0, 1.0}, "wall");
  return PhaseMesh::build(g, vel, geom);
}

// Same Maxwellian in every slot (interior and ghost alike).
inline void fill_maxwellian(const PhaseMesh& mesh, DistributionField& f, double rho, Vec3 u,
                            double T) {
  std::vector<double> row(static_cast<std::size_t>(mesh.vel.total));
  maxwellian(mesh.vel, rho, u, T, row.data());
  for (int s = 0; s < mesh.active_count(); ++s)
    std::copy(row.begin(), row.end(), f.row(s));
}

// Position-dependent fill over all slots: f(x, v) = shape(x) * M[rho=1,u=0,T](v).
template <class Shape>
inline void fill_modulated(const PhaseMesh& mesh, DistributionField& f, Shape shape, double T = 1.0) {
  std::vector<double> row(static_cast<std::size_t>(mesh.vel.total));
  maxwellian(mesh.vel, 1.0, Vec3{}, T, row.data());
  for (int s = 0; s < mesh.active_count(); ++s) {
    const Vec2 x = mesh.position(mesh.node_of[static_cast<std::size_t>(s)]);
    const double a = shape(x);
    double* r = f.row(s);
    for (int j = 0; j < mesh.vel.total; ++j) r[j] = a * row[static_cast<std::size_t>(j)];
  }
}

inline double linf_diff(const DistributionField& a, const DistributionField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace kt
