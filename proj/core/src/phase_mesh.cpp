#include "kinetic/phase_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

// Offsets the upwind transport stencil can read from an interior node.
constexpr int kLayers = 2;

void build_neighbors(PhaseMesh& m) {
  const auto& g = m.grid;
  m.nb.assign(m.node_of.size(), {-1, -1, -1, -1, -1, -1, -1, -1});
  auto wrap = [&](int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
  };
  for (std::size_t s = 0; s < m.node_of.size(); ++s) {
    int ix, iy;
    m.split(m.node_of[s], ix, iy);
    const int off[4] = {-2, -1, 1, 2};
    for (int k = 0; k < 4; ++k) {
      int jx = ix + off[k];
      if (g.periodic) jx = wrap(jx, g.npts[0]);
      if (jx >= 0 && jx < g.npts[0]) m.nb[s][k] = m.slot_of[g.lin(jx, iy)];
    }
    if (g.dim == 2) {
      for (int k = 0; k < 4; ++k) {
        int jy = iy + off[k];
        if (g.periodic) jy = wrap(jy, g.npts[1]);
        if (jy >= 0 && jy < g.npts[1]) m.nb[s][4 + k] = m.slot_of[g.lin(ix, jy)];
      }
    }
  }
}

void assign_slots(PhaseMesh& m) {
  const int total = m.grid.total();
  m.slot_of.assign(total, -1);
  m.node_of.clear();
  m.interior.clear();
  for (int n = 0; n < total; ++n) {
    if (m.cls[n] == NodeClass::unused) continue;
    m.slot_of[n] = static_cast<int>(m.node_of.size());
    m.node_of.push_back(n);
    if (m.cls[n] == NodeClass::interior) m.interior.push_back(m.slot_of[n]);
  }
}

}  // namespace

PhaseMesh PhaseMesh::build(SpatialGrid grid, VelocityGrid vel, Geometry geom) {
  PhaseMesh m;
  m.grid = grid;
  m.vel = std::move(vel);
  m.geom = std::move(geom);
  if (m.geom.dim != grid.dim) fail(errc::validation_error, "geometry/grid dimension mismatch");

  const int total = grid.total();
  m.cls.assign(total, NodeClass::unused);

  int n_interior = 0;
  for (int n = 0; n < total; ++n) {
    int ix = n / grid.npts[1], iy = n % grid.npts[1];
    if (m.geom.sdf({grid.x(ix), grid.y(iy)}) < 0.0) {
      m.cls[n] = NodeClass::interior;
      ++n_interior;
    }
  }
  if (n_interior == 0) fail(errc::degenerate_geometry, "no interior node inside the geometry");

  // Ghosts: non-interior nodes within kLayers axis steps of an interior node.
  for (int n = 0; n < total; ++n) {
    if (m.cls[n] != NodeClass::interior) continue;
    int ix = n / grid.npts[1], iy = n % grid.npts[1];
    for (int axis = 0; axis < grid.dim; ++axis) {
      for (int d = -kLayers; d <= kLayers; ++d) {
        if (d == 0) continue;
        int jx = ix + (axis == 0 ? d : 0);
        int jy = iy + (axis == 1 ? d : 0);
        if (jx < 0 || jx >= grid.npts[0] || jy < 0 || jy >= grid.npts[1])
          fail(errc::boundary_too_close_to_box,
               "ghost layer leaves the bounding box; enlarge the box around the geometry");
        int nn = grid.lin(jx, jy);
        if (m.cls[nn] == NodeClass::unused) m.cls[nn] = NodeClass::ghost;
      }
    }
  }

  assign_slots(m);
  build_neighbors(m);

  // Quadrature weights for domain integrals: the wall-nearest interior node of
  // each lattice line gets a boundary cell stretched to the wall, so the cells
  // tile the domain up to the boundary. Node at normal distance d < h_n (the
  // cell extent projected onto the wall normal) weighs (d + h_n/2) / h_n; all
  // deeper nodes weigh 1. Summing f * weight * cell over interior slots then
  // approximates the domain integral to second order; the unweighted slot sum
  // is only first order and its error oscillates with the wall's position
  // inside the boundary cell.
  m.mass_w.assign(m.node_of.size(), 0.0);
  for (int slot : m.interior) {
    const Vec2 x = m.position(m.node_of[static_cast<std::size_t>(slot)]);
    const double d = -m.geom.sdf(x);
    double w = 1.0;
    if (d <= std::max(m.grid.h[0], m.grid.h[1])) {
      const Vec2 nrm = m.geom.pieces[static_cast<std::size_t>(m.geom.active_piece(x))].inward_at(x);
      const double hn = std::abs(nrm.x) * m.grid.h[0] +
                        (grid.dim == 2 ? std::abs(nrm.y) * m.grid.h[1] : 0.0);
      // Inclusive: when the wall sits exactly on the previous lattice node
      // (d = h_n), that node is a ghost and this cell must still stretch to
      // the wall (w = 3/2) or a half-cell strip goes uncounted.
      if (d <= hn) w = 0.5 + d / hn;
    }
    m.mass_w[static_cast<std::size_t>(slot)] = w;
  }

  // Ghost registry with feet deduplicated by exact projected position.
  std::map<std::pair<double, double>, int> foot_index;
  for (int n = 0; n < total; ++n) {
    if (m.cls[n] != NodeClass::ghost) continue;
    Vec2 xg = m.position(n);
    Foot f = m.geom.project(xg);
    GhostPoint gp;
    gp.grid_node = n;
    gp.slot = m.slot_of[n];
    gp.dist = norm(xg - f.point);
    auto key = std::make_pair(f.point.x, f.point.y);
    auto it = foot_index.find(key);
    if (it == foot_index.end()) {
      BoundaryFoot bf;
      bf.point = f.point;
      bf.inward = f.inward;
      bf.theta = f.theta;
      bf.piece = f.piece;
      m.feet.push_back(bf);
      it = foot_index.emplace(key, static_cast<int>(m.feet.size()) - 1).first;
    }
    gp.foot = it->second;
    m.feet[gp.foot].ghosts.push_back(static_cast<int>(m.ghosts.size()));
    m.ghosts.push_back(gp);
  }
  for (auto& f : m.feet) {
    std::sort(f.ghosts.begin(), f.ghosts.end(),
              [&](int a, int b) { return m.ghosts[a].dist < m.ghosts[b].dist; });
  }
  return m;
}

PhaseMesh PhaseMesh::build_periodic(SpatialGrid grid, VelocityGrid vel) {
  if (!grid.periodic) fail(errc::validation_error, "build_periodic needs a periodic grid");
  PhaseMesh m;
  m.grid = grid;
  m.vel = std::move(vel);
  m.geom.dim = grid.dim;
  const int total = grid.total();
  m.cls.assign(total, NodeClass::interior);
  assign_slots(m);
  build_neighbors(m);
  m.mass_w.assign(m.node_of.size(), 1.0);
  return m;
}

}  // namespace kinetic
