#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "kinetic/phase_mesh.hpp"

using namespace kinetic;

TEST_SUITE("phase_mesh") {
  TEST_CASE("1d classification: interior band plus two ghost layers per wall") {
    const PhaseMesh mesh = kt::interval_mesh(10);  // h = 0.2, walls at +-0.5
    std::vector<double> interior_x, ghost_x;
    for (int n = 0; n < mesh.grid.total(); ++n) {
      const double x = mesh.position(n).x;
      if (mesh.cls[static_cast<std::size_t>(n)] == NodeClass::interior) interior_x.push_back(x);
      if (mesh.cls[static_cast<std::size_t>(n)] == NodeClass::ghost) ghost_x.push_back(x);
    }
    CHECK(interior_x.size() == 5);  // -0.4, -0.2, 0, 0.2, 0.4
    for (double x : interior_x) CHECK(std::abs(x) < 0.5);
    CHECK(ghost_x.size() == 4);  // -0.8, -0.6, 0.6, 0.8
    for (double x : ghost_x) {
      CHECK(std::abs(x) > 0.5);
      CHECK(std::abs(x) < 0.5 + 2.0 * mesh.grid.h[0] + 1e-12);
    }
  }

  TEST_CASE("node exactly on the wall is a ghost and the boundary cell stretches") {
    // nx = 8 over [-1, 1]: h = 0.25 and the node lattice hits -0.5 exactly.
    const PhaseMesh mesh = kt::interval_mesh(8);
    bool found_wall_node = false;
    for (int n = 0; n < mesh.grid.total(); ++n) {
      const double x = mesh.position(n).x;
      if (x == -0.5) {
        found_wall_node = true;
        CHECK(mesh.cls[static_cast<std::size_t>(n)] == NodeClass::ghost);
      }
    }
    CHECK(found_wall_node);
    // First interior node sits a full spacing from the wall: weight 3/2.
    double wmax = 0.0, wsum = 0.0;
    for (int slot : mesh.interior) {
      wmax = std::max(wmax, mesh.mass_w[static_cast<std::size_t>(slot)]);
      wsum += mesh.mass_w[static_cast<std::size_t>(slot)];
    }
    CHECK(std::abs(wmax - 1.5) <= 1e-12);
    CHECK(std::abs(wsum * mesh.grid.h[0] - 1.0) <= 1e-12);
  }

  TEST_CASE("quadrature weights tile the interval exactly") {
    for (int nx : {10, 12, 26, 40}) {
      const PhaseMesh mesh = kt::interval_mesh(nx);
      double wsum = 0.0;
      for (int slot : mesh.interior) {
        const double w = mesh.mass_w[static_cast<std::size_t>(slot)];
        CHECK(w > 0.0);
        wsum += w;
      }
      CHECK(std::abs(wsum * mesh.grid.h[0] - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("2d half-plane classification matches the brute-force rule") {
    const PhaseMesh mesh = kt::halfplane_mesh(12, 0.07);
    const auto& g = mesh.grid;
    auto inside = [&](int ix, int iy) {
      return mesh.geom.sdf({g.x(ix), g.y(iy)}) < 0.0;
    };
    for (int ix = 0; ix < g.npts[0]; ++ix) {
      for (int iy = 0; iy < g.npts[1]; ++iy) {
        const int n = g.lin(ix, iy);
        NodeClass expect;
        if (inside(ix, iy)) {
          expect = NodeClass::interior;
        } else {
          bool near = false;
          for (int off = -SpatialGrid::pad; off <= SpatialGrid::pad; ++off) {
            if (off == 0) continue;
            if (ix + off >= 0 && ix + off < g.npts[0] && inside(ix + off, iy)) near = true;
            if (iy + off >= 0 && iy + off < g.npts[1] && inside(ix, iy + off)) near = true;
          }
          expect = near ? NodeClass::ghost : NodeClass::unused;
        }
        CHECK(mesh.cls[static_cast<std::size_t>(n)] == expect);
      }
    }
  }

  TEST_CASE("ghost feet on a circle: projection, alignment, ordering") {
    SpatialGrid g = SpatialGrid::over_box(2, {-1.0, -1.0}, {1.0, 1.0}, {40, 40});
    VelocityGrid vel = VelocityGrid::make({1, 1, 1}, {1.0, 1.0, 1.0});
    Geometry geom;
    geom.dim = 2;
    const Vec2 c{0.05, 0.02};
    const double r = 0.3;
    geom.add_circle_hole(c, r, "body");
    const PhaseMesh mesh = PhaseMesh::build(g, vel, geom);

    CHECK(!mesh.ghosts.empty());
    for (const GhostPoint& gp : mesh.ghosts) {
      const Vec2 xg = mesh.position(gp.grid_node);
      const BoundaryFoot& foot = mesh.feet[static_cast<std::size_t>(gp.foot)];
      // Foot lies on the circle and the ghost offset is parallel to the normal.
      CHECK(std::abs(norm(foot.point - c) - r) <= 1e-10);
      const Vec2 dvec = xg - foot.point;
      CHECK(std::abs(norm(dvec) - gp.dist) <= 1e-12);
      const Vec2 n = foot.inward;
      CHECK(std::abs(dvec.x * n.y - dvec.y * n.x) <= 1e-10);
      CHECK(mesh.geom.sdf(xg) >= 0.0);
    }
    for (const BoundaryFoot& foot : mesh.feet) {
      CHECK(!foot.ghosts.empty());
      for (std::size_t k = 1; k < foot.ghosts.size(); ++k)
        CHECK(mesh.ghosts[static_cast<std::size_t>(foot.ghosts[k - 1])].dist <=
              mesh.ghosts[static_cast<std::size_t>(foot.ghosts[k])].dist + 1e-15);
    }
    // Nodes deep inside the hole are excluded from the active set.
    int cslot = mesh.slot_of[static_cast<std::size_t>(
        g.lin(g.npts[0] / 2, g.npts[1] / 2))];
    CHECK(cslot == -1);
  }

  TEST_CASE("slanted half-plane feet match the closed-form projection") {
    SpatialGrid g = SpatialGrid::over_box(2, {-1.0, -1.0}, {1.0, 1.0}, {20, 20});
    VelocityGrid vel = VelocityGrid::make({1, 1, 1}, {1.0, 1.0, 1.0});
    Geometry geom;
    geom.dim = 2;
    const double nn = std::sqrt(1.0 + 0.3 * 0.3);
    const Vec2 n{0.3 / nn, 1.0 / nn};
    const Vec2 p{0.0, -0.31};
    geom.add_half_plane(p, n, "ramp");
    const PhaseMesh mesh = PhaseMesh::build(g, vel, geom);

    CHECK(!mesh.ghosts.empty());
    for (const GhostPoint& gp : mesh.ghosts) {
      const Vec2 xg = mesh.position(gp.grid_node);
      const double s = mesh.geom.sdf(xg);  // outside distance
      const Vec2 expect = xg + s * n;
      const Vec2 foot = mesh.feet[static_cast<std::size_t>(gp.foot)].point;
      CHECK(norm(foot - expect) <= 1e-10);
    }
  }

  TEST_CASE("interior stencils close within the active set") {
    const PhaseMesh m1 = kt::interval_mesh(16 + 1);  // odd count: no node on a wall
    for (int slot : m1.interior)
      for (int k = 0; k < 4; ++k) CHECK(m1.nb[static_cast<std::size_t>(slot)][k] >= 0);

    const PhaseMesh m2 = kt::halfplane_mesh(12, 0.07);
    for (int slot : m2.interior) {
      const Vec2 x = m2.position(m2.node_of[static_cast<std::size_t>(slot)]);
      if (std::abs(x.x) > 0.8 || x.y > 0.8) continue;  // near the outer box edge
      for (int k = 0; k < 8; ++k) CHECK(m2.nb[static_cast<std::size_t>(slot)][k] >= 0);
    }
  }

  TEST_CASE("rebuilding gives a bit-identical mesh") {
    const PhaseMesh a = kt::halfplane_mesh(10, 0.033);
    const PhaseMesh b = kt::halfplane_mesh(10, 0.033);
    CHECK(a.cls == b.cls);
    CHECK(a.slot_of == b.slot_of);
    CHECK(a.node_of == b.node_of);
    CHECK(a.interior == b.interior);
    CHECK(a.mass_w == b.mass_w);
    REQUIRE(a.ghosts.size() == b.ghosts.size());
    for (std::size_t i = 0; i < a.ghosts.size(); ++i) {
      CHECK(a.ghosts[i].grid_node == b.ghosts[i].grid_node);
      CHECK(a.ghosts[i].foot == b.ghosts[i].foot);
      CHECK(a.ghosts[i].dist == b.ghosts[i].dist);
    }
    REQUIRE(a.feet.size() == b.feet.size());
    for (std::size_t i = 0; i < a.feet.size(); ++i) {
      CHECK(a.feet[i].point.x == b.feet[i].point.x);
      CHECK(a.feet[i].point.y == b.feet[i].point.y);
      CHECK(a.feet[i].ghosts == b.feet[i].ghosts);
    }
  }
}
