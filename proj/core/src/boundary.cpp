#include "kinetic/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"

namespace kinetic {

namespace {

void validate_spec(const std::string& label, const WallSpec& w) {
  switch (w.kind) {
    case WallKind::maxwell:
      if (!(w.alpha >= 0.0 && w.alpha <= 1.0))
        fail(errc::validation_error, "wall '" + label + "': accommodation must lie in [0, 1]");
      [[fallthrough]];
    case WallKind::diffuse:
      if (!(w.Tw > 0.0))
        fail(errc::validation_error, "wall '" + label + "': wall temperature must be positive");
      break;
    case WallKind::inflow:
      if (!(w.rho_in > 0.0) || !(w.T_in > 0.0))
        fail(errc::validation_error, "wall '" + label + "': inflow state must have rho > 0, T > 0");
      break;
    default:
      break;
  }
}

void build_stencil_1d(const PhaseMesh& mesh, const BoundaryFoot& bf, FootWork& fw) {
  const double xp = bf.point.x;
  const double dir = bf.inward.x;
  std::vector<std::pair<double, int>> inward;  // (distance inward, slot)
  for (int slot : mesh.interior) {
    const double d = (mesh.position(mesh.node_of[static_cast<std::size_t>(slot)]).x - xp) * dir;
    if (d > 0.0) inward.push_back({d, slot});
  }
  std::sort(inward.begin(), inward.end());
  if (inward.size() < 3)
    fail(errc::insufficient_interior, "fewer than three interior nodes behind a wall");
  for (int k = 0; k < 3; ++k) fw.slots1d[k] = inward[static_cast<std::size_t>(k)].second;
  fw.xi_b = -inward[0].first;
}

// Specular targets: exact index flip for axis-aligned walls, otherwise a
// bilinear (vx, vy) pane table restricted to outgoing corner nodes; points
// reflected outside the velocity box contribute zero.
void build_reflection(const VelocityGrid& vel, FootWork& fw) {
  const double cs = fw.cs, sn = fw.sn;
  if (std::abs(sn) < 1e-12 || std::abs(cs) < 1e-12) {
    fw.refl_exact = true;
    fw.refl_axis = std::abs(sn) < 1e-12 ? 0 : 1;
    return;
  }
  const int n0 = vel.npts[0], n1 = vel.npts[1];
  fw.refl.assign(static_cast<std::size_t>(n0) * n1, FootWork::Corner{});
  for (int jx = 0; jx < n0; ++jx) {
    const double vx = vel.coord(0, jx);
    for (int jy = 0; jy < n1; ++jy) {
      const double vy = vel.coord(1, jy);
      const double vhx = vx * cs + vy * sn;
      if (vhx <= 0.0) continue;  // only incoming panes reflect
      FootWork::Corner& c = fw.refl[static_cast<std::size_t>(jx) * n1 + jy];
      const double rx = vx - 2.0 * vhx * cs;
      const double ry = vy - 2.0 * vhx * sn;
      const double px = rx / vel.dv[0] + vel.half[0];
      const double py = ry / vel.dv[1] + vel.half[1];
      const int i0 = static_cast<int>(std::floor(px));
      const int k0 = static_cast<int>(std::floor(py));
      const double fx = px - i0, fy = py - k0;
      const double wts[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
      const int ii[4] = {i0, i0 + 1, i0, i0 + 1};
      const int kk[4] = {k0, k0, k0 + 1, k0 + 1};
      double inside_sum = 0.0, valid_sum = 0.0;
      int nvalid = 0;
      for (int m = 0; m < 4; ++m) {
        if (wts[m] < 1e-15) continue;
        if (ii[m] < 0 || ii[m] >= n0 || kk[m] < 0 || kk[m] >= n1) continue;
        inside_sum += wts[m];
        const double ch = vel.coord(0, ii[m]) * cs + vel.coord(1, kk[m]) * sn;
        if (ch > 0.0) continue;  // corner value not produced by extrapolation
        c.pane[nvalid] = ii[m] * n1 + kk[m];
        c.w[nvalid] = wts[m];
        valid_sum += wts[m];
        ++nvalid;
      }
      if (nvalid > 0 && valid_sum > 0.0) {
        const double scale = inside_sum / valid_sum;
        for (int m = 0; m < nvalid; ++m) c.w[m] *= scale;
      } else if (inside_sum > 0.0) {
        // Near-tangential pane: fall back to the nearest outgoing node.
        int best = -1;
        double bd = 0.0;
        for (int i = 0; i < n0; ++i)
          for (int k = 0; k < n1; ++k) {
            if (vel.coord(0, i) * cs + vel.coord(1, k) * sn > 0.0) continue;
            const double dx = vel.coord(0, i) - rx, dy = vel.coord(1, k) - ry;
            const double d = dx * dx + dy * dy;
            if (best < 0 || d < bd) {
              best = i * n1 + k;
              bd = d;
            }
          }
        if (best >= 0) {
          c.pane[0] = best;
          c.w[0] = inside_sum;
        }
      }
    }
  }
}

// Neighbor feet along the wall for the tangential ENO derivative. Candidates
// come from the same piece, are parameterized by the tangent offset, and are
// dropped when the normal offset says the wall bends too much across them.
void build_tangent(const PhaseMesh& mesh, int self, FootWork& fw) {
  const BoundaryFoot& bf = mesh.feet[static_cast<std::size_t>(self)];
  const Vec2 p0 = bf.point;
  const double tx = -fw.sn, ty = fw.cs;
  const double h = std::max(mesh.grid.h[0], mesh.grid.h[1]);
  const double scale = mesh.geom.scale();

  std::vector<std::pair<double, int>> side[2];  // negative / positive arc
  for (int k = 0; k < static_cast<int>(mesh.feet.size()); ++k) {
    if (k == self) continue;
    const BoundaryFoot& ob = mesh.feet[static_cast<std::size_t>(k)];
    if (ob.piece != bf.piece) continue;
    const double dx = ob.point.x - p0.x, dy = ob.point.y - p0.y;
    if (dx * dx + dy * dy > 12.25 * h * h) continue;
    const double s = dx * tx + dy * ty;
    const double e = dx * fw.cs + dy * fw.sn;
    if (std::abs(s) < 1e-9 * scale) continue;                   // same arc position
    if (std::abs(e) > 0.15 * std::abs(s) + 1e-12) continue;     // wall curves away
    side[s > 0.0 ? 1 : 0].push_back({std::abs(s), k});
  }
  for (auto& sd : side) std::sort(sd.begin(), sd.end());

  std::vector<std::pair<double, int>> picks;  // (signed s, foot)
  for (std::size_t m = 0; m < side[0].size() && m < 2; ++m)
    picks.push_back({-side[0][m].first, side[0][m].second});
  picks.push_back({0.0, self});
  for (std::size_t m = 0; m < side[1].size() && m < 2; ++m)
    picks.push_back({side[1][m].first, side[1][m].second});
  std::sort(picks.begin(), picks.end());

  if (picks.size() >= 2) {
    // Drop near-duplicate arc positions, keeping the entry closer to the wall.
    std::vector<std::pair<double, int>> kept;
    for (const auto& pk : picks) {
      if (!kept.empty() && std::abs(pk.first - kept.back().first) < 1e-9 * scale) {
        if (pk.second == self) kept.back() = pk;
        continue;
      }
      kept.push_back(pk);
    }
    picks.swap(kept);
  }

  if (picks.size() >= 2) {
    for (std::size_t m = 0; m < picks.size(); ++m) {
      fw.nb_s.push_back(picks[m].first);
      fw.nb_feet.push_back(picks[m].second);
      if (picks[m].second == self) fw.nb_center = static_cast<int>(m);
    }
    return;
  }

  // Isolated foot: one-sided difference against a nearby interior node with a
  // usable tangential offset.
  int ix0, iy0;
  mesh.split(mesh.ghosts[static_cast<std::size_t>(bf.ghosts[0])].grid_node, ix0, iy0);
  int best = -1;
  double best_e = 0.0, best_s = 0.0;
  for (int ix = std::max(0, ix0 - 3); ix < std::min(mesh.grid.npts[0], ix0 + 4); ++ix)
    for (int iy = std::max(0, iy0 - 3); iy < std::min(mesh.grid.npts[1], iy0 + 4); ++iy) {
      const int node = ix * mesh.grid.npts[1] + iy;
      const int slot = mesh.slot_of[static_cast<std::size_t>(node)];
      if (slot < 0 || mesh.cls[static_cast<std::size_t>(node)] != NodeClass::interior) continue;
      const double dx = mesh.grid.x(ix) - p0.x, dy = mesh.grid.y(iy) - p0.y;
      const double s = dx * tx + dy * ty;
      const double e = std::abs(dx * fw.cs + dy * fw.sn);
      if (std::abs(s) < 0.3 * mesh.hmin() || e > 2.0 * h) continue;
      if (best < 0 || e < best_e || (e == best_e && std::abs(s) < std::abs(best_s))) {
        best = slot;
        best_e = e;
        best_s = s;
      }
    }
  if (best >= 0) {
    fw.tang_fallback = true;
    fw.fb_slot = best;
    fw.fb_inv_s = 1.0 / best_s;
  }
  // else: tangential term treated as zero at this foot.
}

}  // namespace

BoundaryWorkspace build_boundary_workspace(const PhaseMesh& mesh,
                                           const std::map<std::string, WallSpec>& walls) {
  BoundaryWorkspace ws;
  ws.mesh = &mesh;
  const VelocityGrid& vel = mesh.vel;

  std::set<std::string> used;
  ws.walls.reserve(mesh.geom.pieces.size());
  for (const auto& piece : mesh.geom.pieces) {
    auto it = walls.find(piece.label);
    if (it == walls.end())
      fail(errc::validation_error, "no wall condition for boundary piece '" + piece.label + "'");
    validate_spec(piece.label, it->second);
    ws.walls.push_back(it->second);
    used.insert(piece.label);
  }
  for (const auto& [label, spec] : walls) {
    (void)spec;
    if (!used.count(label))
      fail(errc::validation_error, "wall condition for unknown label '" + label + "'");
  }

  ws.vcut = 1e-8 * std::max({vel.vmax[0], vel.vmax[1], vel.vmax[2]});

  const int F = static_cast<int>(mesh.feet.size());
  ws.feet.resize(static_cast<std::size_t>(F));
  for (int fi = 0; fi < F; ++fi) {
    const BoundaryFoot& bf = mesh.feet[static_cast<std::size_t>(fi)];
    FootWork& fw = ws.feet[static_cast<std::size_t>(fi)];
    fw.wall = bf.piece;
    fw.cs = bf.inward.x;
    fw.sn = bf.inward.y;

    if (bf.ghosts.size() > 16)
      fail(errc::degenerate_geometry, "too many ghost nodes share one boundary foot");
    for (int gid : bf.ghosts) {
      const GhostPoint& gp = mesh.ghosts[static_cast<std::size_t>(gid)];
      fw.ghost_slot.push_back(gp.slot);
      fw.ghost_dist.push_back(gp.dist);
    }

    if (mesh.grid.dim == 1) {
      build_stencil_1d(mesh, bf, fw);
    } else {
      std::vector<Vec2> targets;
      targets.push_back(bf.point);
      for (int gid : bf.ghosts)
        targets.push_back(mesh.position(mesh.ghosts[static_cast<std::size_t>(gid)].grid_node));
      Stencil2D st = select_stencil_2d_partial(mesh, bf.point, bf.inward);
      fw.w2 = build_weno2d(mesh, st, targets, bf.point);
      build_tangent(mesh, fi, fw);
    }

    const WallSpec& spec = ws.walls[static_cast<std::size_t>(fw.wall)];
    if (spec.kind == WallKind::maxwell || spec.kind == WallKind::diffuse) {
      fw.wall_row.resize(static_cast<std::size_t>(vel.total));
      for (int j = 0; j < vel.total; ++j) {
        const Vec3 v = vel.node(j);
        fw.wall_row[static_cast<std::size_t>(j)] = std::exp(-norm2(v) / (2.0 * spec.Tw));
      }
      double influx = 0.0;
      for (int j = 0; j < vel.total; ++j) {
        const Vec3 v = vel.node(j);
        const double vhx = v.x * fw.cs + v.y * fw.sn;
        if (vhx > 0.0) influx += vhx * fw.wall_row[static_cast<std::size_t>(j)];
      }
      if (!(influx > 0.0))
        fail(errc::zero_wall_flux, "wall kernel carries no incoming mass flux");
      fw.influx = influx;
    } else if (spec.kind == WallKind::inflow) {
      fw.wall_row.resize(static_cast<std::size_t>(vel.total));
      maxwellian(vel, spec.rho_in, spec.u_in, spec.T_in, fw.wall_row.data());
    }
    if (spec.kind == WallKind::specular ||
        (spec.kind == WallKind::maxwell && spec.alpha < 1.0))
      build_reflection(vel, fw);
  }

  const std::size_t rows = static_cast<std::size_t>(F) * vel.total;
  ws.now.assign(rows, 0.0);
  ws.prev.assign(rows, 0.0);
  ws.q.assign(rows, 0.0);
  ws.tang.assign(rows, 0.0);
  ws.net.assign(static_cast<std::size_t>(F), 0.0);
  ws.gross.assign(static_cast<std::size_t>(F), 0.0);
  return ws;
}

namespace {

double reflect_value(const VelocityGrid& vel, const FootWork& fw, const double* nr, int jx,
                     int jy, int jz) {
  const int n1 = vel.npts[1], n2 = vel.npts[2];
  if (fw.refl_exact) {
    const int fx = fw.refl_axis == 0 ? vel.npts[0] - 1 - jx : jx;
    const int fy = fw.refl_axis == 1 ? n1 - 1 - jy : jy;
    return nr[(fx * n1 + fy) * n2 + jz];
  }
  const FootWork::Corner& c = fw.refl[static_cast<std::size_t>(jx) * n1 + jy];
  double v = 0.0;
  for (int m = 0; m < 4 && c.pane[m] >= 0; ++m) v += c.w[m] * nr[c.pane[m] * n2 + jz];
  return v;
}

// Phase A: WENO-extrapolate the outgoing half at the foot and the attached
// ghosts, then apply the wall condition to the incoming half of the foot row.
void phase_a(BoundaryWorkspace& ws, DistributionField& f, int fi) {
  const PhaseMesh& mesh = *ws.mesh;
  const VelocityGrid& vel = mesh.vel;
  FootWork& fw = ws.feet[static_cast<std::size_t>(fi)];
  double* nr = ws.now_row(fi);
  const int n0 = vel.npts[0], n1 = vel.npts[1], n2 = vel.npts[2];
  const int ng = static_cast<int>(fw.ghost_slot.size());
  double* gr[16];
  for (int g = 0; g < ng; ++g) gr[g] = f.row(fw.ghost_slot[static_cast<std::size_t>(g)]);

  double outflux = 0.0;
  if (mesh.grid.dim == 1) {
    const double* r0 = f.row(fw.slots1d[0]);
    const double* r1 = f.row(fw.slots1d[1]);
    const double* r2 = f.row(fw.slots1d[2]);
    const double h = mesh.grid.h[0];
    for (int jx = 0; jx < n0; ++jx) {
      const double vhx = vel.coord(0, jx) * fw.cs;
      if (vhx > 0.0) continue;
      int j = jx * n1 * n2;
      for (int p = 0; p < n1 * n2; ++p, ++j) {
        const double fv[3] = {r0[j], r1[j], r2[j]};
        const Weno1D e = weno_extrapolate_1d(fv, h, fw.xi_b);
        nr[j] = e.fk[0];
        outflux -= vhx * e.fk[0];
        for (int g = 0; g < ng; ++g)
          gr[g][j] = weno1d_eval(e, -fw.ghost_dist[static_cast<std::size_t>(g)]);
      }
    }
  } else {
    const double* rows[9];
    int idx[9], nk = 0;
    double vals[9] = {0};
    for (int k = 0; k < 9; ++k)
      if (fw.w2.gather_slots[k] >= 0) {
        rows[nk] = f.row(fw.w2.gather_slots[k]);
        idx[nk++] = k;
      }
    for (int jx = 0; jx < n0; ++jx) {
      const double vx = vel.coord(0, jx);
      for (int jy = 0; jy < n1; ++jy) {
        const double vy = vel.coord(1, jy);
        const double vhx = vx * fw.cs + vy * fw.sn;
        if (vhx > 0.0) continue;
        int j = (jx * n1 + jy) * n2;
        for (int jz = 0; jz < n2; ++jz, ++j) {
          for (int m = 0; m < nk; ++m) vals[idx[m]] = rows[m][j];
          double w[3];
          weno2d_weights(fw.w2, vals, w);
          const double fp = weno2d_apply(fw.w2, vals, w, 0);
          nr[j] = fp;
          outflux -= vhx * fp;
          for (int g = 0; g < ng; ++g) gr[g][j] = weno2d_apply(fw.w2, vals, w, 1 + g);
        }
      }
    }
  }

  // Wall condition on the incoming half.
  const WallSpec& spec = ws.walls[static_cast<std::size_t>(fw.wall)];
  const double mu = fw.influx > 0.0 ? outflux / fw.influx : 0.0;
  for (int jx = 0; jx < n0; ++jx) {
    const double vx = vel.coord(0, jx);
    for (int jy = 0; jy < n1; ++jy) {
      const double vy = vel.coord(1, jy);
      if (vx * fw.cs + vy * fw.sn <= 0.0) continue;
      int j = (jx * n1 + jy) * n2;
      for (int jz = 0; jz < n2; ++jz, ++j) {
        double val = 0.0;
        switch (spec.kind) {
          case WallKind::absorbing:
            break;
          case WallKind::inflow:
            val = fw.wall_row[static_cast<std::size_t>(j)];
            break;
          case WallKind::diffuse:
            val = mu * fw.wall_row[static_cast<std::size_t>(j)];
            break;
          case WallKind::specular:
            val = reflect_value(vel, fw, nr, jx, jy, jz);
            break;
          case WallKind::maxwell:
            val = spec.alpha * mu * fw.wall_row[static_cast<std::size_t>(j)];
            if (spec.alpha < 1.0)
              val += (1.0 - spec.alpha) * reflect_value(vel, fw, nr, jx, jy, jz);
            break;
        }
        nr[j] = val;
      }
    }
  }

  // Wall flux diagnostics for the completed foot row.
  double net = 0.0, gross = 0.0;
  int j = 0;
  for (int jx = 0; jx < n0; ++jx) {
    const double vx = vel.coord(0, jx);
    for (int jy = 0; jy < n1; ++jy) {
      const double vhx = vx * fw.cs + vel.coord(1, jy) * fw.sn;
      for (int jz = 0; jz < n2; ++jz, ++j) {
        const double q = vhx * nr[j];
        net += q;
        gross += std::abs(q);
      }
    }
  }
  ws.net[static_cast<std::size_t>(fi)] = net * vel.weight;
  ws.gross[static_cast<std::size_t>(fi)] = gross * vel.weight;
}

// Phase B: characteristic reconstruction of the incoming ghost entries from
// the completed foot rows.
void phase_b(BoundaryWorkspace& ws, DistributionField& f, int fi, const RelaxationModel& model,
             double eps, GhostFillMode mode) {
  const PhaseMesh& mesh = *ws.mesh;
  const VelocityGrid& vel = mesh.vel;
  FootWork& fw = ws.feet[static_cast<std::size_t>(fi)];
  const int nvel = vel.total;
  double* nr = ws.now_row(fi);
  const double* pr = ws.prev.data() + static_cast<std::size_t>(fi) * nvel;
  double* qrow = ws.q.data() + static_cast<std::size_t>(fi) * nvel;
  double* trow = ws.tang.data() + static_cast<std::size_t>(fi) * nvel;

  // Collision source at the foot; degraded gracefully for unusable moments.
  bool have_q = false;
  fw.q_rate = 0.0;
  if (mode == GhostFillMode::ilw) {
    const RawMoments raw = raw_moments(vel, nr);
    if (raw.m0 * vel.weight > 1e-30) {
      const MacroState ms = macro_from_raw(vel, raw);
      if (ms.T > 0.0) {
        try {
          fw.q_rate = collision_operator(vel, nr, ms, model, eps, qrow) / eps;
          have_q = true;
        } catch (const solver_error&) {
          RelaxationModel bgk = model;
          bgk.nu = 0.0;  // isotropic target is always well posed for T > 0
          fw.q_rate = collision_operator(vel, nr, ms, bgk, eps, qrow) / eps;
          have_q = true;
        }
      }
    }
  }
  if (!have_q) std::memset(qrow, 0, static_cast<std::size_t>(nvel) * sizeof(double));

  if (mode == GhostFillMode::ilw && fw.nb_feet.size() >= 2) {
    const int n = static_cast<int>(fw.nb_feet.size());
    const double* rows[5];
    for (int k = 0; k < n; ++k) rows[k] = ws.now_row(fw.nb_feet[static_cast<std::size_t>(k)]);
    double g[5];
    for (int j = 0; j < nvel; ++j) {
      for (int k = 0; k < n; ++k) g[k] = rows[k][j];
      trow[j] = eno_derivative(fw.nb_s.data(), g, n, fw.nb_center);
    }
  } else if (mode == GhostFillMode::ilw && fw.tang_fallback) {
    const double* fb = f.row(fw.fb_slot);
    for (int j = 0; j < nvel; ++j) trow[j] = (fb[j] - nr[j]) * fw.fb_inv_s;
  } else {
    std::memset(trow, 0, static_cast<std::size_t>(nvel) * sizeof(double));
  }

  const double inv_dtp = ws.have_prev && ws.dt_prev > 0.0 ? 1.0 / ws.dt_prev : 0.0;
  const int n0 = vel.npts[0], n1 = vel.npts[1], n2 = vel.npts[2];
  for (std::size_t g = 0; g < fw.ghost_slot.size(); ++g) {
    double* grow = f.row(fw.ghost_slot[g]);
    const double dist = fw.ghost_dist[g];
    for (int jx = 0; jx < n0; ++jx) {
      const double vx = vel.coord(0, jx);
      for (int jy = 0; jy < n1; ++jy) {
        const double vy = vel.coord(1, jy);
        const double vhx = vx * fw.cs + vy * fw.sn;
        if (vhx <= 0.0) continue;
        const double vhy = -vx * fw.sn + vy * fw.cs;
        const double att =
            mode == GhostFillMode::ilw ? ilw_attenuation(fw.q_rate * dist / vhx) : 0.0;
        int j = (jx * n1 + jy) * n2;
        for (int jz = 0; jz < n2; ++jz, ++j) {
          if (mode == GhostFillMode::ilw) {
            const double dtf = (nr[j] - pr[j]) * inv_dtp;
            const double lin =
                ilw_ghost_value(nr[j], dist, vhx, dtf, vhy * trow[j], qrow[j], ws.vcut);
            grow[j] = nr[j] + att * (lin - nr[j]);
          } else {
            grow[j] = nr[j];
          }
        }
      }
    }
  }
}

}  // namespace

void fill_all_ghosts(BoundaryWorkspace& ws, DistributionField& f, const RelaxationModel& model,
                     double eps, double dt, GhostFillMode mode) {
  if (!(eps > 0.0)) fail(errc::validation_error, "eps must be positive");
  if (!(dt > 0.0)) fail(errc::validation_error, "dt must be positive");
  const int F = static_cast<int>(ws.feet.size());
  parallel_for(F, [&](int b, int e) {
    for (int fi = b; fi < e; ++fi) phase_a(ws, f, fi);
  });
  parallel_for(F, [&](int b, int e) {
    for (int fi = b; fi < e; ++fi) phase_b(ws, f, fi, model, eps, mode);
  });
  ws.prev = ws.now;
  ws.dt_prev = dt;
  ws.have_prev = true;
}

void mirror_fill(const PhaseMesh& mesh, const DistributionField& f, int ghost_id, double* out) {
  if (mesh.grid.dim != 1) fail(errc::validation_error, "mirror fill handles 1D meshes only");
  const GhostPoint& gp = mesh.ghosts[static_cast<std::size_t>(ghost_id)];
  const BoundaryFoot& bf = mesh.feet[static_cast<std::size_t>(gp.foot)];
  const double xm = bf.point.x + gp.dist * bf.inward.x;

  std::vector<std::pair<double, int>> xs;  // interior (x, slot), ascending
  for (int slot : mesh.interior)
    xs.push_back({mesh.position(mesh.node_of[static_cast<std::size_t>(slot)]).x, slot});
  const double tol = 1e-12 * mesh.geom.scale();
  if (xs.size() < 3 || xm < xs.front().first - tol || xm > xs.back().first + tol)
    fail(errc::mirror_outside_interior, "mirror point leaves the interior node range");

  std::size_t nearest = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i].first - xm) < std::abs(xs[nearest].first - xm)) nearest = i;
  const std::size_t lo = std::min(std::max<std::size_t>(nearest, 1) - 1, xs.size() - 3);

  const double x0 = xs[lo].first, x1 = xs[lo + 1].first, x2 = xs[lo + 2].first;
  const double c0 = (xm - x1) * (xm - x2) / ((x0 - x1) * (x0 - x2));
  const double c1 = (xm - x0) * (xm - x2) / ((x1 - x0) * (x1 - x2));
  const double c2 = (xm - x0) * (xm - x1) / ((x2 - x0) * (x2 - x1));
  const double* r0 = f.row(xs[lo].second);
  const double* r1 = f.row(xs[lo + 1].second);
  const double* r2 = f.row(xs[lo + 2].second);
  for (int j = 0; j < mesh.vel.total; ++j) {
    const int m = mesh.vel.reflect(j, 0);
    out[j] = c0 * r0[m] + c1 * r1[m] + c2 * r2[m];
  }
}

std::vector<FluxReport> flux_by_label(const BoundaryWorkspace& ws) {
  std::vector<FluxReport> reports;
  std::map<std::string, std::size_t> by_label;
  std::vector<int> counts;
  for (std::size_t fi = 0; fi < ws.feet.size(); ++fi) {
    const std::string& label =
        ws.mesh->geom.pieces[static_cast<std::size_t>(ws.feet[fi].wall)].label;
    auto [it, fresh] = by_label.try_emplace(label, reports.size());
    if (fresh) {
      reports.push_back({label, 0.0, 0.0});
      counts.push_back(0);
    }
    reports[it->second].net += ws.net[fi];
    reports[it->second].gross += ws.gross[fi];
    ++counts[it->second];
  }
  for (std::size_t r = 0; r < reports.size(); ++r) {
    reports[r].net /= counts[r];
    reports[r].gross /= counts[r];
  }
  return reports;
}

}  // namespace kinetic
