#include "kinetic/stepper.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "kinetic/errors.hpp"
#include "kinetic/parallel.hpp"
#include "kinetic/transport.hpp"

namespace kinetic {

namespace {

struct ChunkError {
  bool set = false;
  errc code = errc::validation_error;
  std::string what;
};

void record(ChunkError& slot, const solver_error& e) {
  if (slot.set) return;
  slot.set = true;
  slot.code = e.code();
  slot.what = e.what();
  // Rethrowing re-applies the code prefix; drop it from the stored text.
  const std::string pre = std::string(errc_name(e.code())) + ": ";
  if (slot.what.rfind(pre, 0) == 0) slot.what.erase(0, pre.size());
}

void rethrow_first(const std::vector<ChunkError>& errs) {
  for (const auto& e : errs)
    if (e.set) throw solver_error(e.code, e.what);
}

}  // namespace

StepStats imex_step(const PhaseMesh& mesh, DistributionField& f, BoundaryWorkspace* bws,
                    const StepConfig& cfg, double dt, DistributionField& scratch) {
  if (!(dt > 0.0)) fail(errc::validation_error, "dt must be positive");
  if (!(cfg.eps > 0.0)) fail(errc::validation_error, "eps must be positive");
  if (scratch.nvel != f.nvel || scratch.data.size() != f.data.size())
    fail(errc::validation_error, "scratch field shape mismatch");

  const VelocityGrid& vel = mesh.vel;
  const int nvel = vel.total;

  if (bws) {
    if (cfg.debug_poison) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      for (const GhostPoint& gp : mesh.ghosts) {
        double* row = f.row(gp.slot);
        for (int j = 0; j < nvel; ++j) row[j] = nan;
      }
    }
    fill_all_ghosts(*bws, f, cfg.model, cfg.eps, dt, cfg.ghost_mode);
  }

  const std::vector<int>& slots = mesh.interior;
  const std::size_t n = slots.size();
  const int C = chunk_count(n);
  std::vector<double> pmass(static_cast<std::size_t>(C), 0.0);
  std::vector<double> pmax(static_cast<std::size_t>(C), 0.0);
  std::vector<double> pdf1(static_cast<std::size_t>(C), 0.0);
  std::vector<double> pmin(static_cast<std::size_t>(C), std::numeric_limits<double>::infinity());
  std::vector<ChunkError> errs(static_cast<std::size_t>(C));

  // Pass 1: transported explicit state f* = f - dt v.grad f into scratch.
  parallel_for_chunked(n, [&](int c, std::size_t b, std::size_t e) {
    try {
      for (std::size_t i = b; i < e; ++i) {
        const int slot = slots[i];
        const double* frow = f.row(slot);
        double* srow = scratch.row(slot);
        transport_term(mesh, f, slot, srow);
        for (int j = 0; j < nvel; ++j) srow[j] = frow[j] - dt * srow[j];
      }
    } catch (const solver_error& err) {
      record(errs[static_cast<std::size_t>(c)], err);
    }
  });
  rethrow_first(errs);

  // Pass 2: moments of f*, exactly-relaxed second moment, implicit blend.
  parallel_for_chunked(n, [&](int c, std::size_t b, std::size_t e) {
    try {
      std::vector<double> gbuf(static_cast<std::size_t>(nvel));
      double* g = gbuf.data();
      double mass = 0.0, mx = 0.0, df1 = 0.0;
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t i = b; i < e; ++i) {
        const int slot = slots[i];
        double* frow = f.row(slot);
        const double* srow = scratch.row(slot);

        const MacroState ms = macro_from_raw(vel, raw_moments(vel, srow));
        if (!(ms.T > 0.0))
          fail(errc::non_positive_temperature, "transport produced a non-positive temperature");
        const double tau = relaxation_time(cfg.model, ms.rho, ms.T);
        const double sig = cfg.eps / (cfg.eps + tau * dt);

        SymMat3 tensor;
        if (cfg.model.nu == 0.0) {
          tensor = ms.T * SymMat3::identity();
        } else {
          const double a = (1.0 - cfg.model.nu) * tau * dt;
          const SymMat3 drive =
              ms.rho * (ms.T * SymMat3::identity() + SymMat3::outer(ms.u));
          const SymMat3 sig_new = (1.0 / (cfg.eps + a)) * (cfg.eps * ms.sigma + a * drive);
          const SymMat3 theta_new = (1.0 / ms.rho) * sig_new - SymMat3::outer(ms.u);
          tensor = (1.0 - cfg.model.nu) * ms.T * SymMat3::identity() + cfg.model.nu * theta_new;
        }
        gaussian_esbgk(vel, ms.rho, ms.u, tensor, g);

        double rs = 0.0;
        for (int j = 0; j < nvel; ++j) {
          const double nv = sig * srow[j] + (1.0 - sig) * g[j];
          const double d = std::abs(nv - frow[j]);
          if (d > mx) mx = d;
          df1 += d;
          if (nv < mn) mn = nv;
          rs += nv;
          frow[j] = nv;
        }
        if (!std::isfinite(rs)) fail(errc::non_finite_state, "state lost finiteness");
        mass += rs * mesh.mass_w[static_cast<std::size_t>(slot)];
      }
      pmass[static_cast<std::size_t>(c)] = mass;
      pmax[static_cast<std::size_t>(c)] = mx;
      pdf1[static_cast<std::size_t>(c)] = df1;
      pmin[static_cast<std::size_t>(c)] = mn;
    } catch (const solver_error& err) {
      record(errs[static_cast<std::size_t>(c)], err);
    }
  });
  rethrow_first(errs);

  StepStats st;
  const double cell = mesh.grid.h[0] * mesh.grid.h[1];
  for (int c = 0; c < C; ++c) {
    st.mass += pmass[static_cast<std::size_t>(c)];
    st.max_df = std::max(st.max_df, pmax[static_cast<std::size_t>(c)]);
    st.df_l1 += pdf1[static_cast<std::size_t>(c)];
    st.min_f = std::min(st.min_f, pmin[static_cast<std::size_t>(c)]);
  }
  st.mass *= vel.weight * cell;
  st.df_l1 *= vel.weight * cell;
  if (!std::isfinite(st.mass)) fail(errc::non_finite_state, "state lost finiteness");
  return st;
}

RunResult run_transient(const PhaseMesh& mesh, DistributionField& f, BoundaryWorkspace* bws,
                        const StepConfig& cfg, double dt, double t_end, double steady_tol,
                        const StepObserver& observer) {
  if (!(dt > 0.0) || !(t_end >= 0.0))
    fail(errc::validation_error, "dt must be positive and t_end non-negative");
  DistributionField scratch = f;  // same shape; contents overwritten per step

  RunResult rr;
  while (rr.t < t_end - 1e-12 * dt) {
    const double step_dt = std::min(dt, t_end - rr.t);
    rr.last = imex_step(mesh, f, bws, cfg, step_dt, scratch);
    rr.t += step_dt;
    ++rr.steps;
    if (observer) observer(rr.steps, rr.t, rr.last);
    if (steady_tol > 0.0 && rr.last.df_l1 / step_dt <= steady_tol) {
      rr.steady = true;
      break;
    }
  }
  return rr;
}

}  // namespace kinetic
