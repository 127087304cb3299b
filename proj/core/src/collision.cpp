#include "kinetic/collision.hpp"

#include <cmath>
#include <vector>

#include "kinetic/errors.hpp"

namespace kinetic {

double relaxation_time(const RelaxationModel& model, double rho, double T) {
  if (model.omega == 1.0) return model.c_tau * rho;
  return model.c_tau * rho * std::pow(T, 1.0 - model.omega);
}

double collision_operator(const VelocityGrid& grid, const double* f, const MacroState& ms,
                          const RelaxationModel& model, double eps, double* out) {
  if (!(eps > 0.0)) fail(errc::validation_error, "Knudsen number must be positive");
  const double tau = relaxation_time(model, ms.rho, ms.T);
  std::vector<double> g(static_cast<std::size_t>(grid.total));
  gaussian_esbgk(grid, ms.rho, ms.u, corrected_tensor(ms, model.nu), g.data());
  const double rate = tau / eps;
  for (int j = 0; j < grid.total; ++j) out[j] = rate * (g[j] - f[j]);
  return tau;
}

}  // namespace kinetic
