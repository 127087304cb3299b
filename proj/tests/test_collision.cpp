#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "kinetic/collision.hpp"
#include "kinetic/moments.hpp"

using namespace kinetic;

TEST_SUITE("collision") {
  TEST_CASE("relaxation time law") {
    RelaxationModel m;  // c_tau = 1, omega = 1
    CHECK(relaxation_time(m, 2.0, 0.5) == 2.0);      // tau = rho when omega = 1
    CHECK(relaxation_time(m, 1.0, 1.0) == m.c_tau);  // unit state gives the prefactor

    m.omega = 0.5;  // tau = c_tau rho sqrt(T)
    CHECK(std::abs(relaxation_time(m, 1.0, 4.0) - 2.0) <= 1e-15);

    m = RelaxationModel{};
    m.c_tau = 3.5;
    CHECK(relaxation_time(m, 1.0, 1.0) == 3.5);
  }

  TEST_CASE("equilibrium is a fixed point") {
    const VelocityGrid g = VelocityGrid::make({8, 8, 8}, {8.0, 8.0, 8.0});
    std::vector<double> f(static_cast<std::size_t>(g.total)), q(f.size());
    maxwellian(g, 1.0, Vec3{0.1, 0.0, 0.0}, 1.0, f.data());
    const MacroState ms = compute_moments(g, f.data());
    RelaxationModel m;
    m.nu = -0.3;
    const double tau = collision_operator(g, f.data(), ms, m, 1.0, q.data());
    CHECK(tau > 0.0);
    double mx = 0.0, qx = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      mx = std::max(mx, std::abs(f[j]));
      qx = std::max(qx, std::abs(q[j]));
    }
    // G[f] differs from f only through the quadrature error of the moments.
    CHECK(qx <= 1e-4 * mx * tau);
  }

  TEST_CASE("conservation of mass, momentum and energy") {
    const VelocityGrid g = VelocityGrid::make({16, 16, 16}, {8.0, 8.0, 8.0});
    std::vector<double> f(static_cast<std::size_t>(g.total)), q(f.size());
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(-0.05, 0.05);

    for (int rep = 0; rep < 5; ++rep) {
      maxwellian(g, 1.0, Vec3{0.1 * rep, -0.05 * rep, 0.0}, 1.0 + 0.1 * rep, f.data());
      for (double& v : f) v *= 1.0 + uni(rng);  // near-Maxwellian perturbation
      const MacroState ms = compute_moments(g, f.data());
      const double eps = 0.5;
      RelaxationModel m;
      m.nu = -0.4;
      const double tau = collision_operator(g, f.data(), ms, m, eps, q.data());
      // Moments of Q via the raw sums; macro_from_raw would reject ~zero density.
      const RawMoments raw = raw_moments(g, q.data());
      const double scale = ms.rho * tau / eps;
      CHECK(std::abs(raw.m0 * g.weight) <= 1e-5 * scale);
      CHECK(std::abs(raw.m1.x * g.weight) <= 1e-5 * scale);
      CHECK(std::abs(raw.m1.y * g.weight) <= 1e-5 * scale);
      CHECK(std::abs(raw.m1.z * g.weight) <= 1e-5 * scale);
      CHECK(std::abs(raw.m2.trace() * g.weight) <= 1e-5 * scale);
    }
  }

  TEST_CASE("nu = 0 reduces to plain BGK") {
    const VelocityGrid g = VelocityGrid::make({6, 6, 6}, {8.0, 8.0, 8.0});
    std::vector<double> f(static_cast<std::size_t>(g.total)), q(f.size()), m0(f.size());
    maxwellian(g, 1.0, Vec3{}, 1.2, f.data());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] *= 1.0 + 0.05 * std::sin(double(j));
    const MacroState ms = compute_moments(g, f.data());

    RelaxationModel m;  // nu = 0
    const double eps = 1.0;
    const double tau = collision_operator(g, f.data(), ms, m, eps, q.data());
    maxwellian(g, ms.rho, ms.u, ms.T, m0.data());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double bgk = (tau / eps) * (m0[j] - f[j]);
      CHECK(std::abs(q[j] - bgk) <= 1e-12 * (std::abs(bgk) + tau));
    }
  }

  TEST_CASE("sign structure and exact 1/eps linearity") {
    const VelocityGrid g = VelocityGrid::make({5, 5, 5}, {6.0, 6.0, 6.0});
    std::vector<double> f(static_cast<std::size_t>(g.total)), q1(f.size()), q2(f.size()),
        gs(f.size());
    maxwellian(g, 1.0, Vec3{}, 1.0, f.data());
    for (std::size_t j = 0; j < f.size(); ++j) f[j] *= 1.0 + 0.2 * ((j % 3) - 1.0);
    const MacroState ms = compute_moments(g, f.data());
    RelaxationModel m;
    m.nu = -0.25;

    collision_operator(g, f.data(), ms, m, 1.0, q1.data());
    collision_operator(g, f.data(), ms, m, 0.5, q2.data());
    gaussian_esbgk(g, ms.rho, ms.u, corrected_tensor(ms, m.nu), gs.data());
    for (std::size_t j = 0; j < f.size(); ++j) {
      // Q has the sign of G - f at every node, and halving eps doubles Q.
      if (gs[j] > f[j]) CHECK(q1[j] >= 0.0);
      if (gs[j] < f[j]) CHECK(q1[j] <= 0.0);
      CHECK(q2[j] == 2.0 * q1[j]);
    }
  }
}
