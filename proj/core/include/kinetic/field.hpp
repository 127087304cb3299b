#pragma once

#include <vector>

#include "kinetic/phase_mesh.hpp"

namespace kinetic {

// One contiguous velocity row per active spatial slot.
struct DistributionField {
  int nvel = 0;
  std::vector<double> data;

  static DistributionField zeros(const PhaseMesh& mesh) {
    DistributionField f;
    f.nvel = mesh.vel.total;
    f.data.assign(static_cast<std::size_t>(mesh.active_count()) * f.nvel, 0.0);
    return f;
  }

  double* row(int slot) { return data.data() + static_cast<std::size_t>(slot) * nvel; }
  const double* row(int slot) const { return data.data() + static_cast<std::size_t>(slot) * nvel; }
};

}  // namespace kinetic
