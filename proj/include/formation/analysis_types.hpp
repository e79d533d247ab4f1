#pragma once

namespace formation {

// Decomposition of the closed-loop Hamiltonian: kinetic energy, angle-space
// spring potential, and distance-estimator potential. All terms nonnegative.
struct EnergyBreakdown {
  double kinetic{0.0};
  double angle_potential{0.0};
  double estimator_potential{0.0};

  [[nodiscard]] double total() const {
    return kinetic + angle_potential + estimator_potential;
  }
};

}  // namespace formation
