#pragma once

#include <optional>
#include <span>
#include <vector>

#include "formation/analysis_types.hpp"
#include "formation/control.hpp"
#include "formation/scenario.hpp"
#include "formation/sim.hpp"

namespace formation {

// Audit tolerances, pinned once.
inline constexpr double kEnergyDescentTolerance = 1e-6;   // scaled by (1 + H)
inline constexpr double kEnergyRateTolerance = 1e-4;      // scaled by (1 + |rate|)
inline constexpr double kPowerBalanceTolerance = 1e-10;   // relative
inline constexpr double kRankThreshold = 1e-3;            // min sigma along a run
inline constexpr double kRankDegenerate = 1e-6;           // definite rank loss
inline constexpr double kGradientTolerance = 1e-6;        // FD relative error
inline constexpr double kRowSumTolerance = 1e-12;

// Total Hamiltonian of the stabilization closed loop:
//   sum_n |p_n|^2/(2 m_n)
// + (1/2) sum_l sum_roles (c_theta e_theta^2 + c_phi e_phi^2)
// + (1/2) sum_keys c_eps (rhat - r)^2.
EnergyBreakdown total_hamiltonian(const FormationGraph& g, std::span<const AgentState> agents,
                                  std::span<const AgentParams> params,
                                  std::span<const double> estimates, const GainTable& gains,
                                  std::span<const double> estimator_gains);

// Closed-form rate of the Hamiltonian along the stabilization-only closed
// loop: -sum_n qdot_n^T D_r qdot_n - sum_l sum_roles (d_theta rate_theta^2 +
// d_phi rate_phi^2). Always <= 0.
double analytic_hamiltonian_rate(const FormationGraph& g, std::span<const Vec2> positions,
                                 std::span<const Vec2> velocities,
                                 std::span<const AgentParams> params, const GainTable& gains);

// Verifies, at one state, that the controller's port power is consistent
// across coordinate changes: for each (agent, angle) the transported power
// <Lhat^T gamma | qdot> equals the sum of its estimated-effort port powers,
// and each discrepancy port equals its distance-space counterpart
// c rbar d(rbar)/dt. Returns the worst relative residual.
double power_balance_residual(const FormationGraph& g, std::span<const Vec2> positions,
                              std::span<const Vec2> velocities,
                              std::span<const double> estimates, const GainTable& gains,
                              std::span<const double> estimator_gains);

// Per-step energy bookkeeping over a logged trajectory. The analytic column
// is meaningful for stabilization-only runs (maneuvers disabled).
struct EnergyReport {
  std::vector<double> time;
  std::vector<EnergyBreakdown> energy;
  std::vector<double> numerical_rate;  // centered differences; NaN at the ends
  std::vector<double> analytic_rate;
  double max_scaled_increase{0.0};     // max (H_{k+1} - H_k) / (1 + H_k)
  double max_rate_residual{0.0};       // max |num - analytic| / (1 + |analytic|), interior
  double max_analytic_rate{0.0};       // most positive analytic rate seen
};

EnergyReport energy_report(const TrajectoryLog& log, const CompiledScenario& c);

// Minimum over time of each triangle's smallest stacked-Jacobian singular
// value, evaluated with the logged estimates.
struct RankAudit {
  std::vector<double> min_sigma;     // per triangle
  std::vector<double> argmin_time;   // per triangle
  std::vector<std::vector<double>> sigma_rows;  // [row][triangle]
  double overall_min{0.0};
};

RankAudit rank_audit(const TrajectoryLog& log, const CompiledScenario& c);

// Convergence metrics backing the reproduction figures.
struct ConvergenceReport {
  std::vector<double> initial_abs_error;    // 2 per triangle: theta, phi
  std::vector<double> terminal_abs_error;
  std::vector<double> sup_abs_error;
  std::optional<double> terminal_displacement_error;  // |z - z*| on the leader edge
  std::vector<double> terminal_velocity_error;        // per agent |v - v*|
  double min_estimate{0.0};                           // smallest rhat over the run
};

ConvergenceReport convergence_report(const TrajectoryLog& log, const CompiledScenario& c);

}  // namespace formation
