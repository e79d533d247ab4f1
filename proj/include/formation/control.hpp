#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "formation/dynamics.hpp"
#include "formation/estimator.hpp"
#include "formation/geometry.hpp"
#include "formation/graph.hpp"

namespace formation {

// Virtual coupling gains for one (triangle, agent role, angle): spring
// stiffness on the cosine error and damping on its rate.
struct AngleGains {
  double spring{10.0};
  double damper{1.0};
};

// Gains for every (triangle, agent role, angle).
struct GainTable {
  std::vector<std::array<std::array<AngleGains, 2>, 3>> entries;  // [tri][role][angle]

  static GainTable uniform(int triangles, AngleGains g);

  [[nodiscard]] const AngleGains& at(int tri, int role, AngleKind angle) const {
    return entries[tri][role][static_cast<int>(angle)];
  }
  AngleGains& at(int tri, int role, AngleKind angle) {
    return entries[tri][role][static_cast<int>(angle)];
  }
};

// Spring-damper output in constraint space: c * err + d * err_rate.
constexpr double coupling_effort(double err, double err_rate, double spring, double damper) {
  return spring * err + damper * err_rate;
}

// Cosine errors of one triangle and their time derivatives. Rates come from
// the true Jacobian rows contracted with the vertex velocities (bearing-rate
// sensing; no numerical differentiation).
struct TriangleErrorState {
  double e_theta;
  double e_phi;
  double rate_theta;
  double rate_phi;
};

TriangleErrorState angle_errors_and_rates(const Triangle& tri, const TriangleGeometry& geom,
                                          Vec2 v1, Vec2 v2, Vec2 v3);

// Everything the formation controller computes in one pass; the per-role
// efforts are reused by the estimator dynamics.
struct FormationEvaluation {
  std::vector<Vec2> forces;                       // per agent
  std::vector<TriangleGeometry> geometry;         // per triangle
  std::vector<TriangleErrorState> errors;         // per triangle
  std::vector<std::array<std::array<double, 2>, 3>> efforts;  // [tri][role][angle]
};

FormationEvaluation evaluate_formation(const FormationGraph& g, std::span<const Vec2> positions,
                                       std::span<const Vec2> velocities,
                                       std::span<const double> estimates,
                                       const GainTable& gains);

// Sum over the agent's triangles of -(Lhat_theta^T gamma_theta +
// Lhat_phi^T gamma_phi). Convenience wrapper over evaluate_formation.
Vec2 formation_force(int agent_index, const FormationGraph& g, std::span<const Vec2> positions,
                     std::span<const Vec2> velocities, std::span<const double> estimates,
                     const GainTable& gains);

// Leader law servoing the displacement z = q_a - q_b of the designated pair
// to `displacement_target`, setting formation scale and orientation.
struct ScaleOrientationConfig {
  bool enabled{false};
  int agent_a{0};  // internal index
  int agent_b{1};
  Vec2 displacement_target{};
  Mat2 damping{Mat2::diagonal(0.8, 0.8)};
};

// Common-velocity law; all agents know the target.
struct VelocityTrackingConfig {
  bool enabled{false};
  Vec2 velocity_target{};
  Mat2 damping{Mat2::diagonal(1.8, 1.8)};
};

struct ManeuverConfig {
  ScaleOrientationConfig scale_orientation;
  VelocityTrackingConfig velocity_tracking;
};

// Equal and opposite forces on the leader pair: with z = q_a - q_b,
//   U_a = -(z - z*) - D_z zdot,  U_b = +(z - z*) + D_z zdot,
// so the edge energy (1/2)|z - z*|^2 decays along the closed loop.
std::pair<Vec2, Vec2> scale_orientation_force(Vec2 q_a, Vec2 q_b, Vec2 v_a, Vec2 v_b,
                                              const ScaleOrientationConfig& cfg);

// U = D_r v* - D_v (v - v*), making v = v* the closed-loop equilibrium of the
// damped double integrator.
Vec2 velocity_tracking_force(Vec2 velocity, const AgentParams& params,
                             const VelocityTrackingConfig& cfg);

// Superposition of the formation force and all enabled maneuver terms.
std::vector<Vec2> total_inputs(const FormationGraph& g, std::span<const Vec2> positions,
                               std::span<const Vec2> velocities, std::span<const double> estimates,
                               const GainTable& gains, std::span<const AgentParams> params,
                               const ManeuverConfig& maneuvers);

Vec2 total_input(int agent_index, const FormationGraph& g, std::span<const Vec2> positions,
                 std::span<const Vec2> velocities, std::span<const double> estimates,
                 const GainTable& gains, std::span<const AgentParams> params,
                 const ManeuverConfig& maneuvers);

}  // namespace formation
