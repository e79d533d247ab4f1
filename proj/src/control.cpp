#include "formation/control.hpp"

#include <cmath>

namespace formation {

GainTable GainTable::uniform(int triangles, AngleGains g) {
  GainTable t;
  t.entries.assign(static_cast<std::size_t>(triangles), {{{g, g}, {g, g}, {g, g}}});
  return t;
}

TriangleErrorState angle_errors_and_rates(const Triangle& tri, const TriangleGeometry& geom,
                                          Vec2 v1, Vec2 v2, Vec2 v3) {
  const AngleJacobians rows = true_angle_jacobians(geom);
  TriangleErrorState e;
  e.e_theta = geom.cos_theta - std::cos(tri.theta_star);
  e.e_phi = geom.cos_phi - std::cos(tri.phi_star);
  e.rate_theta = rows.theta[0].apply(v1) + rows.theta[1].apply(v2) + rows.theta[2].apply(v3);
  e.rate_phi = rows.phi[0].apply(v1) + rows.phi[1].apply(v2) + rows.phi[2].apply(v3);
  return e;
}

FormationEvaluation evaluate_formation(const FormationGraph& g, std::span<const Vec2> positions,
                                       std::span<const Vec2> velocities,
                                       std::span<const double> estimates,
                                       const GainTable& gains) {
  FormationEvaluation ev;
  ev.forces.assign(positions.size(), Vec2{});
  ev.geometry.reserve(g.triangles.size());
  ev.errors.reserve(g.triangles.size());
  ev.efforts.resize(g.triangles.size());

  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const Triangle& tri = g.triangles[l];
    const auto geom = TriangleGeometry::from_positions(
        positions[tri.vertices[0]], positions[tri.vertices[1]], positions[tri.vertices[2]]);
    const auto err = angle_errors_and_rates(tri, geom, velocities[tri.vertices[0]],
                                            velocities[tri.vertices[1]],
                                            velocities[tri.vertices[2]]);
    const auto rows = estimated_angle_jacobians(geom, estimates_for_triangle(estimates,
                                                                             static_cast<int>(l)));
    for (int role = 0; role < 3; ++role) {
      const AngleGains& gt = gains.at(static_cast<int>(l), role, AngleKind::theta);
      const AngleGains& gp = gains.at(static_cast<int>(l), role, AngleKind::phi);
      const double gamma_theta = coupling_effort(err.e_theta, err.rate_theta, gt.spring, gt.damper);
      const double gamma_phi = coupling_effort(err.e_phi, err.rate_phi, gp.spring, gp.damper);
      ev.efforts[l][role] = {gamma_theta, gamma_phi};
      Vec2& force = ev.forces[static_cast<std::size_t>(tri.vertices[role])];
      force -= gamma_theta * rows.theta[role].transposed() +
               gamma_phi * rows.phi[role].transposed();
    }
    ev.geometry.push_back(geom);
    ev.errors.push_back(err);
  }
  return ev;
}

Vec2 formation_force(int agent_index, const FormationGraph& g, std::span<const Vec2> positions,
                     std::span<const Vec2> velocities, std::span<const double> estimates,
                     const GainTable& gains) {
  return evaluate_formation(g, positions, velocities, estimates, gains)
      .forces[static_cast<std::size_t>(agent_index)];
}

std::pair<Vec2, Vec2> scale_orientation_force(Vec2 q_a, Vec2 q_b, Vec2 v_a, Vec2 v_b,
                                              const ScaleOrientationConfig& cfg) {
  const Vec2 spring = (q_a - q_b) - cfg.displacement_target;
  const Vec2 damper = cfg.damping.apply(v_a - v_b);
  const Vec2 on_a = -(spring + damper);
  return {on_a, -on_a};
}

Vec2 velocity_tracking_force(Vec2 velocity, const AgentParams& params,
                             const VelocityTrackingConfig& cfg) {
  return params.friction.apply(cfg.velocity_target) -
         cfg.damping.apply(velocity - cfg.velocity_target);
}

std::vector<Vec2> total_inputs(const FormationGraph& g, std::span<const Vec2> positions,
                               std::span<const Vec2> velocities, std::span<const double> estimates,
                               const GainTable& gains, std::span<const AgentParams> params,
                               const ManeuverConfig& maneuvers) {
  std::vector<Vec2> inputs = evaluate_formation(g, positions, velocities, estimates, gains).forces;
  if (maneuvers.scale_orientation.enabled) {
    const auto& cfg = maneuvers.scale_orientation;
    const auto [on_a, on_b] = scale_orientation_force(
        positions[cfg.agent_a], positions[cfg.agent_b], velocities[cfg.agent_a],
        velocities[cfg.agent_b], cfg);
    inputs[static_cast<std::size_t>(cfg.agent_a)] += on_a;
    inputs[static_cast<std::size_t>(cfg.agent_b)] += on_b;
  }
  if (maneuvers.velocity_tracking.enabled) {
    for (std::size_t n = 0; n < inputs.size(); ++n) {
      inputs[n] += velocity_tracking_force(velocities[n], params[n],
                                           maneuvers.velocity_tracking);
    }
  }
  return inputs;
}

Vec2 total_input(int agent_index, const FormationGraph& g, std::span<const Vec2> positions,
                 std::span<const Vec2> velocities, std::span<const double> estimates,
                 const GainTable& gains, std::span<const AgentParams> params,
                 const ManeuverConfig& maneuvers) {
  return total_inputs(g, positions, velocities, estimates, gains, params,
                      maneuvers)[static_cast<std::size_t>(agent_index)];
}

}  // namespace formation
