#include "formation/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace formation {

namespace {

double relative_residual(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double edge_length(const TriangleGeometry& geom, EdgeRole e) {
  switch (e) {
    case EdgeRole::i:
      return geom.r_i;
    case EdgeRole::j:
      return geom.r_j;
    case EdgeRole::k:
      return geom.r_k;
  }
  return 0.0;
}

}  // namespace

EnergyBreakdown total_hamiltonian(const FormationGraph& g, std::span<const AgentState> agents,
                                  std::span<const AgentParams> params,
                                  std::span<const double> estimates, const GainTable& gains,
                                  std::span<const double> estimator_gains) {
  EnergyBreakdown e;
  for (std::size_t n = 0; n < agents.size(); ++n) {
    e.kinetic += norm_squared(agents[n].p) / (2.0 * params[n].mass);
  }
  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const Triangle& tri = g.triangles[l];
    const auto geom = TriangleGeometry::from_positions(
        agents[tri.vertices[0]].q, agents[tri.vertices[1]].q, agents[tri.vertices[2]].q);
    const double e_theta = geom.cos_theta - std::cos(tri.theta_star);
    const double e_phi = geom.cos_phi - std::cos(tri.phi_star);
    double c_theta = 0.0, c_phi = 0.0;
    for (int role = 0; role < 3; ++role) {
      c_theta += gains.at(static_cast<int>(l), role, AngleKind::theta).spring;
      c_phi += gains.at(static_cast<int>(l), role, AngleKind::phi).spring;
    }
    e.angle_potential += 0.5 * (c_theta * e_theta * e_theta + c_phi * e_phi * e_phi);

    for (int slot = 0; slot < kEstimatorsPerTriangle; ++slot) {
      const std::size_t idx = static_cast<std::size_t>(estimator_index(static_cast<int>(l), slot));
      const double rbar =
          estimates[idx] - edge_length(geom, kEstimatorSlots[static_cast<std::size_t>(slot)].edge);
      e.estimator_potential += 0.5 * estimator_gains[idx] * rbar * rbar;
    }
  }
  return e;
}

double analytic_hamiltonian_rate(const FormationGraph& g, std::span<const Vec2> positions,
                                 std::span<const Vec2> velocities,
                                 std::span<const AgentParams> params, const GainTable& gains) {
  double rate = 0.0;
  for (std::size_t n = 0; n < positions.size(); ++n) {
    rate -= dot(velocities[n], params[n].friction.apply(velocities[n]));
  }
  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const Triangle& tri = g.triangles[l];
    const auto geom = TriangleGeometry::from_positions(
        positions[tri.vertices[0]], positions[tri.vertices[1]], positions[tri.vertices[2]]);
    const auto err = angle_errors_and_rates(tri, geom, velocities[tri.vertices[0]],
                                            velocities[tri.vertices[1]],
                                            velocities[tri.vertices[2]]);
    double d_theta = 0.0, d_phi = 0.0;
    for (int role = 0; role < 3; ++role) {
      d_theta += gains.at(static_cast<int>(l), role, AngleKind::theta).damper;
      d_phi += gains.at(static_cast<int>(l), role, AngleKind::phi).damper;
    }
    rate -= d_theta * err.rate_theta * err.rate_theta + d_phi * err.rate_phi * err.rate_phi;
  }
  return rate;
}

double power_balance_residual(const FormationGraph& g, std::span<const Vec2> positions,
                              std::span<const Vec2> velocities,
                              std::span<const double> estimates, const GainTable& gains,
                              std::span<const double> estimator_gains) {
  double worst = 0.0;
  for (std::size_t l = 0; l < g.triangles.size(); ++l) {
    const Triangle& tri = g.triangles[l];
    const auto geom = TriangleGeometry::from_positions(
        positions[tri.vertices[0]], positions[tri.vertices[1]], positions[tri.vertices[2]]);
    const Vec2 v[3] = {velocities[tri.vertices[0]], velocities[tri.vertices[1]],
                       velocities[tri.vertices[2]]};
    const auto err = angle_errors_and_rates(tri, geom, v[0], v[1], v[2]);
    const auto est = estimates_for_triangle(estimates, static_cast<int>(l));
    const auto rows = estimated_angle_jacobians(geom, est);

    double gamma[3][2];
    for (int role = 0; role < 3; ++role) {
      const AngleGains& gt = gains.at(static_cast<int>(l), role, AngleKind::theta);
      const AngleGains& gp = gains.at(static_cast<int>(l), role, AngleKind::phi);
      gamma[role][0] = coupling_effort(err.e_theta, err.rate_theta, gt.spring, gt.damper);
      gamma[role][1] = coupling_effort(err.e_phi, err.rate_phi, gp.spring, gp.damper);
    }

    // Transported power per (agent, angle): <Lhat^T gamma | qdot> must equal
    // the sum of the estimated-effort port powers sum_slots alpha * f.
    double estimated_power[3][2] = {};
    const auto est_values = est.as_array();
    for (int slot = 0; slot < kEstimatorsPerTriangle; ++slot) {
      const EstimatorSlot& spec = kEstimatorSlots[static_cast<std::size_t>(slot)];
      const double rhat = est_values[static_cast<std::size_t>(slot)];
      const double r_true = edge_length(geom, spec.edge);
      const double gam = gamma[spec.agent_role][static_cast<int>(spec.angle)];
      const double alpha = r_true / rhat * gam;
      const double flow = flow_factor(slot, geom, v[0], v[1], v[2]);
      estimated_power[spec.agent_role][static_cast<int>(spec.angle)] += alpha * flow;

      // Discrepancy port == its distance-space counterpart c rbar d(rbar)/dt.
      const double rbar = rhat - r_true;
      const double beta = -(rbar / rhat) * gam;
      const std::size_t idx = static_cast<std::size_t>(estimator_index(static_cast<int>(l), slot));
      const double gain = estimator_gains[idx];
      const double drbar =
          estimator_derivative(slot, rhat, gain, geom, v[0], v[1], v[2], gam) -
          edge_stretch_rate(spec.edge, geom, v[0], v[1], v[2]);
      worst = std::max(worst, relative_residual(beta * flow, gain * rbar * drbar));
    }
    for (int role = 0; role < 3; ++role) {
      const double transported_theta = gamma[role][0] * rows.theta[role].apply(v[role]);
      const double transported_phi = gamma[role][1] * rows.phi[role].apply(v[role]);
      worst = std::max(worst, relative_residual(transported_theta, estimated_power[role][0]));
      worst = std::max(worst, relative_residual(transported_phi, estimated_power[role][1]));
    }
  }
  return worst;
}

EnergyReport energy_report(const TrajectoryLog& log, const CompiledScenario& c) {
  EnergyReport report;
  const std::size_t n = log.rows.size();
  report.time.reserve(n);
  report.energy.reserve(n);
  report.numerical_rate.assign(n, std::numeric_limits<double>::quiet_NaN());
  report.analytic_rate.reserve(n);
  report.max_analytic_rate = -std::numeric_limits<double>::infinity();

  std::vector<Vec2> positions(static_cast<std::size_t>(c.graph.node_count()));
  std::vector<Vec2> velocities(positions.size());
  for (const LogRow& row : log.rows) {
    report.time.push_back(row.t);
    report.energy.push_back(row.energy);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      positions[k] = row.q[k];
      velocities[k] = (1.0 / c.params[k].mass) * row.p[k];
    }
    const double rate =
        analytic_hamiltonian_rate(c.graph, positions, velocities, c.params, c.gains);
    report.analytic_rate.push_back(rate);
    report.max_analytic_rate = std::max(report.max_analytic_rate, rate);
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h0 = report.energy[k].total();
    const double h1 = report.energy[k + 1].total();
    report.max_scaled_increase = std::max(report.max_scaled_increase, (h1 - h0) / (1.0 + h0));
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double dt = report.time[k + 1] - report.time[k - 1];
    const double num = (report.energy[k + 1].total() - report.energy[k - 1].total()) / dt;
    report.numerical_rate[k] = num;
    const double residual =
        std::abs(num - report.analytic_rate[k]) / (1.0 + std::abs(report.analytic_rate[k]));
    report.max_rate_residual = std::max(report.max_rate_residual, residual);
  }
  return report;
}

RankAudit rank_audit(const TrajectoryLog& log, const CompiledScenario& c) {
  RankAudit audit;
  const int triangles = c.graph.triangle_count();
  audit.min_sigma.assign(static_cast<std::size_t>(triangles),
                         std::numeric_limits<double>::infinity());
  audit.argmin_time.assign(static_cast<std::size_t>(triangles), 0.0);
  audit.sigma_rows.reserve(log.rows.size());

  for (const LogRow& row : log.rows) {
    std::vector<double> sigmas(static_cast<std::size_t>(triangles));
    for (int l = 0; l < triangles; ++l) {
      const Triangle& tri = c.graph.triangles[static_cast<std::size_t>(l)];
      const auto geom = TriangleGeometry::from_positions(
          row.q[tri.vertices[0]], row.q[tri.vertices[1]], row.q[tri.vertices[2]]);
      const auto rows = estimated_angle_jacobians(geom, estimates_for_triangle(row.rhat, l));
      const double sigma = triangle_rank_audit(rows);
      sigmas[static_cast<std::size_t>(l)] = sigma;
      if (sigma < audit.min_sigma[static_cast<std::size_t>(l)]) {
        audit.min_sigma[static_cast<std::size_t>(l)] = sigma;
        audit.argmin_time[static_cast<std::size_t>(l)] = row.t;
      }
    }
    audit.sigma_rows.push_back(std::move(sigmas));
  }
  audit.overall_min = audit.min_sigma.empty()
                          ? 0.0
                          : *std::min_element(audit.min_sigma.begin(), audit.min_sigma.end());
  return audit;
}

ConvergenceReport convergence_report(const TrajectoryLog& log, const CompiledScenario& c) {
  ConvergenceReport report;
  const std::size_t angles = 2 * static_cast<std::size_t>(c.graph.triangle_count());
  report.initial_abs_error.assign(angles, 0.0);
  report.terminal_abs_error.assign(angles, 0.0);
  report.sup_abs_error.assign(angles, 0.0);
  report.min_estimate = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < log.rows.size(); ++k) {
    const LogRow& row = log.rows[k];
    for (std::size_t l = 0; l < row.triangles.size(); ++l) {
      const double abs_theta = std::abs(row.triangles[l].e_theta);
      const double abs_phi = std::abs(row.triangles[l].e_phi);
      if (k == 0) {
        report.initial_abs_error[2 * l] = abs_theta;
        report.initial_abs_error[2 * l + 1] = abs_phi;
      }
      report.sup_abs_error[2 * l] = std::max(report.sup_abs_error[2 * l], abs_theta);
      report.sup_abs_error[2 * l + 1] = std::max(report.sup_abs_error[2 * l + 1], abs_phi);
      if (k + 1 == log.rows.size()) {
        report.terminal_abs_error[2 * l] = abs_theta;
        report.terminal_abs_error[2 * l + 1] = abs_phi;
      }
    }
    for (const double rhat : row.rhat) {
      report.min_estimate = std::min(report.min_estimate, rhat);
    }
  }

  if (!log.rows.empty()) {
    const LogRow& last = log.rows.back();
    if (c.maneuvers.scale_orientation.enabled) {
      const auto& cfg = c.maneuvers.scale_orientation;
      const Vec2 z = last.q[static_cast<std::size_t>(cfg.agent_a)] -
                     last.q[static_cast<std::size_t>(cfg.agent_b)];
      report.terminal_displacement_error = norm(z - cfg.displacement_target);
    }
    if (c.maneuvers.velocity_tracking.enabled) {
      for (std::size_t n = 0; n < last.p.size(); ++n) {
        const Vec2 v = (1.0 / c.params[n].mass) * last.p[n];
        report.terminal_velocity_error.push_back(
            norm(v - c.maneuvers.velocity_tracking.velocity_target));
      }
    }
  }
  return report;
}

}  // namespace formation
