#include "formation/sim.hpp"

#include <cmath>
#include <utility>

#include "formation/analysis.hpp"
#include "formation/csv.hpp"

namespace formation {

namespace {

struct StageData {
  std::vector<Vec2> velocities;
  std::vector<Vec2> inputs;
  FormationEvaluation formation;
  SystemState derivative;
};

StageData evaluate_stage(const CompiledScenario& c, const SystemState& state) {
  const std::size_t n = state.agents.size();
  StageData stage;
  stage.velocities.resize(n);
  std::vector<Vec2> positions(n);
  for (std::size_t k = 0; k < n; ++k) {
    positions[k] = state.agents[k].q;
    stage.velocities[k] = (1.0 / c.params[k].mass) * state.agents[k].p;
  }

  stage.formation =
      evaluate_formation(c.graph, positions, stage.velocities, state.estimates, c.gains);

  stage.inputs = stage.formation.forces;
  if (c.maneuvers.scale_orientation.enabled) {
    const auto& cfg = c.maneuvers.scale_orientation;
    const auto [on_a, on_b] = scale_orientation_force(
        positions[cfg.agent_a], positions[cfg.agent_b], stage.velocities[cfg.agent_a],
        stage.velocities[cfg.agent_b], cfg);
    stage.inputs[static_cast<std::size_t>(cfg.agent_a)] += on_a;
    stage.inputs[static_cast<std::size_t>(cfg.agent_b)] += on_b;
  }
  if (c.maneuvers.velocity_tracking.enabled) {
    for (std::size_t k = 0; k < n; ++k) {
      stage.inputs[k] +=
          velocity_tracking_force(stage.velocities[k], c.params[k], c.maneuvers.velocity_tracking);
    }
  }

  stage.derivative.agents.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto d = agent_derivative(state.agents[k], c.params[k], stage.inputs[k]);
    stage.derivative.agents[k] = {d.dq, d.dp};
  }

  stage.derivative.estimates.resize(state.estimates.size());
  for (std::size_t l = 0; l < c.graph.triangles.size(); ++l) {
    const Triangle& tri = c.graph.triangles[l];
    const TriangleGeometry& geom = stage.formation.geometry[l];
    const Vec2 v1 = stage.velocities[static_cast<std::size_t>(tri.vertices[0])];
    const Vec2 v2 = stage.velocities[static_cast<std::size_t>(tri.vertices[1])];
    const Vec2 v3 = stage.velocities[static_cast<std::size_t>(tri.vertices[2])];
    for (int slot = 0; slot < kEstimatorsPerTriangle; ++slot) {
      const std::size_t idx = static_cast<std::size_t>(estimator_index(static_cast<int>(l), slot));
      const EstimatorSlot& spec = kEstimatorSlots[static_cast<std::size_t>(slot)];
      const double gamma = stage.formation.efforts[l][spec.agent_role][static_cast<int>(spec.angle)];
      stage.derivative.estimates[idx] = estimator_derivative(
          slot, state.estimates[idx], c.estimator_gains[idx], geom, v1, v2, v3, gamma);
    }
  }
  return stage;
}

LogRow make_row(const CompiledScenario& c, const SystemState& state, double t) {
  StageData stage = evaluate_stage(c, state);
  LogRow row;
  row.t = t;
  row.q.resize(state.agents.size());
  row.p.resize(state.agents.size());
  for (std::size_t k = 0; k < state.agents.size(); ++k) {
    row.q[k] = state.agents[k].q;
    row.p[k] = state.agents[k].p;
  }
  row.u = std::move(stage.inputs);
  row.triangles = std::move(stage.formation.errors);
  row.rhat = state.estimates;
  row.rtrue.resize(state.estimates.size());
  for (std::size_t l = 0; l < c.graph.triangles.size(); ++l) {
    const TriangleGeometry& geom = stage.formation.geometry[l];
    const double by_edge[3] = {geom.r_i, geom.r_j, geom.r_k};
    for (int slot = 0; slot < kEstimatorsPerTriangle; ++slot) {
      const std::size_t idx = static_cast<std::size_t>(estimator_index(static_cast<int>(l), slot));
      row.rtrue[idx] = by_edge[static_cast<int>(kEstimatorSlots[static_cast<std::size_t>(slot)].edge)];
    }
  }
  row.energy = total_hamiltonian(c.graph, state.agents, c.params, state.estimates, c.gains,
                                 c.estimator_gains);
  return row;
}

}  // namespace

SystemState closed_loop_derivative(const CompiledScenario& c, const SystemState& state) {
  return evaluate_stage(c, state).derivative;
}

std::vector<std::string> log_columns(const CompiledScenario& c) {
  std::vector<std::string> cols;
  cols.emplace_back("time");
  for (const int id : c.graph.node_ids) {
    const std::string a = std::to_string(id);
    for (const char* part : {"q", "p", "U"}) {
      cols.push_back(part + a + "x");
      cols.push_back(part + a + "y");
    }
  }
  for (int l = 1; l <= c.graph.triangle_count(); ++l) {
    const std::string t = "tri" + std::to_string(l);
    cols.push_back(t + "_cos_theta_err");
    cols.push_back(t + "_cos_phi_err");
    cols.push_back(t + "_cos_theta_rate");
    cols.push_back(t + "_cos_phi_rate");
  }
  for (int l = 1; l <= c.graph.triangle_count(); ++l) {
    for (int slot = 0; slot < kEstimatorsPerTriangle; ++slot) {
      const std::string base = "est" + std::to_string(l) + "_" + estimator_slot_name(slot);
      cols.push_back(base + "_rhat");
      cols.push_back(base + "_r");
      cols.push_back(base + "_rbar");
    }
  }
  cols.emplace_back("e_kinetic");
  cols.emplace_back("e_angle");
  cols.emplace_back("e_estimator");
  cols.emplace_back("hamiltonian");
  return cols;
}

std::vector<double> flatten_row(const LogRow& row) {
  std::vector<double> v;
  v.reserve(1 + 6 * row.q.size() + 4 * row.triangles.size() + 3 * row.rhat.size() + 4);
  v.push_back(row.t);
  for (std::size_t k = 0; k < row.q.size(); ++k) {
    v.push_back(row.q[k].x);
    v.push_back(row.q[k].y);
    v.push_back(row.p[k].x);
    v.push_back(row.p[k].y);
    v.push_back(row.u[k].x);
    v.push_back(row.u[k].y);
  }
  for (const TriangleErrorState& tri : row.triangles) {
    v.push_back(tri.e_theta);
    v.push_back(tri.e_phi);
    v.push_back(tri.rate_theta);
    v.push_back(tri.rate_phi);
  }
  for (std::size_t k = 0; k < row.rhat.size(); ++k) {
    v.push_back(row.rhat[k]);
    v.push_back(row.rtrue[k]);
    v.push_back(row.rhat[k] - row.rtrue[k]);
  }
  v.push_back(row.energy.kinetic);
  v.push_back(row.energy.angle_potential);
  v.push_back(row.energy.estimator_potential);
  v.push_back(row.energy.total());
  return v;
}

TrajectoryLog run(const CompiledScenario& c) {
  TrajectoryLog log;
  log.columns = log_columns(c);

  const double dt = c.integration.dt;
  const long long steps = std::llround(c.integration.duration / dt);
  const long long stride = c.integration.log_stride;

  SystemState state = c.initial;
  const auto derivative = [&c](const SystemState& s) { return closed_loop_derivative(c, s); };

  for (long long k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (k % stride == 0 || k == steps) {
      try {
        log.rows.push_back(make_row(c, state, t));
      } catch (SimError& e) {
        e.set_time(t);
        throw;
      }
    }
    if (k == steps) break;
    try {
      state = rk4_step(derivative, state, dt);
    } catch (SimError& e) {
      e.set_time(t);
      throw;
    }
  }
  return log;
}

TrajectoryLog run(const Scenario& s) { return run(compile_scenario(s)); }

void write_trajectory_csv(const TrajectoryLog& log, const std::filesystem::path& path) {
  CsvWriter csv(path);
  csv.header(log.columns);
  for (const LogRow& row : log.rows) {
    csv.row(flatten_row(row));
  }
}

}  // namespace formation
