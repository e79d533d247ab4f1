#include "formation/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace formation {

namespace {

void check_symmetric_psd(const Mat2& m, const std::string& what) {
  if (std::abs(m.m01 - m.m10) > 1e-12) {
    throw ConfigError(what + " must be symmetric");
  }
  if (min_eigenvalue_symmetric(m) < -1e-12) {
    throw ConfigError(what + " must be positive semidefinite");
  }
}

int resolve_node(const FormationGraph& g, int id, const std::string& what) {
  const int idx = g.index_of(id);
  if (idx < 0) {
    throw ConfigError(what + ": unknown node id " + std::to_string(id));
  }
  return idx;
}

}  // namespace

CompiledScenario compile_scenario(const Scenario& s) {
  CompiledScenario c;
  c.label = s.label;
  c.graph = build_triangulated_laman(s.graph.seed, s.graph.attachments);
  const int n = c.graph.node_count();
  const int m = c.graph.triangle_count();
  if (n < 3) {
    throw ConfigError("graph needs at least one attachment (3 nodes)");
  }

  // Desired angles, with optional per-triangle role permutations.
  if (static_cast<int>(s.angles.size()) != m) {
    throw ConfigError("angles: expected " + std::to_string(m) + " entries, got " +
                      std::to_string(s.angles.size()));
  }
  std::set<int> seen_triangles;
  for (const AngleTarget& target : s.angles) {
    if (target.triangle < 1 || target.triangle > m) {
      throw ConfigError("angles: triangle index " + std::to_string(target.triangle) +
                        " out of range 1.." + std::to_string(m));
    }
    if (!seen_triangles.insert(target.triangle).second) {
      throw ConfigError("angles: duplicate triangle " + std::to_string(target.triangle));
    }
    Triangle& tri = c.graph.triangles[static_cast<std::size_t>(target.triangle - 1)];
    for (const double angle : {target.theta, target.phi}) {
      if (!(angle > kAngleMargin && angle < std::numbers::pi - kAngleMargin)) {
        throw ConfigError("angles: triangle " + std::to_string(target.triangle) +
                          ": desired angle " + std::to_string(angle) + " outside (" +
                          std::to_string(kAngleMargin) + ", pi - " +
                          std::to_string(kAngleMargin) + ")");
      }
    }
    tri.theta_star = target.theta;
    tri.phi_star = target.phi;
    if (target.roles) {
      std::array<int, 3> roles{};
      for (int r = 0; r < 3; ++r) {
        roles[static_cast<std::size_t>(r)] =
            resolve_node(c.graph, (*target.roles)[static_cast<std::size_t>(r)], "angles.roles");
      }
      std::array<int, 3> a = roles, b = tri.vertices;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        throw ConfigError("angles: triangle " + std::to_string(target.triangle) +
                          ": roles must permute the triangle's own vertices");
      }
      tri.vertices = roles;
      tri.edge_k = c.graph.find_edge(roles[0], roles[1]);
      tri.edge_j = c.graph.find_edge(roles[0], roles[2]);
      tri.edge_i = c.graph.find_edge(roles[1], roles[2]);
    }
  }

  // Agents must cover the node set exactly.
  if (static_cast<int>(s.agents.size()) != n) {
    throw ConfigError("agents: expected " + std::to_string(n) + " entries, got " +
                      std::to_string(s.agents.size()));
  }
  c.params.resize(static_cast<std::size_t>(n));
  c.initial.agents.resize(static_cast<std::size_t>(n));
  std::set<int> seen_agents;
  for (const AgentConfig& a : s.agents) {
    if (!seen_agents.insert(a.id).second) {
      throw ConfigError("agents: duplicate id " + std::to_string(a.id));
    }
    const int idx = resolve_node(c.graph, a.id, "agents");
    if (!(a.mass > 0.0)) {
      throw ConfigError("agents: id " + std::to_string(a.id) + ": mass must be positive");
    }
    check_symmetric_psd(a.friction, "agents: id " + std::to_string(a.id) + ": friction");
    c.params[static_cast<std::size_t>(idx)] = {a.mass, a.friction};
    c.initial.agents[static_cast<std::size_t>(idx)] = {a.position, a.mass * a.velocity};
  }

  // Gains.
  if (!(s.gains.uniform.spring > 0.0) || s.gains.uniform.damper < 0.0) {
    throw ConfigError("gains: spring must be positive and damper nonnegative");
  }
  c.gains = GainTable::uniform(m, s.gains.uniform);
  for (const GainOverride& o : s.gains.overrides) {
    if (o.triangle < 1 || o.triangle > m) {
      throw ConfigError("gains.overrides: triangle " + std::to_string(o.triangle) +
                        " out of range");
    }
    if (!(o.gains.spring > 0.0) || o.gains.damper < 0.0) {
      throw ConfigError("gains.overrides: spring must be positive and damper nonnegative");
    }
    const Triangle& tri = c.graph.triangles[static_cast<std::size_t>(o.triangle - 1)];
    const int idx = resolve_node(c.graph, o.agent, "gains.overrides");
    const auto it = std::find(tri.vertices.begin(), tri.vertices.end(), idx);
    if (it == tri.vertices.end()) {
      throw ConfigError("gains.overrides: agent " + std::to_string(o.agent) +
                        " is not a vertex of triangle " + std::to_string(o.triangle));
    }
    const int role = static_cast<int>(it - tri.vertices.begin());
    c.gains.at(o.triangle - 1, role, o.angle) = o.gains;
  }

  // Estimator bank.
  std::vector<Vec2> positions(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < positions.size(); ++k) positions[k] = c.initial.agents[k].q;
  c.initial.estimates = init_bank(c.graph, s.estimators, positions);
  c.estimator_gains.assign(c.initial.estimates.size(), s.estimators.gain);

  // Maneuvers.
  c.maneuvers.scale_orientation.enabled = s.maneuvers.scale_orientation.enabled;
  if (s.maneuvers.scale_orientation.enabled) {
    const auto& spec = s.maneuvers.scale_orientation;
    if (spec.leader.first == spec.leader.second) {
      throw ConfigError("maneuvers.scale_orientation: leader agents must be distinct");
    }
    const int a = resolve_node(c.graph, spec.leader.first, "maneuvers.scale_orientation.leader");
    const int b = resolve_node(c.graph, spec.leader.second, "maneuvers.scale_orientation.leader");
    if (c.graph.find_edge(a, b) < 0) {
      throw ConfigError("maneuvers.scale_orientation: leader pair (" +
                        std::to_string(spec.leader.first) + ", " +
                        std::to_string(spec.leader.second) + ") is not a graph edge");
    }
    check_symmetric_psd(spec.damping, "maneuvers.scale_orientation.damping");
    c.maneuvers.scale_orientation.agent_a = a;
    c.maneuvers.scale_orientation.agent_b = b;
    c.maneuvers.scale_orientation.displacement_target = spec.target;
    c.maneuvers.scale_orientation.damping = spec.damping;
  }
  c.maneuvers.velocity_tracking.enabled = s.maneuvers.velocity_tracking.enabled;
  if (s.maneuvers.velocity_tracking.enabled) {
    check_symmetric_psd(s.maneuvers.velocity_tracking.damping,
                        "maneuvers.velocity_tracking.damping");
    c.maneuvers.velocity_tracking.velocity_target = s.maneuvers.velocity_tracking.target;
    c.maneuvers.velocity_tracking.damping = s.maneuvers.velocity_tracking.damping;
  }

  // Integration.
  if (!(s.integration.dt > 0.0)) {
    throw ConfigError("integration: dt must be positive");
  }
  if (!(s.integration.duration >= 0.0)) {
    throw ConfigError("integration: duration must be nonnegative");
  }
  if (s.integration.log_stride < 1) {
    throw ConfigError("integration: log_stride must be at least 1");
  }
  c.integration = s.integration;
  return c;
}

Scenario paper_scenario() {
  using std::numbers::pi;
  Scenario s;
  s.label = "paper";
  s.graph.seed = {1, 2};
  s.graph.attachments = {{3, 1, 2}, {4, 2, 3}};
  s.agents = {
      {1, {0.9, 2.2}, {0.0, 0.0}, 1.0, Mat2::identity()},
      {2, {2.2, 2.8}, {0.0, 0.0}, 1.0, Mat2::identity()},
      {3, {1.8, 1.1}, {0.0, 0.0}, 1.0, Mat2::identity()},
      {4, {3.1, 1.9}, {0.0, 0.0}, 1.0, Mat2::identity()},
  };
  s.angles = {
      {1, pi / 2, pi / 4, std::nullopt},
      {2, pi / 4, pi / 4, std::nullopt},
  };
  s.gains.uniform = {10.0, 1.0};
  s.estimators = {false, 1.0, 10.0};
  s.maneuvers.scale_orientation = {true, {1, 2}, {10.0, -10.0}, Mat2::diagonal(0.8, 0.8)};
  s.maneuvers.velocity_tracking = {true, {3.0, 3.0}, Mat2::diagonal(1.8, 1.8)};
  s.integration = {1e-3, 30.0, 1};
  return s;
}

}  // namespace formation
