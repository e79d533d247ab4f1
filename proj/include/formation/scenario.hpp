#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "formation/control.hpp"
#include "formation/dynamics.hpp"
#include "formation/estimator.hpp"
#include "formation/graph.hpp"

namespace formation {

// User-level run configuration, mirroring the scenario file. Node ids here
// are external; compile_scenario resolves them to internal indices.
struct GraphSpec {
  std::pair<int, int> seed{1, 2};
  std::vector<Attachment> attachments;
};

struct AgentConfig {
  int id{0};
  Vec2 position{};
  Vec2 velocity{};
  double mass{1.0};
  Mat2 friction{Mat2::identity()};
};

// Desired angles of one triangle (radians), with an optional role permutation
// naming which vertex carries theta (first) and phi (last).
struct AngleTarget {
  int triangle{1};  // 1-based, in attachment order
  double theta{0.0};
  double phi{0.0};
  std::optional<std::array<int, 3>> roles;  // external node ids
};

struct GainOverride {
  int triangle{1};  // 1-based
  int agent{0};     // external node id
  AngleKind angle{AngleKind::theta};
  AngleGains gains;
};

struct GainSpec {
  AngleGains uniform{};
  std::vector<GainOverride> overrides;
};

// Maneuver settings with external ids / enable flags.
struct ScaleOrientationSpec {
  bool enabled{false};
  std::pair<int, int> leader{1, 2};
  Vec2 target{};
  Mat2 damping{Mat2::diagonal(0.8, 0.8)};
};

struct VelocityTrackingSpec {
  bool enabled{false};
  Vec2 target{};
  Mat2 damping{Mat2::diagonal(1.8, 1.8)};
};

struct ManeuverSpec {
  ScaleOrientationSpec scale_orientation;
  VelocityTrackingSpec velocity_tracking;
};

struct IntegrationConfig {
  double dt{1e-3};
  double duration{30.0};
  int log_stride{1};
};

struct Scenario {
  std::string label;
  GraphSpec graph;
  std::vector<AgentConfig> agents;
  std::vector<AngleTarget> angles;
  GainSpec gains;
  EstimatorInit estimators;
  ManeuverSpec maneuvers;
  IntegrationConfig integration;
};

// Validated, index-resolved form ready for the run loop.
struct CompiledScenario {
  std::string label;
  FormationGraph graph;
  std::vector<AgentParams> params;       // node order
  SystemState initial;                   // agents + estimate bank
  GainTable gains;
  std::vector<double> estimator_gains;   // per bank entry
  ManeuverConfig maneuvers;
  IntegrationConfig integration;
};

// Validates every invariant (graph construction, angle margins, positive
// gains, PSD matrices, agent/node correspondence, integration settings) and
// resolves external ids. Throws ConfigError / InvalidAttachment.
CompiledScenario compile_scenario(const Scenario& s);

// The built-in four-agent reproduction scenario: two triangles, leader edge
// (1,2) servoed to (10,-10), common velocity target (3,3).
Scenario paper_scenario();

}  // namespace formation
