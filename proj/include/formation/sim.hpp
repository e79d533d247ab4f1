#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "formation/analysis_types.hpp"
#include "formation/scenario.hpp"

namespace formation {

// One logged instant. Estimator samples are in bank order (triangle-major,
// canonical slot order); rbar = rhat - r is derived on output.
struct LogRow {
  double t{0.0};
  std::vector<Vec2> q, p, u;
  std::vector<TriangleErrorState> triangles;
  std::vector<double> rhat;
  std::vector<double> rtrue;
  EnergyBreakdown energy;
};

struct TrajectoryLog {
  std::vector<std::string> columns;
  std::vector<LogRow> rows;
};

// Fixed, documented column order: time; per agent q/p/U; per triangle the
// cosine errors and rates; per estimator rhat/r/rbar; energy terms.
std::vector<std::string> log_columns(const CompiledScenario& c);

// Flattens one row in column order.
std::vector<double> flatten_row(const LogRow& row);

// Full closed-loop derivative of the coupled state (agents + estimators).
SystemState closed_loop_derivative(const CompiledScenario& c, const SystemState& state);

// Runs the scenario with fixed-step RK4, logging every `log_stride` steps and
// always logging the final state. Deterministic: identical scenarios produce
// bit-identical logs. Aborts (CoincidentAgents / EstimatorSingular /
// NonFiniteState) carry the time of the offending step.
TrajectoryLog run(const CompiledScenario& c);
TrajectoryLog run(const Scenario& s);

void write_trajectory_csv(const TrajectoryLog& log, const std::filesystem::path& path);

}  // namespace formation
