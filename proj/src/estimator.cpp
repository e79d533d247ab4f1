#include "formation/estimator.hpp"

#include <cmath>
#include <string>

namespace formation {

std::string estimator_slot_name(int slot) {
  const EstimatorSlot& s = kEstimatorSlots[static_cast<std::size_t>(slot)];
  static constexpr const char* kEdge[] = {"i", "j", "k"};
  std::string name = "a" + std::to_string(s.agent_role + 1);
  name += s.angle == AngleKind::theta ? "_theta_" : "_phi_";
  name += kEdge[static_cast<int>(s.edge)];
  return name;
}

double edge_stretch_rate(EdgeRole edge, const TriangleGeometry& tri, Vec2 v1, Vec2 v2,
                         Vec2 v3) {
  switch (edge) {
    case EdgeRole::i:
      return dot(tri.s_i, v3 - v2);
    case EdgeRole::j:
      return dot(tri.s_j, v3 - v1);
    case EdgeRole::k:
      return dot(tri.s_k, v2 - v1);
  }
  return 0.0;
}

double flow_factor(int slot, const TriangleGeometry& tri, Vec2 v1, Vec2 v2, Vec2 v3) {
  const RowCovec2 jk = angle_jacobian_term(tri.s_j, tri.s_k, 1.0 / tri.r_k);  // s_j^T L_sk
  const RowCovec2 kj = angle_jacobian_term(tri.s_k, tri.s_j, 1.0 / tri.r_j);  // s_k^T L_sj
  const RowCovec2 ij = angle_jacobian_term(tri.s_i, tri.s_j, 1.0 / tri.r_j);  // s_i^T L_sj
  const RowCovec2 ji = angle_jacobian_term(tri.s_j, tri.s_i, 1.0 / tri.r_i);  // s_j^T L_si
  switch (slot) {
    case 0:
      return -jk.apply(v1);
    case 1:
      return -kj.apply(v1);
    case 2:
      return jk.apply(v2);
    case 3:
      return kj.apply(v3);
    case 4:
      return -ij.apply(v1);
    case 5:
      return -ji.apply(v2);
    case 6:
      return ji.apply(v3);
    case 7:
      return ij.apply(v3);
    default:
      throw ConfigError("invalid estimator slot " + std::to_string(slot));
  }
}

double estimator_derivative(int slot, double rhat, double gain, const TriangleGeometry& tri,
                            Vec2 v1, Vec2 v2, Vec2 v3, double gamma) {
  if (!(rhat > kMinEstimatedDistance)) {
    throw EstimatorSingular("estimator " + estimator_slot_name(slot) + " at " +
                            std::to_string(rhat) + " is at or below guard " +
                            std::to_string(kMinEstimatedDistance));
  }
  const EstimatorSlot& spec = kEstimatorSlots[static_cast<std::size_t>(slot)];
  const double stretch = edge_stretch_rate(spec.edge, tri, v1, v2, v3);
  const double flow = flow_factor(slot, tri, v1, v2, v3);
  return stretch - gamma / (gain * rhat) * flow;
}

std::vector<double> init_bank(const FormationGraph& g, const EstimatorInit& init,
                              std::span<const Vec2> positions) {
  if (!init.use_true_distance && !(init.initial > kMinEstimatedDistance)) {
    throw ConfigError("estimator initial value " + std::to_string(init.initial) +
                      " must exceed " + std::to_string(kMinEstimatedDistance));
  }
  if (!(init.gain > 0.0)) {
    throw ConfigError("estimator gain must be positive");
  }
  std::vector<double> bank;
  bank.reserve(static_cast<std::size_t>(g.triangle_count()) * kEstimatorsPerTriangle);
  for (const Triangle& tri : g.triangles) {
    const auto geom = TriangleGeometry::from_positions(
        positions[tri.vertices[0]], positions[tri.vertices[1]], positions[tri.vertices[2]]);
    const double by_edge[3] = {geom.r_i, geom.r_j, geom.r_k};
    for (const EstimatorSlot& s : kEstimatorSlots) {
      bank.push_back(init.use_true_distance ? by_edge[static_cast<int>(s.edge)] : init.initial);
    }
  }
  return bank;
}

TriangleDistanceEstimates estimates_for_triangle(std::span<const double> bank, int triangle) {
  const std::size_t base = static_cast<std::size_t>(estimator_index(triangle, 0));
  return {bank[base + 0], bank[base + 1], bank[base + 2], bank[base + 3],
          bank[base + 4], bank[base + 5], bank[base + 6], bank[base + 7]};
}

}  // namespace formation
