#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "formation/errors.hpp"
#include "formation/geometry.hpp"
#include "formation/graph.hpp"

namespace formation {

enum class AngleKind : int { theta = 0, phi = 1 };
enum class EdgeRole : int { i = 0, j = 1, k = 2 };

// Identity of one distance estimator within its triangle: which agent role
// owns it, which angle it serves, and which edge length it estimates.
struct EstimatorSlot {
  int agent_role;  // 0, 1, 2
  AngleKind angle;
  EdgeRole edge;
};

inline constexpr int kEstimatorsPerTriangle = 8;

// Canonical slot order. Matches TriangleDistanceEstimates field order and the
// CSV column layout.
inline constexpr std::array<EstimatorSlot, kEstimatorsPerTriangle> kEstimatorSlots{{
    {0, AngleKind::theta, EdgeRole::k},
    {0, AngleKind::theta, EdgeRole::j},
    {1, AngleKind::theta, EdgeRole::k},
    {2, AngleKind::theta, EdgeRole::j},
    {0, AngleKind::phi, EdgeRole::j},
    {1, AngleKind::phi, EdgeRole::i},
    {2, AngleKind::phi, EdgeRole::i},
    {2, AngleKind::phi, EdgeRole::j},
}};

// Stable name for CSV headers and reports, e.g. "a1_theta_k".
std::string estimator_slot_name(int slot);

// Flat index into the bank.
constexpr int estimator_index(int triangle, int slot) {
  return triangle * kEstimatorsPerTriangle + slot;
}

// Time derivative of the true edge length under the given vertex velocities:
// s_e^T zdot_e for the slot's edge.
double edge_stretch_rate(EdgeRole edge, const TriangleGeometry& tri, Vec2 v1, Vec2 v2,
                         Vec2 v3);

// The owning agent's contribution to the angle flow through the slot's edge,
// evaluated with ground-truth bearings and distances. For slot (agent 1,
// theta, k) this is -s_j^T L_sk qdot_1; the other slots follow the same
// decomposition of the true angle Jacobians.
double flow_factor(int slot, const TriangleGeometry& tri, Vec2 v1, Vec2 v2, Vec2 v3);

// Estimator dynamics:  drhat/dt = s_e^T zdot_e - (gamma / (c * rhat)) * f,
// where gamma is the owning agent's coupling effort for the slot's angle and
// f is flow_factor. Throws EstimatorSingular when rhat <= the 1/r guard.
double estimator_derivative(int slot, double rhat, double gain, const TriangleGeometry& tri,
                            Vec2 v1, Vec2 v2, Vec2 v3, double gamma);

// How the bank is initialized.
struct EstimatorInit {
  bool use_true_distance{false};
  double initial{1.0};
  double gain{10.0};  // distance-space spring c_eps, same for every slot
};

// Initial estimate values, 8 per triangle in slot order. With
// use_true_distance, each slot starts at its edge's actual length computed
// from the given positions. Throws ConfigError for a non-positive (or
// sub-guard) initial value or gain.
std::vector<double> init_bank(const FormationGraph& g, const EstimatorInit& init,
                              std::span<const Vec2> positions);

// The eight estimates of one triangle, pulled out of the flat bank.
TriangleDistanceEstimates estimates_for_triangle(std::span<const double> bank, int triangle);

}  // namespace formation
