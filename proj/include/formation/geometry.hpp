#pragma once

#include <array>
#include <utility>

#include "formation/errors.hpp"
#include "formation/vec2.hpp"

namespace formation {

// Below this separation, bearings are numerically meaningless. Hard error,
// never clamped.
inline constexpr double kCoincidenceEpsilon = 1e-9;

// Guard for the 1/r-hat singularity of estimated distances.
inline constexpr double kMinEstimatedDistance = 1e-6;

// q_head - q_tail.
constexpr Vec2 relative_position(Vec2 q_tail, Vec2 q_head) { return q_head - q_tail; }

struct DistanceBearing {
  double r;
  UnitVec2 s;
};

// Length and direction of a relative position. Throws CoincidentAgents when
// the separation is at or below kCoincidenceEpsilon.
DistanceBearing distance_and_bearing(Vec2 z);

// Jacobian of the bearing map z -> z/|z|:  (1/r)(I - s s^T).
// Symmetric, annihilates s, rank 1 in the plane.
Mat2 bearing_jacobian(Vec2 z);
Mat2 bearing_jacobian(double r, UnitVec2 s);

// Jacobian of the distance map z -> |z|:  s^T. Satisfies dr/dt = s^T zdot.
RowCovec2 distance_jacobian(Vec2 z);

// Cosine of the angle between two directions, clamped to [-1, 1].
double cos_angle(UnitVec2 a, UnitVec2 b);

// One triangle of the formation, with the edge/vertex roles of the canonical
// picture: vertices 1,2,3; edge k joins 1-2, edge j joins 1-3, edge i joins
// 2-3. Orientation convention: z_k = q2 - q1, z_j = q3 - q1, z_i = q3 - q2,
// so that theta (interior angle at vertex 1) has cos(theta) = s_k . s_j and
// phi (interior angle at vertex 3) has cos(phi) = s_i . s_j.
struct TriangleGeometry {
  Vec2 q1, q2, q3;
  Vec2 z_i, z_j, z_k;
  double r_i, r_j, r_k;
  UnitVec2 s_i, s_j, s_k;
  double cos_theta;  // interior angle at vertex 1
  double cos_phi;    // interior angle at vertex 3

  static TriangleGeometry from_positions(Vec2 q1, Vec2 q2, Vec2 q3);
};

// Rows of the angle-cosine Jacobians with respect to the three vertex
// positions: d cos(theta) = sum_n theta[n] . dq_n, likewise for phi.
struct AngleJacobians {
  std::array<RowCovec2, 3> theta;
  std::array<RowCovec2, 3> phi;
};

// The building block of every angle Jacobian row: a^T * (1/r)(I - b b^T),
// i.e. inv_r * (a - (a.b) b)^T.
RowCovec2 angle_jacobian_term(UnitVec2 a, UnitVec2 b, double inv_r);

// Exact angle Jacobians from ground-truth geometry:
//   theta: [-(s_j^T L_sk + s_k^T L_sj),  s_j^T L_sk,  s_k^T L_sj]
//   phi:   [-s_i^T L_sj,  -s_j^T L_si,  s_j^T L_si + s_i^T L_sj]
AngleJacobians true_angle_jacobians(const TriangleGeometry& tri);

// Distance estimates feeding the estimated Jacobians, one per
// (owning agent, angle, edge) combination. Eight per triangle:
// agent 1 owns (theta,k), (theta,j), (phi,j); agent 2 owns (theta,k),
// (phi,i); agent 3 owns (theta,j), (phi,i), (phi,j) -- each agent estimates
// exactly the edges whose inverse lengths appear in its own Jacobian rows.
struct TriangleDistanceEstimates {
  double theta_a1_k;
  double theta_a1_j;
  double theta_a2_k;
  double theta_a3_j;
  double phi_a1_j;
  double phi_a2_i;
  double phi_a3_i;
  double phi_a3_j;

  [[nodiscard]] std::array<double, 8> as_array() const {
    return {theta_a1_k, theta_a1_j, theta_a2_k, theta_a3_j,
            phi_a1_j,   phi_a2_i,   phi_a3_i,   phi_a3_j};
  }

  static TriangleDistanceEstimates exact(const TriangleGeometry& tri);
};

// Same algebraic form as true_angle_jacobians, with each edge's 1/r replaced
// by the owning agent's 1/r-hat for that (angle, edge) pair. Reads only the
// bearings of `tri`, never its true distances. Throws EstimatorSingular when
// any estimate is at or below kMinEstimatedDistance.
AngleJacobians estimated_angle_jacobians(const TriangleGeometry& tri,
                                         const TriangleDistanceEstimates& est);

}  // namespace formation
