#include "formation/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace formation {

namespace {

[[noreturn]] void throw_coincident(double r) {
  throw CoincidentAgents("coincident agents: separation " + std::to_string(r) +
                         " at or below " + std::to_string(kCoincidenceEpsilon));
}

double checked_inverse_estimate(double rhat, const char* slot) {
  if (!(rhat > kMinEstimatedDistance)) {
    throw EstimatorSingular("distance estimate " + std::string(slot) + " = " +
                            std::to_string(rhat) + " at or below guard " +
                            std::to_string(kMinEstimatedDistance));
  }
  return 1.0 / rhat;
}

}  // namespace

DistanceBearing distance_and_bearing(Vec2 z) {
  const double r = norm(z);
  if (!(r > kCoincidenceEpsilon)) throw_coincident(r);
  return {r, UnitVec2{z.x / r, z.y / r}};
}

Mat2 bearing_jacobian(double r, UnitVec2 s) {
  const double inv_r = 1.0 / r;
  return {inv_r * (1.0 - s.x * s.x), inv_r * (-s.x * s.y),
          inv_r * (-s.y * s.x), inv_r * (1.0 - s.y * s.y)};
}

Mat2 bearing_jacobian(Vec2 z) {
  const auto [r, s] = distance_and_bearing(z);
  return bearing_jacobian(r, s);
}

RowCovec2 distance_jacobian(Vec2 z) {
  const auto [r, s] = distance_and_bearing(z);
  (void)r;
  return {s.x, s.y};
}

double cos_angle(UnitVec2 a, UnitVec2 b) {
  return std::clamp(dot(a, b), -1.0, 1.0);
}

TriangleGeometry TriangleGeometry::from_positions(Vec2 q1, Vec2 q2, Vec2 q3) {
  TriangleGeometry t;
  t.q1 = q1;
  t.q2 = q2;
  t.q3 = q3;
  t.z_k = relative_position(q1, q2);
  t.z_j = relative_position(q1, q3);
  t.z_i = relative_position(q2, q3);
  const auto dk = distance_and_bearing(t.z_k);
  const auto dj = distance_and_bearing(t.z_j);
  const auto di = distance_and_bearing(t.z_i);
  t.r_k = dk.r;
  t.r_j = dj.r;
  t.r_i = di.r;
  t.s_k = dk.s;
  t.s_j = dj.s;
  t.s_i = di.s;
  t.cos_theta = cos_angle(t.s_k, t.s_j);
  t.cos_phi = cos_angle(t.s_i, t.s_j);
  return t;
}

RowCovec2 angle_jacobian_term(UnitVec2 a, UnitVec2 b, double inv_r) {
  const double c = dot(a, b);
  return {inv_r * (a.x - c * b.x), inv_r * (a.y - c * b.y)};
}

AngleJacobians true_angle_jacobians(const TriangleGeometry& tri) {
  const RowCovec2 jk = angle_jacobian_term(tri.s_j, tri.s_k, 1.0 / tri.r_k);  // s_j^T L_sk
  const RowCovec2 kj = angle_jacobian_term(tri.s_k, tri.s_j, 1.0 / tri.r_j);  // s_k^T L_sj
  const RowCovec2 ij = angle_jacobian_term(tri.s_i, tri.s_j, 1.0 / tri.r_j);  // s_i^T L_sj
  const RowCovec2 ji = angle_jacobian_term(tri.s_j, tri.s_i, 1.0 / tri.r_i);  // s_j^T L_si

  AngleJacobians out;
  out.theta = {-(jk + kj), jk, kj};
  out.phi = {-ij, -ji, ji + ij};
  return out;
}

TriangleDistanceEstimates TriangleDistanceEstimates::exact(const TriangleGeometry& tri) {
  return {tri.r_k, tri.r_j, tri.r_k, tri.r_j, tri.r_j, tri.r_i, tri.r_i, tri.r_j};
}

AngleJacobians estimated_angle_jacobians(const TriangleGeometry& tri,
                                         const TriangleDistanceEstimates& est) {
  const RowCovec2 jk1 =
      angle_jacobian_term(tri.s_j, tri.s_k, checked_inverse_estimate(est.theta_a1_k, "theta_a1_k"));
  const RowCovec2 kj1 =
      angle_jacobian_term(tri.s_k, tri.s_j, checked_inverse_estimate(est.theta_a1_j, "theta_a1_j"));
  const RowCovec2 jk2 =
      angle_jacobian_term(tri.s_j, tri.s_k, checked_inverse_estimate(est.theta_a2_k, "theta_a2_k"));
  const RowCovec2 kj3 =
      angle_jacobian_term(tri.s_k, tri.s_j, checked_inverse_estimate(est.theta_a3_j, "theta_a3_j"));
  const RowCovec2 ij1 =
      angle_jacobian_term(tri.s_i, tri.s_j, checked_inverse_estimate(est.phi_a1_j, "phi_a1_j"));
  const RowCovec2 ji2 =
      angle_jacobian_term(tri.s_j, tri.s_i, checked_inverse_estimate(est.phi_a2_i, "phi_a2_i"));
  const RowCovec2 ji3 =
      angle_jacobian_term(tri.s_j, tri.s_i, checked_inverse_estimate(est.phi_a3_i, "phi_a3_i"));
  const RowCovec2 ij3 =
      angle_jacobian_term(tri.s_i, tri.s_j, checked_inverse_estimate(est.phi_a3_j, "phi_a3_j"));

  AngleJacobians out;
  out.theta = {-(jk1 + kj1), jk2, kj3};
  out.phi = {-ij1, -ji2, ji3 + ij3};
  return out;
}

}  // namespace formation
