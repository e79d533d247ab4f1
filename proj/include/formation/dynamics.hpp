#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "formation/errors.hpp"
#include "formation/vec2.hpp"

namespace formation {

// Physical parameters of one agent: mass and the friction (damping) matrix
// of its momentum dynamics. friction must be symmetric positive semidefinite.
struct AgentParams {
  double mass{1.0};
  Mat2 friction{Mat2::identity()};
};

// Position and momentum of one double-integrator agent.
struct AgentState {
  Vec2 q;
  Vec2 p;
};

// Joint integration state: all agents plus the flat bank of distance
// estimates (8 per triangle, canonical slot order; see estimator.hpp).
struct SystemState {
  std::vector<AgentState> agents;
  std::vector<double> estimates;
};

struct AgentDerivative {
  Vec2 dq;
  Vec2 dp;
};

// Port-Hamiltonian double integrator with damping:
//   qdot = p/m,  pdot = -D_r p/m + U.   The output is Y = p/m.
inline AgentDerivative agent_derivative(const AgentState& s, const AgentParams& params,
                                        Vec2 input) {
  const Vec2 velocity = (1.0 / params.mass) * s.p;
  return {velocity, -params.friction.apply(velocity) + input};
}

inline double add_scaled(double s, double c, double rate) { return s + c * rate; }
inline bool all_finite(double x) { return std::isfinite(x); }

SystemState add_scaled(const SystemState& s, double c, const SystemState& rate);
bool all_finite(const SystemState& s);

// Classical 4th-order Runge-Kutta update. Deterministic; throws
// NonFiniteState if the updated state contains NaN or infinity.
template <class State, class Deriv>
State rk4_step(Deriv&& f, const State& s, double dt) {
  const State k1 = f(s);
  const State k2 = f(add_scaled(s, 0.5 * dt, k1));
  const State k3 = f(add_scaled(s, 0.5 * dt, k2));
  const State k4 = f(add_scaled(s, dt, k3));
  State out = add_scaled(s, dt / 6.0, k1);
  out = add_scaled(out, dt / 3.0, k2);
  out = add_scaled(out, dt / 3.0, k3);
  out = add_scaled(out, dt / 6.0, k4);
  if (!all_finite(out)) {
    throw NonFiniteState("integration step produced a non-finite state");
  }
  return out;
}

}  // namespace formation
