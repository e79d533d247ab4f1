#include "formation/dynamics.hpp"

#include <cassert>

namespace formation {

SystemState add_scaled(const SystemState& s, double c, const SystemState& rate) {
  assert(s.agents.size() == rate.agents.size());
  assert(s.estimates.size() == rate.estimates.size());
  SystemState out;
  out.agents.resize(s.agents.size());
  out.estimates.resize(s.estimates.size());
  for (std::size_t n = 0; n < s.agents.size(); ++n) {
    out.agents[n].q = s.agents[n].q + c * rate.agents[n].q;
    out.agents[n].p = s.agents[n].p + c * rate.agents[n].p;
  }
  for (std::size_t k = 0; k < s.estimates.size(); ++k) {
    out.estimates[k] = s.estimates[k] + c * rate.estimates[k];
  }
  return out;
}

bool all_finite(const SystemState& s) {
  for (const auto& a : s.agents) {
    if (!all_finite(a.q) || !all_finite(a.p)) return false;
  }
  for (const double v : s.estimates) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace formation
