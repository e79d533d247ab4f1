#include "formation/scenario_io.hpp"

#include <fstream>

namespace formation {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("scenario: " + where + ": " + what);
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

Vec2 as_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(where, "expected [x, y]");
  return {as_number(j[0], where), as_number(j[1], where)};
}

// Accepts a scalar s (s*I), a pair [dx, dy] (diagonal), or four row-major
// entries [m00, m01, m10, m11].
Mat2 as_mat2(const json& j, const std::string& where) {
  if (j.is_number()) {
    const double s = j.get<double>();
    return Mat2::diagonal(s, s);
  }
  if (j.is_array() && j.size() == 2) {
    return Mat2::diagonal(as_number(j[0], where), as_number(j[1], where));
  }
  if (j.is_array() && j.size() == 4) {
    return {as_number(j[0], where), as_number(j[1], where), as_number(j[2], where),
            as_number(j[3], where)};
  }
  fail(where, "expected a scalar, [dx, dy], or [m00, m01, m10, m11]");
}

template <class T>
T get_or(const json& j, const std::string& key, const T& fallback) {
  const auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) fail("top level", "expected an object");
  Scenario s;
  s.label = get_or<std::string>(j, "label", "");

  {
    const json& g = require(j, "graph", "top level");
    const json& seed = require(g, "seed", "graph");
    if (!seed.is_array() || seed.size() != 2) fail("graph.seed", "expected [node, node]");
    s.graph.seed = {as_int(seed[0], "graph.seed"), as_int(seed[1], "graph.seed")};
    const json& atts = require(g, "attachments", "graph");
    if (!atts.is_array()) fail("graph.attachments", "expected an array");
    for (const json& a : atts) {
      if (!a.is_array() || a.size() != 3) {
        fail("graph.attachments", "expected [new_node, anchor_a, anchor_b]");
      }
      s.graph.attachments.push_back({as_int(a[0], "graph.attachments"),
                                     as_int(a[1], "graph.attachments"),
                                     as_int(a[2], "graph.attachments")});
    }
  }

  {
    const json& agents = require(j, "agents", "top level");
    if (!agents.is_array()) fail("agents", "expected an array");
    for (const json& a : agents) {
      AgentConfig cfg;
      cfg.id = as_int(require(a, "id", "agents"), "agents.id");
      const std::string where = "agents[id=" + std::to_string(cfg.id) + "]";
      cfg.position = as_vec2(require(a, "position", where), where + ".position");
      if (a.contains("velocity")) cfg.velocity = as_vec2(a["velocity"], where + ".velocity");
      if (a.contains("mass")) cfg.mass = as_number(a["mass"], where + ".mass");
      if (a.contains("friction")) cfg.friction = as_mat2(a["friction"], where + ".friction");
      s.agents.push_back(cfg);
    }
  }

  {
    const json& angles = require(j, "angles", "top level");
    if (!angles.is_array()) fail("angles", "expected an array");
    for (const json& a : angles) {
      AngleTarget t;
      t.triangle = as_int(require(a, "triangle", "angles"), "angles.triangle");
      const std::string where = "angles[triangle=" + std::to_string(t.triangle) + "]";
      t.theta = as_number(require(a, "theta", where), where + ".theta");
      t.phi = as_number(require(a, "phi", where), where + ".phi");
      if (a.contains("roles")) {
        const json& roles = a["roles"];
        if (!roles.is_array() || roles.size() != 3) fail(where + ".roles", "expected 3 node ids");
        t.roles = {{as_int(roles[0], where), as_int(roles[1], where), as_int(roles[2], where)}};
      }
      s.angles.push_back(t);
    }
  }

  if (j.contains("gains")) {
    const json& g = j["gains"];
    s.gains.uniform.spring = g.contains("spring") ? as_number(g["spring"], "gains.spring") : 10.0;
    s.gains.uniform.damper = g.contains("damper") ? as_number(g["damper"], "gains.damper") : 1.0;
    if (g.contains("overrides")) {
      for (const json& o : g["overrides"]) {
        GainOverride ov;
        ov.triangle = as_int(require(o, "triangle", "gains.overrides"), "gains.overrides");
        ov.agent = as_int(require(o, "agent", "gains.overrides"), "gains.overrides");
        const std::string kind =
            require(o, "angle", "gains.overrides").get<std::string>();
        if (kind == "theta") {
          ov.angle = AngleKind::theta;
        } else if (kind == "phi") {
          ov.angle = AngleKind::phi;
        } else {
          fail("gains.overrides.angle", "expected \"theta\" or \"phi\"");
        }
        ov.gains.spring = as_number(require(o, "spring", "gains.overrides"), "gains.overrides");
        ov.gains.damper = as_number(require(o, "damper", "gains.overrides"), "gains.overrides");
        s.gains.overrides.push_back(ov);
      }
    }
  }

  if (j.contains("estimators")) {
    const json& e = j["estimators"];
    if (e.contains("initial")) {
      const json& init = e["initial"];
      if (init.is_string()) {
        if (init.get<std::string>() != "true") {
          fail("estimators.initial", "expected a number or \"true\"");
        }
        s.estimators.use_true_distance = true;
      } else if (init.is_boolean()) {
        s.estimators.use_true_distance = init.get<bool>();
      } else {
        s.estimators.initial = as_number(init, "estimators.initial");
      }
    }
    if (e.contains("gain")) s.estimators.gain = as_number(e["gain"], "estimators.gain");
  }

  if (j.contains("maneuvers")) {
    const json& m = j["maneuvers"];
    if (m.contains("scale_orientation")) {
      const json& so = m["scale_orientation"];
      auto& spec = s.maneuvers.scale_orientation;
      spec.enabled = get_or<bool>(so, "enabled", true);
      if (so.contains("leader")) {
        const json& leader = so["leader"];
        if (!leader.is_array() || leader.size() != 2) {
          fail("maneuvers.scale_orientation.leader", "expected [agent_a, agent_b]");
        }
        spec.leader = {as_int(leader[0], "leader"), as_int(leader[1], "leader")};
      }
      if (so.contains("target")) {
        spec.target = as_vec2(so["target"], "maneuvers.scale_orientation.target");
      }
      if (so.contains("damping")) {
        spec.damping = as_mat2(so["damping"], "maneuvers.scale_orientation.damping");
      }
    }
    if (m.contains("velocity_tracking")) {
      const json& vt = m["velocity_tracking"];
      auto& spec = s.maneuvers.velocity_tracking;
      spec.enabled = get_or<bool>(vt, "enabled", true);
      if (vt.contains("target")) {
        spec.target = as_vec2(vt["target"], "maneuvers.velocity_tracking.target");
      }
      if (vt.contains("damping")) {
        spec.damping = as_mat2(vt["damping"], "maneuvers.velocity_tracking.damping");
      }
    }
  }

  if (j.contains("integration")) {
    const json& i = j["integration"];
    if (i.contains("dt")) s.integration.dt = as_number(i["dt"], "integration.dt");
    if (i.contains("duration")) {
      s.integration.duration = as_number(i["duration"], "integration.duration");
    }
    if (i.contains("log_stride")) {
      s.integration.log_stride = as_int(i["log_stride"], "integration.log_stride");
    }
  }
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["label"] = s.label;
  j["graph"]["seed"] = {s.graph.seed.first, s.graph.seed.second};
  j["graph"]["attachments"] = json::array();
  for (const Attachment& a : s.graph.attachments) {
    j["graph"]["attachments"].push_back({a.new_node, a.anchor_a, a.anchor_b});
  }
  j["agents"] = json::array();
  for (const AgentConfig& a : s.agents) {
    j["agents"].push_back({{"id", a.id},
                           {"position", {a.position.x, a.position.y}},
                           {"velocity", {a.velocity.x, a.velocity.y}},
                           {"mass", a.mass},
                           {"friction", {a.friction.m00, a.friction.m01, a.friction.m10,
                                         a.friction.m11}}});
  }
  j["angles"] = json::array();
  for (const AngleTarget& t : s.angles) {
    json entry = {{"triangle", t.triangle}, {"theta", t.theta}, {"phi", t.phi}};
    if (t.roles) entry["roles"] = {(*t.roles)[0], (*t.roles)[1], (*t.roles)[2]};
    j["angles"].push_back(entry);
  }
  j["gains"] = {{"spring", s.gains.uniform.spring}, {"damper", s.gains.uniform.damper}};
  if (!s.gains.overrides.empty()) {
    j["gains"]["overrides"] = json::array();
    for (const GainOverride& o : s.gains.overrides) {
      j["gains"]["overrides"].push_back(
          {{"triangle", o.triangle},
           {"agent", o.agent},
           {"angle", o.angle == AngleKind::theta ? "theta" : "phi"},
           {"spring", o.gains.spring},
           {"damper", o.gains.damper}});
    }
  }
  if (s.estimators.use_true_distance) {
    j["estimators"]["initial"] = "true";
  } else {
    j["estimators"]["initial"] = s.estimators.initial;
  }
  j["estimators"]["gain"] = s.estimators.gain;
  {
    const auto& so = s.maneuvers.scale_orientation;
    j["maneuvers"]["scale_orientation"] = {
        {"enabled", so.enabled},
        {"leader", {so.leader.first, so.leader.second}},
        {"target", {so.target.x, so.target.y}},
        {"damping", {so.damping.m00, so.damping.m01, so.damping.m10, so.damping.m11}}};
    const auto& vt = s.maneuvers.velocity_tracking;
    j["maneuvers"]["velocity_tracking"] = {
        {"enabled", vt.enabled},
        {"target", {vt.target.x, vt.target.y}},
        {"damping", {vt.damping.m00, vt.damping.m01, vt.damping.m10, vt.damping.m11}}};
  }
  j["integration"] = {{"dt", s.integration.dt},
                      {"duration", s.integration.duration},
                      {"log_stride", s.integration.log_stride}};
  return j;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

void save_scenario_file(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write scenario file: " + path.string());
  }
  out << scenario_to_json(s).dump(2) << '\n';
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + assignment + "' must be key=value");
  }
  std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  // Bare shorthands for the common integration/estimator knobs.
  if (key == "dt") key = "integration.dt";
  else if (key == "duration" || key == "T") key = "integration.duration";
  else if (key == "log_stride") key = "integration.log_stride";
  else if (key == "r_hat0") key = "estimators.initial";

  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;  // plain string
  }

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) {
      throw ConfigError("override '" + assignment + "': empty path segment");
    }
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

}  // namespace formation
