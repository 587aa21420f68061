#pragma once

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpg/exec/scenario.hpp"
#include "mpg/exec/trace_io.hpp"

namespace mpg::cli {

using exec::Json;

/// Schema violation; `key()` is the dotted path of the offending key.
class SchemaError : public ConfigInvalid {
 public:
  SchemaError(std::string key, const std::string& what)
      : ConfigInvalid(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A scenario document: the scenario itself plus where to write results.
struct ScenarioFile {
  exec::Scenario scenario;
  std::optional<std::string> outputDir;

  bool operator==(const ScenarioFile&) const = default;
};

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Walks one JSON object, remembering which keys were read so that anything
// left over can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_, "expected an object");
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = find(key);
    if (v == nullptr) throw SchemaError(child(key), "required key missing");
    return *v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw SchemaError(child(it.key()), "unknown key");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// `nullValue` is what a JSON null means for this key (infinite bounds are
// written as null); NaN forbids null.
inline double asNumber(const Json& v, const std::string& path,
                       double nullValue = std::numeric_limits<double>::quiet_NaN()) {
  if (v.is_null() && !std::isnan(nullValue)) return nullValue;
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  return v.get<double>();
}

inline std::int64_t asInteger(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<std::int64_t>();
}

inline std::string asString(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

inline bool asBool(const Json& v, const std::string& path) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1)) return v.get<int>() == 1;
  throw SchemaError(path, "expected a boolean");
}

template <std::size_t N>
std::array<double, N> asArray(const Json& v, const std::string& path, double nullValue = std::numeric_limits<double>::quiet_NaN()) {
  if (!v.is_array() || v.size() != N) {
    throw SchemaError(path, "expected an array of " + std::to_string(N) + " numbers");
  }
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = asNumber(v[i], path + "[" + std::to_string(i) + "]", nullValue);
  return out;
}

inline std::vector<double> asVector(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asNumber(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline bench::Contacts asContacts(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != bench::kNumFeet) throw SchemaError(path, "expected 4 contact flags");
  bench::Contacts c{};
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = asBool(v[i], path + "[" + std::to_string(i) + "]");
  return c;
}

inline bench::Interval asInterval(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) throw SchemaError(path, "expected [lo, hi]");
  bench::Interval out{asNumber(v[0], path + "[0]", -kInf), asNumber(v[1], path + "[1]", kInf)};
  if (!(out.lo <= out.hi)) throw SchemaError(path, "lower bound exceeds upper bound");
  return out;
}

inline Json intervalToJson(const bench::Interval& i) { return Json::array({i.lo, i.hi}); }

template <typename T, typename F>
void readIf(ObjectReader& r, const std::string& key, T& field, F convert) {
  if (const Json* v = r.find(key)) field = convert(*v, r.child(key));
}

inline void readNumber(ObjectReader& r, const std::string& key, double& field, double nullValue = std::numeric_limits<double>::quiet_NaN()) {
  if (const Json* v = r.find(key)) field = asNumber(*v, r.child(key), nullValue);
}

inline void readInt(ObjectReader& r, const std::string& key, int& field) {
  if (const Json* v = r.find(key)) field = static_cast<int>(asInteger(*v, r.child(key)));
}

// --- plant state ---------------------------------------------------------

inline bench::PlantState parseState(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  bench::PlantState x;
  x.h = asNumber(r.require("h_m"), r.child("h_m"));
  readIf(r, "theta_rad", x.theta, [](const Json& v, const std::string& p) { return asArray<3>(v, p); });
  readIf(r, "p_m", x.p, [](const Json& v, const std::string& p) { return asArray<2>(v, p); });
  readIf(r, "v_mps", x.v, [](const Json& v, const std::string& p) { return asArray<2>(v, p); });
  readNumber(r, "vz_mps", x.vz);
  x.contacts = asContacts(r.require("contacts"), r.child("contacts"));
  r.finish();
  return x;
}

// --- disturbances --------------------------------------------------------

inline const char* kindName(bench::DisturbanceKind k) {
  switch (k) {
    case bench::DisturbanceKind::kImpulse: return "impulse";
    case bench::DisturbanceKind::kHold: return "hold";
    case bench::DisturbanceKind::kContactEvent: return "contact_event";
  }
  return "?";
}

inline bench::Disturbance parseDisturbance(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  bench::Disturbance d;
  const std::string kind = asString(r.require("kind"), r.child("kind"));
  d.time = asNumber(r.require("time_s"), r.child("time_s"));
  if (kind == "impulse") {
    d.kind = bench::DisturbanceKind::kImpulse;
    readIf(r, "dtheta_rad", d.dTheta, [](const Json& v, const std::string& p) { return asArray<3>(v, p); });
    readIf(r, "dv_mps", d.dV, [](const Json& v, const std::string& p) { return asArray<2>(v, p); });
    readNumber(r, "dvz_mps", d.dVz);
  } else if (kind == "hold") {
    d.kind = bench::DisturbanceKind::kHold;
    d.window = asNumber(r.require("window_s"), r.child("window_s"));
    const std::string comp = asString(r.require("component"), r.child("component"));
    auto idx = bench::holdComponentIndex(comp);
    if (!idx) throw SchemaError(r.child("component"), "unknown component '" + comp + "'");
    d.component = *idx;
    d.value = asNumber(r.require("value"), r.child("value"));
  } else if (kind == "contact_event") {
    d.kind = bench::DisturbanceKind::kContactEvent;
    d.contacts = asContacts(r.require("contacts"), r.child("contacts"));
    readNumber(r, "height_offset_m", d.heightOffset);
  } else {
    throw SchemaError(r.child("kind"), "expected impulse, hold or contact_event");
  }
  r.finish();
  try {
    d.validate();
  } catch (const ConfigInvalid& e) {
    throw SchemaError(path, e.what());
  }
  return d;
}

inline Json disturbanceToJson(const bench::Disturbance& d) {
  Json j;
  j["kind"] = kindName(d.kind);
  j["time_s"] = d.time;
  switch (d.kind) {
    case bench::DisturbanceKind::kImpulse:
      j["dtheta_rad"] = d.dTheta;
      j["dv_mps"] = d.dV;
      j["dvz_mps"] = d.dVz;
      break;
    case bench::DisturbanceKind::kHold:
      j["window_s"] = d.window;
      j["component"] = bench::holdComponentName(d.component);
      j["value"] = d.value;
      break;
    case bench::DisturbanceKind::kContactEvent:
      j["contacts"] = d.contacts;
      j["height_offset_m"] = d.heightOffset;
      break;
  }
  return j;
}

inline exec::ImpulseTrain parseImpulseTrain(const Json& j, const std::string& path) {
  ObjectReader r(j, path);
  exec::ImpulseTrain t;
  if (const Json* v = r.find("seed")) t.seed = static_cast<std::uint64_t>(asInteger(*v, r.child("seed")));
  readNumber(r, "start_s", t.start);
  readNumber(r, "end_s", t.end);
  readNumber(r, "min_interval_s", t.minInterval);
  readNumber(r, "max_interval_s", t.maxInterval);
  readNumber(r, "max_dv_mps", t.maxDv);
  readNumber(r, "max_dtilt_rad", t.maxDTilt);
  readNumber(r, "max_dvz_mps", t.maxDVz);
  r.finish();
  return t;
}

inline Json impulseTrainToJson(const exec::ImpulseTrain& t) {
  Json j;
  j["seed"] = t.seed;
  j["start_s"] = t.start;
  j["end_s"] = t.end;
  j["min_interval_s"] = t.minInterval;
  j["max_interval_s"] = t.maxInterval;
  j["max_dv_mps"] = t.maxDv;
  j["max_dtilt_rad"] = t.maxDTilt;
  j["max_dvz_mps"] = t.maxDVz;
  return j;
}

// --- plant config and RoA boxes -------------------------------------------

inline const char* contactRuleName(bench::ContactRule c) {
  switch (c) {
    case bench::ContactRule::kIgnore: return "ignore";
    case bench::ContactRule::kAny: return "any";
    case bench::ContactRule::kAll: return "all";
    case bench::ContactRule::kGaitOrAll: return "gait_or_all";
  }
  return "?";
}

inline bench::ContactRule parseContactRule(const Json& v, const std::string& path) {
  const std::string s = asString(v, path);
  for (auto c : {bench::ContactRule::kIgnore, bench::ContactRule::kAny, bench::ContactRule::kAll,
                 bench::ContactRule::kGaitOrAll}) {
    if (s == contactRuleName(c)) return c;
  }
  throw SchemaError(path, "expected ignore, any, all or gait_or_all");
}

inline bench::RoABox parseRoA(const Json& j, const std::string& path, bench::RoABox box) {
  ObjectReader r(j, path);
  readIf(r, "contacts", box.contacts, parseContactRule);
  readIf(r, "h_m", box.h, asInterval);
  readNumber(r, "tilt_max_rad", box.tiltMax, kInf);
  readIf(r, "vz_mps", box.vz, asInterval);
  if (const Json* e = r.find("error_max")) {
    ObjectReader er(*e, r.child("error_max"));
    for (int i = 0; i < bench::kNumCoords; ++i) {
      readNumber(er, std::string(bench::kCoordNames[i]), box.errorMax[i], kInf);
    }
    er.finish();
  }
  r.finish();
  return box;
}

inline Json roaToJson(const bench::RoABox& b) {
  Json j;
  j["contacts"] = contactRuleName(b.contacts);
  j["h_m"] = intervalToJson(b.h);
  j["tilt_max_rad"] = b.tiltMax;
  j["vz_mps"] = intervalToJson(b.vz);
  Json e;
  for (int i = 0; i < bench::kNumCoords; ++i) e[std::string(bench::kCoordNames[i])] = b.errorMax[i];
  j["error_max"] = std::move(e);
  return j;
}

inline bench::PrimitiveTuning parseTuning(const Json& j, const std::string& path, bench::PrimitiveTuning t) {
  ObjectReader r(j, path);
  readNumber(r, "rate_per_s", t.rate);
  readNumber(r, "overshoot", t.overshoot);
  if (const Json* v = r.find("roa")) t.roa = parseRoA(*v, r.child("roa"), t.roa);
  r.finish();
  return t;
}

inline Json tuningToJson(const bench::PrimitiveTuning& t) {
  Json j;
  j["rate_per_s"] = t.rate;
  j["overshoot"] = t.overshoot;
  j["roa"] = roaToJson(t.roa);
  return j;
}

inline void parsePlant(const Json& j, const std::string& path, bench::PlantConfig& c) {
  ObjectReader r(j, path);
  readNumber(r, "epsilon", c.epsilon);
  readIf(r, "norm_weights", c.normWeights,
         [](const Json& v, const std::string& p) { return asArray<bench::kNumCoords>(v, p); });
  if (const Json* b = r.find("safe_box")) {
    ObjectReader br(*b, r.child("safe_box"));
    readIf(br, "h_m", c.safeBox.h, asInterval);
    readNumber(br, "tilt_max_rad", c.safeBox.tiltMax);
    readNumber(br, "planar_speed_max_mps", c.safeBox.planarSpeedMax);
    readIf(br, "vz_mps", c.safeBox.vz, asInterval);
    br.finish();
  }
  readNumber(r, "gait_period_s", c.gaitPeriod);
  readNumber(r, "double_support_fraction", c.doubleSupportFraction);
  readNumber(r, "lie_height_m", c.lieHeight);
  readNumber(r, "land_height_m", c.landHeight);
  readNumber(r, "gravity_mps2", c.gravity);
  readNumber(r, "spline_duration_s", c.splineDuration);
  readNumber(r, "spline_reference_distance", c.splineReferenceDistance);
  readIf(r, "stand_height_m", c.standHeight, asInterval);
  readIf(r, "stand_angle_rad", c.standAngle, asInterval);
  readIf(r, "walk_height_m", c.walkHeight, asInterval);
  readIf(r, "walk_vx_mps", c.walkVx, asInterval);
  readIf(r, "walk_vy_mps", c.walkVy, asInterval);
  readIf(r, "walk_yaw_rate_radps", c.walkYawRate, asInterval);
  r.finish();
}

inline Json plantToJson(const bench::PlantConfig& c) {
  Json j;
  j["epsilon"] = c.epsilon;
  j["norm_weights"] = c.normWeights;
  Json b;
  b["h_m"] = intervalToJson(c.safeBox.h);
  b["tilt_max_rad"] = c.safeBox.tiltMax;
  b["planar_speed_max_mps"] = c.safeBox.planarSpeedMax;
  b["vz_mps"] = intervalToJson(c.safeBox.vz);
  j["safe_box"] = std::move(b);
  j["gait_period_s"] = c.gaitPeriod;
  j["double_support_fraction"] = c.doubleSupportFraction;
  j["lie_height_m"] = c.lieHeight;
  j["land_height_m"] = c.landHeight;
  j["gravity_mps2"] = c.gravity;
  j["spline_duration_s"] = c.splineDuration;
  j["spline_reference_distance"] = c.splineReferenceDistance;
  j["stand_height_m"] = intervalToJson(c.standHeight);
  j["stand_angle_rad"] = intervalToJson(c.standAngle);
  j["walk_height_m"] = intervalToJson(c.walkHeight);
  j["walk_vx_mps"] = intervalToJson(c.walkVx);
  j["walk_vy_mps"] = intervalToJson(c.walkVy);
  j["walk_yaw_rate_radps"] = intervalToJson(c.walkYawRate);
  return j;
}

inline bench::PrimitiveTuning& tuningRef(bench::PlantConfig& c, const std::string& id) {
  if (id == bench::kLie) return c.lie;
  if (id == bench::kStand) return c.stand;
  if (id == bench::kWalk) return c.walk;
  return c.land;
}

// --- search, refine, cost, executive ---------------------------------------

inline void parseSearch(const Json& j, const std::string& path, SearchConfig& c) {
  ObjectReader r(j, path);
  readNumber(r, "cheapest_bias", c.cheapestBias);
  readNumber(r, "t_min_s", c.tMin);
  readNumber(r, "t_max_s", c.tMax);
  readNumber(r, "dt_slack_s", c.dtSlack);
  readInt(r, "max_iterations", c.maxIterations);
  if (const Json* v = r.find("seed")) c.rngSeed = static_cast<std::uint64_t>(asInteger(*v, r.child("seed")));
  r.finish();
}

inline Json searchToJson(const SearchConfig& c) {
  Json j;
  j["cheapest_bias"] = c.cheapestBias;
  j["t_min_s"] = c.tMin;
  j["t_max_s"] = c.tMax;
  j["dt_slack_s"] = c.dtSlack;
  j["max_iterations"] = c.maxIterations;
  j["seed"] = c.rngSeed;
  return j;
}

inline void parseRefine(const Json& j, const std::string& path, RefineConfig& c) {
  ObjectReader r(j, path);
  readNumber(r, "step_size", c.stepSize);
  readInt(r, "max_gd_iterations", c.maxGDIterations);
  readInt(r, "max_outer_iterations", c.maxOuterIterations);
  readNumber(r, "cost_tolerance", c.costTolerance);
  readNumber(r, "finite_diff_step", c.finiteDiffStep);
  readNumber(r, "time_scale_s", c.timeScale);
  readInt(r, "max_halvings", c.maxHalvings);
  r.finish();
}

inline Json refineToJson(const RefineConfig& c) {
  Json j;
  j["step_size"] = c.stepSize;
  j["max_gd_iterations"] = c.maxGDIterations;
  j["max_outer_iterations"] = c.maxOuterIterations;
  j["cost_tolerance"] = c.costTolerance;
  j["finite_diff_step"] = c.finiteDiffStep;
  j["time_scale_s"] = c.timeScale;
  j["max_halvings"] = c.maxHalvings;
  return j;
}

inline std::vector<std::string> asStringList(const Json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of primitive ids");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(asString(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline void parseExec(const Json& j, const std::string& path, exec::ExecConfig& c) {
  ObjectReader r(j, path);
  readNumber(r, "adoption_tolerance", c.adoptionTolerance);
  readNumber(r, "handoff_grace_s", c.handoffGrace);
  readIf(r, "fallback_grounded", c.fallbackGrounded, asStringList);
  readIf(r, "fallback_airborne", c.fallbackAirborne, asStringList);
  if (const Json* v = r.find("deterministic_latency_ticks")) {
    if (v->is_null()) {
      c.deterministicLatencyTicks.reset();
    } else {
      c.deterministicLatencyTicks = static_cast<int>(asInteger(*v, r.child("deterministic_latency_ticks")));
    }
  }
  r.finish();
}

inline Json execToJson(const exec::ExecConfig& c) {
  Json j;
  j["adoption_tolerance"] = c.adoptionTolerance;
  j["handoff_grace_s"] = c.handoffGrace;
  j["fallback_grounded"] = c.fallbackGrounded;
  j["fallback_airborne"] = c.fallbackAirborne;
  j["deterministic_latency_ticks"] =
      c.deterministicLatencyTicks ? Json(*c.deterministicLatencyTicks) : Json(nullptr);
  return j;
}

}  // namespace detail

/// Parses and validates a scenario document. Unknown keys, wrong types and
/// invalid values raise SchemaError naming the key.
inline ScenarioFile parseScenario(const Json& doc) {
  using namespace detail;
  ScenarioFile f;
  auto& s = f.scenario;
  ObjectReader r(doc, "");
  s.name = asString(r.require("name"), "name");
  s.duration = asNumber(r.require("duration_s"), "duration_s");
  readNumber(r, "dt_s", s.dt);
  s.initial = parseState(r.require("initial_state"), "initial_state");
  {
    const Json& g = r.require("goal");
    ObjectReader gr(g, "goal");
    s.goalPrimitive = asString(gr.require("primitive"), "goal.primitive");
    if (const Json* a = gr.find("args")) s.goalArgs = asVector(*a, "goal.args");
    gr.finish();
  }
  if (const Json* v = r.find("disturbances")) {
    if (!v->is_array()) throw SchemaError("disturbances", "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      s.disturbances.push_back(parseDisturbance((*v)[i], "disturbances[" + std::to_string(i) + "]"));
    }
  }
  if (const Json* v = r.find("impulse_train"); v && !v->is_null()) {
    s.impulseTrain = parseImpulseTrain(*v, "impulse_train");
  }
  if (const Json* v = r.find("plant")) parsePlant(*v, "plant", s.plant);
  if (const Json* v = r.find("primitives")) {
    ObjectReader pr(*v, "primitives");
    for (const auto& id : {bench::kLie, bench::kStand, bench::kWalk, bench::kLand}) {
      if (const Json* t = pr.find(id)) {
        auto& tuning = tuningRef(s.plant, id);
        tuning = parseTuning(*t, pr.child(id), tuning);
      }
    }
    pr.finish();
  }
  if (const Json* v = r.find("search")) parseSearch(*v, "search", s.search);
  if (const Json* v = r.find("refine")) parseRefine(*v, "refine", s.refine);
  readInt(r, "parallel_searches", s.parallelSearches);
  if (const Json* v = r.find("cost")) {
    ObjectReader cr(*v, "cost");
    readIf(cr, "weights", s.cost.weights,
           [](const Json& w, const std::string& p) { return asArray<bench::kNumCoords>(w, p); });
    readNumber(cr, "switch_cost", s.cost.switchCost);
    cr.finish();
  }
  if (const Json* v = r.find("executive")) parseExec(*v, "executive", s.exec);
  if (const Json* v = r.find("output")) {
    ObjectReader orr(*v, "output");
    if (const Json* d = orr.find("dir")) f.outputDir = asString(*d, "output.dir");
    orr.finish();
  }
  r.finish();

  // Semantic checks, attributed to the section they come from.
  auto section = [](const std::string& key, auto&& check) {
    try {
      check();
    } catch (const SchemaError&) {
      throw;
    } catch (const ConfigInvalid& e) {
      throw SchemaError(key, e.what());
    }
  };
  section("plant", [&] { s.plant.validate(); });
  section("search", [&] { s.search.validate(); });
  section("refine", [&] { s.refine.validate(); });
  section("impulse_train", [&] { if (s.impulseTrain) s.impulseTrain->validate(); });
  section("goal", [&] {
    const auto reg = bench::buildBenchRegistry(s.plant);
    if (!reg.contains(s.goalPrimitive)) throw SchemaError("goal.primitive", "unknown primitive '" + s.goalPrimitive + "'");
    if (!reg.at(s.goalPrimitive).args.contains(s.goal().xi)) throw SchemaError("goal.args", "outside the primitive's argument domain");
    for (const auto* order : {&s.exec.fallbackGrounded, &s.exec.fallbackAirborne}) {
      for (const auto& id : *order) {
        if (!reg.contains(id) || reg.at(id).args.dimension() != 0) {
          throw SchemaError("executive", "fallback '" + id + "' must be a registered primitive without arguments");
        }
      }
    }
  });
  section("scenario", [&] { s.validate(); });
  return f;
}

inline ScenarioFile parseScenarioText(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("(document)", std::string("invalid JSON: ") + e.what());
  }
  return parseScenario(doc);
}

inline ScenarioFile loadScenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read scenario " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parseScenarioText(ss.str());
}

/// Full document with every field written out; infinite bounds become null.
inline Json scenarioToJson(const ScenarioFile& f) {
  using namespace detail;
  const auto& s = f.scenario;
  Json j;
  j["name"] = s.name;
  j["duration_s"] = s.duration;
  j["dt_s"] = s.dt;
  j["initial_state"] = exec::stateToJson(s.initial);
  j["goal"] = {{"primitive", s.goalPrimitive}, {"args", s.goalArgs}};
  Json ds = Json::array();
  for (const auto& d : s.disturbances) ds.push_back(disturbanceToJson(d));
  j["disturbances"] = std::move(ds);
  j["impulse_train"] = s.impulseTrain ? impulseTrainToJson(*s.impulseTrain) : Json(nullptr);
  j["plant"] = plantToJson(s.plant);
  j["primitives"] = {{bench::kLie, tuningToJson(s.plant.lie)},
                     {bench::kStand, tuningToJson(s.plant.stand)},
                     {bench::kWalk, tuningToJson(s.plant.walk)},
                     {bench::kLand, tuningToJson(s.plant.land)}};
  j["search"] = searchToJson(s.search);
  j["refine"] = refineToJson(s.refine);
  j["parallel_searches"] = s.parallelSearches;
  j["cost"] = {{"weights", s.cost.weights}, {"switch_cost", s.cost.switchCost}};
  j["executive"] = execToJson(s.exec);
  if (f.outputDir) j["output"] = {{"dir", *f.outputDir}};
  return j;
}

}  // namespace mpg::cli
