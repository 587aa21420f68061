#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpg/core/format.hpp"
#include "mpg/exec/run_trace.hpp"

namespace mpg::exec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTraceCsvHeader =
    "tick,t_s,h_m,thx_rad,thy_rad,thz_rad,px_m,py_m,vx_mps,vy_mps,vz_mps,contacts,active,xi,"
    "plan_id,edge,replanning,violation,error,events";
inline constexpr int kTraceCsvColumns = 20;
inline constexpr int kTracePrecision = 10;

inline void writeTraceCsv(std::ostream& os, const RunTrace& trace) {
  os << kTraceCsvHeader << '\n';
  for (const auto& r : trace.ticks) {
    os << r.tick << ',' << formatDouble(r.t, kTracePrecision);
    const Vector c = r.x.coords();
    for (Eigen::Index i = 0; i < c.size(); ++i) os << ',' << formatDouble(c[i], kTracePrecision);
    os << ',' << bench::contactString(r.x.contacts) << ',' << (r.active.empty() ? "idle" : r.active)
       << ',' << joinVector(r.xi, ';', kTracePrecision) << ',' << r.planId << ',' << r.edge << ','
       << (r.replanning ? 1 : 0) << ',' << (r.violation ? 1 : 0) << ','
       << formatDouble(r.error, kTracePrecision) << ',' << r.events << '\n';
  }
}

inline Json stateToJson(const bench::PlantState& x) {
  Json j;
  j["h_m"] = x.h;
  j["theta_rad"] = {x.theta[0], x.theta[1], x.theta[2]};
  j["p_m"] = {x.p[0], x.p[1]};
  j["v_mps"] = {x.v[0], x.v[1]};
  j["vz_mps"] = x.vz;
  j["contacts"] = {x.contacts[0], x.contacts[1], x.contacts[2], x.contacts[3]};
  return j;
}

inline Json vectorToJson(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

inline Json planToJson(const PlanRecord& p) {
  Json j;
  j["id"] = p.id;
  j["request_tick"] = p.requestTick;
  j["deliver_tick"] = p.deliverTick;
  j["seed"] = p.seed;
  j["status"] = toString(p.status);
  j["outcome"] = p.outcome;
  j["compute_ms"] = p.computeMs;
  j["snapshot"] = stateToJson(p.snapshot);
  if (p.path) {
    j["raw_cost"] = p.rawCost;
    j["total_cost"] = p.path->totalCost;
    Json edges = Json::array();
    for (const auto& e : p.path->edges) {
      Json je;
      je["primitive"] = e.primitiveId;
      je["xi"] = vectorToJson(e.xi);
      je["t0_s"] = e.t0;
      je["dt_s"] = e.dt;
      je["state"] = stateToJson(e.state);
      edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
  }
  return j;
}

inline Json plansToJson(const RunTrace& trace) {
  Json j;
  j["scenario"] = trace.scenario;
  Json plans = Json::array();
  for (const auto& p : trace.plans) plans.push_back(planToJson(p));
  j["plans"] = std::move(plans);
  return j;
}

inline Json summaryToJson(const RunTrace& trace) {
  const auto& s = trace.summary;
  Json j;
  j["scenario"] = trace.scenario;
  j["mode"] = trace.mode;
  j["latency_ticks"] = trace.latencyTicks;
  j["dt_s"] = trace.dt;
  j["ticks"] = trace.ticks.empty() ? 0 : trace.ticks.back().tick;
  j["goal_reached"] = s.goalReached;
  j["goal_reached_time_s"] = s.goalReachedTime ? Json(*s.goalReachedTime) : Json(nullptr);
  j["plan_requests"] = s.planRequests;
  j["replan_count"] = s.replanCount;
  j["max_deviation"] = s.maxDeviation;
  j["violation_ticks"] = s.violationTicks;
  j["final_primitive"] = s.finalPrimitive;
  j["final_error"] = s.finalError;
  j["failures"] = s.failures;
  j["wall_s"] = s.wallSeconds;
  Json acts = Json::array();
  for (const auto& a : trace.activations) {
    Json ja;
    ja["tick"] = a.tick;
    ja["t_s"] = a.t;
    ja["primitive"] = a.primitive;
    ja["xi"] = vectorToJson(a.xi);
    ja["reason"] = a.reason;
    ja["plan_id"] = a.planId;
    ja["edge"] = a.edge;
    acts.push_back(std::move(ja));
  }
  j["activations"] = std::move(acts);
  return j;
}

/// Writes trace.csv, plans.json and summary.json into `dir`, creating it.
inline void writeRunOutputs(const std::filesystem::path& dir, const RunTrace& trace) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("trace.csv");
    writeTraceCsv(f, trace);
  }
  open("plans.json") << plansToJson(trace).dump(2) << '\n';
  open("summary.json") << summaryToJson(trace).dump(2) << '\n';
}

/// One parsed row of trace.csv.
struct TraceRow {
  int tick = 0;
  double t = 0.0;
  std::array<double, bench::kNumCoords> coords{};
  std::string contacts;
  std::string active;
  int planId = -1;
  bool replanning = false;
  bool violation = false;
  double error = 0.0;
  std::string events;
};

/// Parses trace.csv. Throws std::runtime_error on a missing file, a wrong
/// header, a malformed row or an empty trace.
inline std::vector<TraceRow> readTraceCsv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("missing trace file " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw std::runtime_error("unexpected trace header in " + file.string());
  }
  std::vector<TraceRow> rows;
  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (!line.empty() && line.back() == ',') cols.emplace_back();
    if (static_cast<int>(cols.size()) != kTraceCsvColumns) {
      throw std::runtime_error("trace line " + std::to_string(lineNo) + ": expected " +
                               std::to_string(kTraceCsvColumns) + " columns");
    }
    try {
      TraceRow r;
      r.tick = std::stoi(cols[0]);
      r.t = std::stod(cols[1]);
      for (int i = 0; i < bench::kNumCoords; ++i) r.coords[i] = std::stod(cols[2 + i]);
      r.contacts = cols[11];
      r.active = cols[12];
      r.planId = std::stoi(cols[14]);
      r.replanning = cols[16] == "1";
      r.violation = cols[17] == "1";
      r.error = std::stod(cols[18]);
      r.events = cols[19];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error("trace line " + std::to_string(lineNo) + ": malformed number");
    }
  }
  if (rows.empty()) throw std::runtime_error("empty trace " + file.string());
  return rows;
}

}  // namespace mpg::exec
