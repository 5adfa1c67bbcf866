#include "oamsort/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace oamsort {

namespace {

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ModeResult make_mode_result(ModeIndex m, const PortDistribution& dist) {
  ModeResult row;
  row.mode = m;
  for (const auto& [port, amp] : dist.amps)
    row.ports.push_back(PortEntry{port, std::norm(amp), amp});
  row.bright_port = dist.bright_port();
  row.total_power = dist.total_power();
  return row;
}

std::string report_to_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["engine"] = report.engine;
  j["depth"] = report.depth;
  if (report.frft_depth) j["frft_depth"] = *report.frft_depth;
  nlohmann::ordered_json overrides = nlohmann::ordered_json::array();
  for (const StageOverride& ov : report.overrides) {
    if (ov.rot_err == 0.0 && ov.phase_err == 0.0) continue;
    nlohmann::ordered_json o;
    o["kind"] = ov.kind == StageKind::oam ? "oam" : "frft";
    o["n"] = ov.n;
    o["k"] = ov.k;
    o["rot_err"] = ov.rot_err;
    o["phase_err"] = ov.phase_err;
    overrides.push_back(o);
  }
  j["stage_overrides"] = overrides;
  if (report.rand_err != 0.0) {
    j["rand_err"] = report.rand_err;
    j["seed"] = report.seed;
  }
  if (report.geometry) {
    j["geometry"] = {{"grid", report.geometry->grid_size},
                     {"waist", report.geometry->waist},
                     {"extent", report.geometry->extent}};
  }
  j["power_tolerance"] = report.power_tolerance;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ModeResult& row : report.rows) {
    nlohmann::ordered_json r;
    r["l"] = row.mode.l;
    r["p"] = row.mode.p;
    nlohmann::ordered_json ports = nlohmann::ordered_json::array();
    for (const PortEntry& entry : row.ports) {
      nlohmann::ordered_json e;
      e["port"] = entry.port.str();
      e["power"] = entry.power;
      if (entry.amp) {
        e["re"] = entry.amp->real();
        e["im"] = entry.amp->imag();
      }
      ports.push_back(e);
    }
    r["ports"] = ports;
    r["bright_port"] = row.bright_port.str();
    r["total_power"] = row.total_power;
    rows.push_back(r);
  }
  j["inputs"] = rows;
  j["max_power_deviation"] = report.max_power_deviation;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const RunReport& report) {
  std::string out = "l,p";
  if (report.rows.empty()) return out + "\n";
  for (const PortEntry& entry : report.rows.front().ports)
    out += ",port_" + entry.port.str();
  out += "\n";
  for (const ModeResult& row : report.rows) {
    out += std::to_string(row.mode.l) + "," + std::to_string(row.mode.p);
    for (const PortEntry& entry : row.ports) out += "," + g12(entry.power);
    out += "\n";
  }
  return out;
}

}  // namespace oamsort
