// Acceptance sweep: nine numbered criteria, one PASS/FAIL line each, exit
// code = number of failures. Tolerances are pinned here, not configurable.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oamsort/field_engine.hpp"
#include "oamsort/netlist.hpp"

using namespace oamsort;

namespace {

constexpr double kTolAnalytic = 1e-12;   // perfect-sorting and unitarity slack
constexpr double kTolDarkPort = 1e-20;   // single-stage dark port
constexpr double kTolGridMatch = 1e-2;   // grid vs analytic port powers
constexpr double kTolRotExact = 1e-12;   // quarter-turn eigenphase, L2
constexpr double kTolRotBilinear = 1e-2; // bilinear eigenphase, L2
constexpr double kMinPortPower = 0.99;   // grid tree, correct-port share
constexpr double kMixLo = 0.01, kMixHi = 0.99;  // detuned-stage power window

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

int wrap(long long l, int m) { return static_cast<int>(((l % m) + m) % m); }

double l2_distance(const Field& a, const Field& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i)
    acc += std::norm(a.samples[i] - b.samples[i]);
  return std::sqrt(acc * a.geom.cell_area());
}

// 1. Every l in [-16, 16) lands in port l mod 2^D with unit power, D = 1..4.
std::string perfect_sorting() {
  for (int depth = 1; depth <= 4; ++depth) {
    SorterTree tree = build_tree(depth);
    for (int l = -16; l < 16; ++l) {
      PortDistribution d = simulate_tree({l, 0}, tree);
      PortLabel want{wrap(l, 1 << depth), -1};
      if (std::abs(d.power(want) - 1.0) > kTolAnalytic)
        return fmt("l=%d D=%d bright power %.3e off unity", l, depth,
                   std::abs(d.power(want) - 1.0));
      for (const auto& [port, amp] : d.amps)
        if (port != want && std::norm(amp) > kTolAnalytic)
          return fmt("l=%d D=%d stray power %.3e at port %s", l, depth,
                     std::norm(amp), port.str().c_str());
    }
  }
  return "";
}

// 2. stage_transfer agrees with the residue rule; the dark port stays empty.
std::string branch_rule_fidelity() {
  for (int n = 0; n <= 3; ++n)
    for (int k = 0; k < (1 << n); ++k) {
      StageSpec s = make_oam_stage(n, k);
      for (int l = -16; l <= 16; ++l) {
        if (wrap(l - k, 1 << n) != 0) continue;
        StageOutput out = stage_transfer({l, 0}, s, {1, 0});
        bool keeps = wrap(l - k, 2 << n) == 0;
        if ((branch_predicate(l, s) == Branch::keep) != keeps)
          return fmt("predicate vs residue rule: n=%d k=%d l=%d", n, k, l);
        double dark = keeps ? std::norm(out.offset_amp) : std::norm(out.keep_amp);
        double bright = keeps ? std::norm(out.keep_amp) : std::norm(out.offset_amp);
        if (dark > kTolDarkPort)
          return fmt("dark port %.3e at n=%d k=%d l=%d", dark, n, k, l);
        if (std::abs(bright - 1.0) > kTolAnalytic)
          return fmt("bright port %.3e off unity at n=%d k=%d l=%d",
                     std::abs(bright - 1.0), n, k, l);
      }
    }
  return "";
}

// 3. Without the k*pi/2^n shifter, stage (2,3) mixes l=3 across both ports;
//    restoring it recovers full contrast.
std::string shifter_necessity() {
  StageSpec detuned = make_oam_stage(2, 3);
  detuned.shifter.phase = 0.0;
  StageOutput mixed = stage_transfer({3, 0}, detuned, {1, 0});
  double pk = std::norm(mixed.keep_amp), po = std::norm(mixed.offset_amp);
  if (pk <= kMixLo || pk >= kMixHi || po <= kMixLo || po >= kMixHi)
    return fmt("detuned stage not mixing: keep %.3f offset %.3f", pk, po);
  StageOutput tuned = stage_transfer({3, 0}, make_oam_stage(2, 3), {1, 0});
  if (std::abs(std::norm(tuned.keep_amp) - 1.0) > kTolAnalytic)
    return fmt("restored contrast %.3e off unity",
               std::abs(std::norm(tuned.keep_amp) - 1.0));
  return "";
}

// 4. Grid engine vs analytic: single stages at n = 0, 1 within 1e-2; a full
//    depth-2 grid tree puts >= 0.99 of the power in the analytic port.
std::string engine_cross_validation() {
  for (int n = 0; n <= 1; ++n)
    for (int k = 0; k < (1 << n); ++k) {
      StageSpec s = make_oam_stage(n, k);
      for (int l = -3; l <= 3; ++l) {
        auto [keep, offset] = simulate_stage_field({l, 0}, s);
        StageOutput want = stage_transfer({l, 0}, s, {1, 0});
        if (std::abs(keep.power() - std::norm(want.keep_amp)) > kTolGridMatch ||
            std::abs(offset.power() - std::norm(want.offset_amp)) > kTolGridMatch)
          return fmt("stage n=%d k=%d l=%d grid/analytic gap > %.0e", n, k, l,
                     kTolGridMatch);
      }
    }
  SorterTree tree = build_tree(2);
  for (int l = -3; l <= 3; ++l) {
    std::map<int, Field> ports = simulate_tree_field({l, 0}, tree);
    double share = ports.at(wrap(l, 4)).power();
    if (share < kMinPortPower)
      return fmt("depth-2 grid tree: l=%d port share %.4f", l, share);
  }
  return "";
}

// 5. rotate_field multiplies LG(l,0) by exp(i l theta): < 1e-2 bilinear,
//    < 1e-12 on the lossless quarter-turn path.
std::string rotation_eigenphase() {
  BeamGeometry g;
  for (int l = -3; l <= 3; ++l) {
    Field f = sample_lg({l, 0}, g);
    for (double theta : {M_PI / 4, M_PI / 2, M_PI}) {
      Field got = rotate_field(f, theta);
      Field want = f;
      for (Complex& c : want.samples) c *= std::polar(1.0, l * theta);
      double dist = l2_distance(got, want);
      double tol = theta == M_PI / 4 ? kTolRotBilinear : kTolRotExact;
      if (dist > tol)
        return fmt("l=%d theta=%.3f L2 %.3e > %.0e", l, theta, dist, tol);
    }
  }
  return "";
}

// 6. (1,0) and (1,1) share the OAM port at D=1 and separate under a
//    two-level FRFT extension into order ports 1 and 3.
std::string radial_degeneracy_lifting() {
  SorterTree flat = build_tree(1);
  PortLabel a = simulate_tree({1, 0}, flat).bright_port();
  PortLabel b = simulate_tree({1, 1}, flat).bright_port();
  if (a != b) return "degenerate modes separated without FRFT stages";
  ExtendedSorter lifted = append_frft_sorter(build_tree(1), 2);
  PortDistribution d0 = simulate_tree({1, 0}, lifted);
  PortDistribution d1 = simulate_tree({1, 1}, lifted);
  if (d0.bright_port() != PortLabel{1, 1} || d1.bright_port() != PortLabel{1, 3})
    return fmt("final ports %s and %s, want 1:1 and 1:3",
               d0.bright_port().str().c_str(), d1.bright_port().str().c_str());
  if (std::abs(d0.power({1, 1}) - 1.0) > kTolAnalytic ||
      std::abs(d1.power({1, 3}) - 1.0) > kTolAnalytic)
    return "lifted port power off unity beyond tolerance";
  return "";
}

// 7. A rotator offset delta on stage (0,0) leaks exactly sin^2(l delta / 2)
//    out of the correct port.
std::string crosstalk_closed_form() {
  for (double delta : {0.01, 0.05, 0.1})
    for (int l : {1, 2, 3}) {
      SorterTree tree = build_tree(3);
      tree.stage(0, 0).rotator.error = delta;
      PortDistribution d = simulate_tree({l, 0}, tree);
      double leaked = 1.0 - d.power({wrap(l, 8), -1});
      double want = std::pow(std::sin(l * delta / 2), 2);
      if (std::abs(leaked - want) > kTolAnalytic)
        return fmt("delta=%.2f l=%d leak %.3e, closed form %.3e", delta, l,
                   leaked, want);
    }
  return "";
}

// 8. 1000 seeded random error assignments on a depth-3 tree all conserve
//    total power to 1e-12.
std::string unitarity_under_errors() {
  std::mt19937_64 gen(20240817);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  SorterTree tree = build_tree(3);
  for (int trial = 0; trial < 1000; ++trial) {
    for (StageSpec& s : tree.stages) {
      s.rotator.error = u(gen);
      s.shifter.error = u(gen);
    }
    int l = trial % 17 - 8;
    double total = simulate_tree({l, 0}, tree).total_power();
    if (std::abs(total - 1.0) > kTolAnalytic)
      return fmt("trial %d l=%d total power %.3e off unity", trial, l,
                 std::abs(total - 1.0));
  }
  return "";
}

// 9. Golden corpus round-trips, invalid corpus diagnoses, and the CLI's
//    JSON/CSV payloads are byte-identical across consecutive runs.
std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string capture(const std::string& args, int& status) {
  std::string cmd = std::string(OAMSORT_TOOL) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  int rc = pclose(pipe);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

std::string parser_and_byte_stability() {
  namespace fs = std::filesystem;
  const fs::path root{OAMSORT_DATA_DIR};
  int valid = 0, invalid = 0;
  for (const auto& e : fs::directory_iterator(root / "valid")) {
    if (e.path().extension() != ".nl") continue;
    ++valid;
    Netlist nl;
    try {
      nl = parse_netlist(slurp(e.path()));
    } catch (const NetlistParseError& err) {
      return e.path().filename().string() + " rejected: " + err.what();
    }
    std::string canon = format_netlist(nl);
    if (format_netlist(parse_netlist(canon)) != canon)
      return e.path().filename().string() + " round-trip not a fixed point";
  }
  for (const auto& e : fs::directory_iterator(root / "invalid")) {
    if (e.path().extension() != ".nl") continue;
    ++invalid;
    std::string text = slurp(e.path());
    std::string want = text.substr(10, text.find('\n') - 10);
    try {
      parse_netlist(text);
      return e.path().filename().string() + " unexpectedly parsed";
    } catch (const NetlistParseError& err) {
      if (std::string(err.what()).find(want) == std::string::npos)
        return e.path().filename().string() + " diagnostic '" + err.what() +
               "' missing '" + want + "'";
    }
  }
  if (valid < 10 || invalid < 10)
    return fmt("corpus too small: %d valid, %d invalid", valid, invalid);

  for (const char* args :
       {"simulate %s/valid/v03_depth3_override.nl --l -8..8 --format json",
        "simulate %s/valid/v03_depth3_override.nl --l -8..8 --format csv",
        "simulate %s/valid/v05_frft.nl --p 0..1 --format json"}) {
    std::string cmd = fmt(args, OAMSORT_DATA_DIR);
    int st1 = 0, st2 = 0;
    std::string first = capture(cmd, st1);
    std::string second = capture(cmd, st2);
    if (st1 != 0 || st2 != 0) return fmt("CLI exited %d/%d: %s", st1, st2, cmd.c_str());
    if (first.empty() || first != second)
      return "CLI output not byte-stable: " + cmd;
  }
  return "";
}

struct Criterion {
  const char* name;
  double budget_ms;
  std::function<std::string()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"perfect sorting, l in [-16,16) x depth 1..4", 1000, perfect_sorting},
      {"branch-rule fidelity, stages to level 3", 1000, branch_rule_fidelity},
      {"phase-shifter necessity at stage (2,3)", 1000, shifter_necessity},
      {"engine cross-validation on a 256^2 grid", 30000, engine_cross_validation},
      {"rotation eigenphase, bilinear and quarter-turn", 10000, rotation_eigenphase},
      {"radial degeneracy lifted by frft_depth=2", 1000, radial_degeneracy_lifting},
      {"crosstalk closed form sin^2(l delta / 2)", 1000, crosstalk_closed_form},
      {"unitarity across 1000 random error draws", 5000, unitarity_under_errors},
      {"parser corpus and byte-stable reports", 30000, parser_and_byte_stability},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    std::string detail = c.run();
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (detail.empty() && ms > c.budget_ms)
      detail = fmt("over budget: %.0f ms > %.0f ms", ms, c.budget_ms);
    if (detail.empty()) {
      std::printf("PASS  %d. %s (%.1f ms)\n", index, c.name, ms);
    } else {
      std::printf("FAIL  %d. %s (%.1f ms): %s\n", index, c.name, ms,
                  detail.c_str());
      ++failures;
    }
  }
  return failures;
}
