// Command-line surface: build and inspect sorter trees from netlists, run the
// analytic and grid engines, emit routing and crosstalk reports.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "oamsort/field_engine.hpp"
#include "oamsort/report.hpp"

namespace {

using namespace oamsort;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitGuard = 3;

// "3", "-2" or inclusive ranges "a..b".
std::vector<int> parse_index_list(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const std::string& item : items) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stoi(item));
      continue;
    }
    int lo = std::stoi(item.substr(0, dots));
    int hi = std::stoi(item.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read netlist file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write to '" + out_path + "'");
  out << text;
}

// Uniform draw in [-sigma, sigma] from raw 53-bit mantissas, so sweeps are
// reproducible independent of the standard library's distribution code.
double uniform_err(std::mt19937_64& gen, double sigma) {
  double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
  return sigma * (2.0 * u - 1.0);
}

void add_random_errors(ExtendedSorter& sorter, double sigma,
                       std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (StageSpec& s : sorter.oam_tree.stages) {
    s.rotator.error += uniform_err(gen, sigma);
    s.shifter.error += uniform_err(gen, sigma);
  }
  for (StageSpec& s : sorter.frft_stages) {
    s.frft.error += uniform_err(gen, sigma);
    s.shifter.error += uniform_err(gen, sigma);
  }
}

std::string render(const RunReport& report, const std::string& format) {
  return format == "csv" ? report_to_csv(report) : report_to_json(report);
}

int cmd_route(int l, int depth, const std::string& format,
              const std::string& out_path) {
  SorterTree tree = build_tree(depth);
  PortDistribution dist = simulate_tree(ModeIndex{l, 0}, tree);

  if (format.empty()) {
    PortLabel bright = dist.bright_port();
    char line[128];
    std::printf("l = %d, depth = %d\n", l, depth);
    std::snprintf(line, sizeof(line), "port %s, power %.12f\n",
                  bright.str().c_str(), dist.power(bright));
    std::fputs(line, stdout);
    std::printf("per-port powers:\n");
    for (const auto& [port, amp] : dist.amps)
      std::printf("  %s: %.12g\n", port.str().c_str(), std::norm(amp));
    return 0;
  }

  RunReport report;
  report.engine = "analytic";
  report.depth = depth;
  report.rows.push_back(make_mode_result(ModeIndex{l, 0}, dist));
  report.max_power_deviation = std::abs(report.rows[0].total_power - 1.0);
  write_output(out_path, render(report, format));
  return 0;
}

struct SimulateOptions {
  std::string netlist_path;
  std::vector<std::string> l_items;
  std::vector<std::string> p_items;
  int frft_depth = 0;
  std::string engine = "analytic";
  int grid = 256;
  double waist = 1.0;
  double extent = 8.0;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  double rand_err = 0.0;
  bool force = false;
};

int cmd_simulate(const SimulateOptions& opt) {
  Netlist nl = parse_netlist(read_file(opt.netlist_path));
  if (opt.frft_depth > 0) {
    if (nl.frft_depth && *nl.frft_depth != opt.frft_depth)
      throw std::invalid_argument(
          "--frft-depth conflicts with the netlist's frft_depth");
    nl.frft_depth = opt.frft_depth;
  }
  ExtendedSorter sorter = sorter_from_netlist(nl);
  if (opt.rand_err != 0.0) add_random_errors(sorter, opt.rand_err, opt.seed);

  std::vector<int> ls = opt.l_items.empty()
                            ? std::vector<int>{}
                            : parse_index_list(opt.l_items);
  if (ls.empty())
    for (int l = 0; l < sorter.oam_tree.port_count(); ++l) ls.push_back(l);
  std::vector<int> ps = opt.p_items.empty() ? std::vector<int>{0}
                                            : parse_index_list(opt.p_items);

  RunReport report;
  report.engine = opt.engine;
  report.depth = sorter.oam_tree.depth;
  if (sorter.frft_depth > 0) report.frft_depth = sorter.frft_depth;
  report.overrides = nl.overrides;
  report.rand_err = opt.rand_err;
  report.seed = opt.seed;

  const bool field = opt.engine == "field";
  if (field && sorter.frft_depth > 0)
    throw UnsupportedError(
        "field engine cannot simulate frft stages; use --engine analytic");
  BeamGeometry geom;
  if (field) {
    geom = make_geometry(opt.waist, opt.grid, opt.extent,
                         opt.force ? 0.0 : 6.0);
    report.geometry = geom;
    report.power_tolerance = 1e-2;
  }

  auto start = std::chrono::steady_clock::now();
  for (int p : ps) {
    for (int l : ls) {
      if (p < 0) throw std::invalid_argument("p must be >= 0");
      ModeIndex m{l, p};
      if (field && !opt.force && (std::abs(l) > 3 || p > 2))
        throw UnsupportedError(
            "field engine supports |l| <= 3 and p <= 2 by default; "
            "pass --force to override");
      ModeResult row;
      if (field) {
        std::map<int, Field> ports = simulate_tree_field(m, sorter.oam_tree, geom);
        row.mode = m;
        double best = -1.0;
        for (const auto& [port, out_field] : ports) {
          double power = out_field.power();
          row.ports.push_back(PortEntry{PortLabel{port, -1}, power, {}});
          row.total_power += power;
          if (power > best) {
            best = power;
            row.bright_port = PortLabel{port, -1};
          }
        }
      } else {
        row = make_mode_result(m, simulate_tree(m, sorter));
      }
      report.max_power_deviation = std::max(
          report.max_power_deviation, std::abs(row.total_power - 1.0));
      report.rows.push_back(std::move(row));
    }
  }
  auto stop = std::chrono::steady_clock::now();
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  std::fprintf(stderr, "simulate: %zu modes, engine=%s, %.1f ms\n",
               report.rows.size(), report.engine.c_str(), report.elapsed_ms);

  if (report.max_power_deviation > report.power_tolerance) {
    std::fprintf(stderr,
                 "error: total power deviates by %g (tolerance %g)\n",
                 report.max_power_deviation, report.power_tolerance);
    return kExitGuard;
  }
  write_output(opt.out_path, render(report, opt.format));
  return 0;
}

int cmd_check(const std::string& path) {
  Netlist nl = parse_netlist(read_file(path));
  std::printf("ok: depth=%d frft_depth=%s overrides=%zu\n", nl.depth,
              nl.frft_depth ? std::to_string(*nl.frft_depth).c_str() : "-",
              nl.overrides.size());
  return 0;
}

int cmd_dump_field(int l, int p, int grid, double waist, double extent,
                   bool force, const std::string& out_path) {
  BeamGeometry geom = make_geometry(waist, grid, extent, force ? 0.0 : 6.0);
  Field f = sample_lg(ModeIndex{l, p}, geom);
  std::ostringstream ss;
  write_field_dump(ss, f);
  write_output(out_path, ss.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Converter-free OAM mode sorter: binary trees of modified "
               "Mach-Zehnder stages (beam rotator + tunable phase shifter), "
               "with an optional FRFT extension for the radial order"};
  app.require_subcommand(1);

  // route
  auto* route_cmd = app.add_subcommand("route", "Route one OAM index through a default tree");
  int route_l = 0, route_depth = 1;
  std::string route_format, route_out;
  route_cmd->add_option("--l", route_l, "OAM index l")->required();
  route_cmd->add_option("--depth", route_depth, "tree depth D")->required();
  route_cmd->add_option("--format", route_format, "json|csv (default: plain text)")
      ->check(CLI::IsMember({"json", "csv"}));
  route_cmd->add_option("--out", route_out, "output file (default stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a netlist over a sweep of input modes");
  SimulateOptions opt;
  sim_cmd->add_option("netlist", opt.netlist_path, "netlist file")->required();
  sim_cmd->add_option("--l", opt.l_items,
                      "input l values or ranges a..b (default: one per port)");
  sim_cmd->add_option("--p", opt.p_items, "input p values or ranges (default: 0)");
  sim_cmd->add_option("--frft-depth", opt.frft_depth,
                      "attach an FRFT extension when the netlist has none");
  sim_cmd->add_option("--engine", opt.engine, "analytic|field")
      ->check(CLI::IsMember({"analytic", "field"}));
  sim_cmd->add_option("--grid", opt.grid, "field engine samples per side");
  sim_cmd->add_option("--waist", opt.waist, "beam waist");
  sim_cmd->add_option("--extent", opt.extent, "grid physical width");
  sim_cmd->add_option("--format", opt.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sim_cmd->add_option("--out", opt.out_path, "output file (default stdout)");
  sim_cmd->add_option("--seed", opt.seed, "seed for randomized error sweeps");
  sim_cmd->add_option("--rand-err", opt.rand_err,
                      "add uniform [-x, x] errors to every stage");
  sim_cmd->add_flag("--force", opt.force, "lift the field-engine mode range guard");

  // check
  auto* check_cmd = app.add_subcommand("check", "Validate a netlist");
  std::string check_path;
  check_cmd->add_option("netlist", check_path, "netlist file")->required();

  // dump-field
  auto* dump_cmd = app.add_subcommand("dump-field", "Write a sampled LG mode grid");
  int dump_l = 0, dump_p = 0, dump_grid = 256;
  double dump_waist = 1.0, dump_extent = 8.0;
  bool dump_force = false;
  std::string dump_out;
  dump_cmd->add_option("--l", dump_l, "OAM index l");
  dump_cmd->add_option("--p", dump_p, "radial index p");
  dump_cmd->add_option("--grid", dump_grid, "samples per side");
  dump_cmd->add_option("--waist", dump_waist, "beam waist");
  dump_cmd->add_option("--extent", dump_extent, "grid physical width");
  dump_cmd->add_flag("--force", dump_force, "skip the extent/waist ratio check");
  dump_cmd->add_option("--out", dump_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (route_cmd->parsed())
      return cmd_route(route_l, route_depth, route_format, route_out);
    if (sim_cmd->parsed()) return cmd_simulate(opt);
    if (check_cmd->parsed()) return cmd_check(check_path);
    if (dump_cmd->parsed())
      return cmd_dump_field(dump_l, dump_p, dump_grid, dump_waist, dump_extent,
                            dump_force, dump_out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const oamsort::NetlistParseError& e) {
    std::fprintf(stderr, "netlist error: %s\n", e.what());
    return kExitParse;
  } catch (const oamsort::ModeTruncatedError& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return kExitGuard;
  } catch (const oamsort::UnsupportedError& e) {
    std::fprintf(stderr, "numerical guard: %s\n", e.what());
    return kExitGuard;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
