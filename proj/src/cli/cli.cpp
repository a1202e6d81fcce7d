// Copyright 2026 The hflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hflow/cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hflow/common/error.hpp"
#include "hflow/dataflow/analysis.hpp"
#include "hflow/dataflow/graph_json.hpp"
#include "hflow/guidance/rules.hpp"
#include "hflow/himeno/field_io.hpp"
#include "hflow/himeno/solver.hpp"
#include "hflow/scenarios/catalog.hpp"
#include "hflow/scenarios/himeno_graph.hpp"
#include "hflow/scenarios/ladder.hpp"
#include "hflow/sim/profile_csv.hpp"
#include "hflow/sim/simulator.hpp"

namespace hflow::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Optional JSON config: {"thresholds": {...}, "calibration": {...}}.
struct ConfigFile {
  guidance::Thresholds thresholds;
  std::optional<std::int64_t> access_latency_cycles;
  std::optional<std::int64_t> overhead_beats;
  std::optional<double> steady_cycles_per_item;

  scenarios::Calibration calibration() const {
    scenarios::Calibration c;
    if (access_latency_cycles) c.access_latency_cycles = *access_latency_cycles;
    if (overhead_beats) c.overhead_beats = *overhead_beats;
    if (steady_cycles_per_item) c.steady_cycles_per_item = *steady_cycles_per_item;
    return c;
  }

  void apply(dataflow::PipelineGraph& g) const {
    if (access_latency_cycles) g.memory.access_latency_cycles = *access_latency_cycles;
    if (overhead_beats) g.memory.overhead_beats = *overhead_beats;
    if (steady_cycles_per_item) g.steady_cycles_per_item = *steady_cycles_per_item;
  }
};

ConfigFile load_config(const std::string& path) {
  ConfigFile c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected an object");
  for (const auto& [k, v] : j.items()) {
    if (k == "thresholds") {
      c.thresholds = guidance::thresholds_from_json(v);
    } else if (k == "calibration") {
      if (!v.is_object()) throw ParseError("config: calibration must be an object");
      for (const auto& [ck, cv] : v.items()) {
        if (!cv.is_number()) throw ParseError("config: calibration '" + ck + "' must be a number");
        if (ck == "access_latency_cycles" && cv.is_number_integer()) {
          c.access_latency_cycles = cv.get<std::int64_t>();
        } else if (ck == "overhead_beats" && cv.is_number_integer()) {
          c.overhead_beats = cv.get<std::int64_t>();
        } else if (ck == "steady_cycles_per_item") {
          c.steady_cycles_per_item = cv.get<double>();
        } else {
          throw ParseError("config: bad calibration key '" + ck + "'");
        }
      }
    } else {
      throw ParseError("config: unknown key '" + k + "'");
    }
  }
  return c;
}

struct Manifest {
  std::string command;
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  bool wall_clock = false;
};

std::string timestamp(bool wall_clock) {
  if (!wall_clock) return "1970-01-01T00:00:00Z";
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

// Written next to the first output as <output>.manifest.json.
void write_manifest(const Manifest& m, const std::string& explicit_path) {
  if (m.outputs.empty() && explicit_path.empty()) return;
  ordered_json j;
  j["command"] = m.command;
  j["config_path"] = m.config_path.empty() ? ordered_json(nullptr) : ordered_json(m.config_path);
  j["seed"] = m.seed;
  j["outputs"] = m.outputs;
  j["tool_version"] = kToolVersion;
  j["timestamp"] = timestamp(m.wall_clock);
  const fs::path path = explicit_path.empty() ? fs::path(m.outputs.front() + ".manifest.json") : fs::path(explicit_path);
  write_text(path, j.dump(2) + "\n");
}

std::string join(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

std::string float_text(float x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string sci_text(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  return std::string(buf, r.ptr);
}

std::vector<float> read_oracle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open oracle " + path);
  std::vector<float> v;
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    line = line.substr(start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    float x = 0;
    const auto r = std::from_chars(line.data(), line.data() + line.size(), x);
    if (r.ec != std::errc() || r.ptr != line.data() + line.size()) {
      throw ParseError("oracle " + path + ": bad value '" + line + "'");
    }
    v.push_back(x);
  }
  return v;
}

struct HimenoArgs {
  std::size_t nx = 0, ny = 0, nz = 0;
  int iters = 1;
  std::string oracle, dump, kernel = "auto", manifest;
  unsigned threads = 1;
  std::size_t gosa_width = himeno::kDefaultGosaWidth;
  bool no_timing = false;
  bool wall_clock = false;
};

int himeno_run(const HimenoArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  const auto dims = himeno::make_dims(a.nx, a.ny, a.nz);
  if (a.iters < 1) throw InvalidArgument("--iters must be >= 1");
  if (a.threads < 1) throw InvalidArgument("--threads must be >= 1");
  if (a.gosa_width < 1) throw InvalidArgument("--gosa-width must be >= 1");
  himeno::SweepOptions opts;
  if (a.kernel != "auto") {
    const auto isa = himeno::parse_isa(a.kernel);
    if (!isa) throw InvalidArgument("unknown kernel '" + a.kernel + "'");
    if (!himeno::isa_supported(*isa)) throw InvalidArgument("kernel '" + a.kernel + "' not supported here");
    opts.isa = *isa;
  }
  opts.threads = a.threads;
  opts.gosa_width = a.gosa_width;
  std::vector<float> expected;
  if (!a.oracle.empty()) expected = read_oracle(a.oracle);

  himeno::HimenoProblem final_state;
  const auto r = himeno::run_benchmark(dims, a.iters, opts, a.dump.empty() ? nullptr : &final_state);

  out << "grid " << dims.nx << " x " << dims.ny << " x " << dims.nz << ", " << dims.interior_cells()
      << " interior cells, " << a.iters << " iterations, kernel " << himeno::to_string(opts.isa) << "\n";
  for (std::size_t i = 0; i < r.gosa_trace.size(); ++i) {
    out << "iteration " << (i + 1) << " gosa " << float_text(r.gosa_trace[i]) << "\n";
  }
  const auto flops = himeno::total_flops(dims, static_cast<std::uint64_t>(a.iters));
  out << "total flops " << flops << " (" << sci_text(static_cast<double>(flops)) << ")\n";
  if (!a.no_timing) {
    out << "elapsed_seconds " << sim::format_real(r.elapsed_seconds) << "\n";
    out << "mflops " << sim::format_real(r.mflops) << "\n";
  }

  Manifest m;
  m.command = "hflow " + join(argv);
  m.wall_clock = a.wall_clock;
  if (!a.dump.empty()) {
    fs::create_directories(a.dump);
    auto dump = [&](const std::string& name, const himeno::Field& f) {
      const fs::path p = fs::path(a.dump) / (name + ".bin");
      himeno::write_field(p, name, f);
      m.outputs.push_back(p.string());
    };
    for (int i = 0; i < 4; ++i) dump("a" + std::to_string(i), final_state.a[i]);
    for (int i = 0; i < 3; ++i) dump("b" + std::to_string(i), final_state.b[i]);
    for (int i = 0; i < 3; ++i) dump("c" + std::to_string(i), final_state.c[i]);
    dump("p", final_state.p);
    dump("wrk1", final_state.wrk1);
    dump("bnd", final_state.bnd);
    dump("wrk2", final_state.wrk2);
  }
  write_manifest(m, a.manifest);

  if (!a.oracle.empty()) {
    if (expected.size() != r.gosa_trace.size()) {
      err << "oracle has " << expected.size() << " values, run produced " << r.gosa_trace.size() << "\n";
      out << "oracle mismatch\n";
      return kExitMismatch;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const double e = expected[i];
      const double rel = e == 0.0 ? std::abs(static_cast<double>(r.gosa_trace[i]))
                                  : std::abs(static_cast<double>(r.gosa_trace[i]) - e) / std::abs(e);
      worst = std::max(worst, rel);
    }
    const bool ok = worst <= 1e-5;
    out << "oracle " << (ok ? "match" : "mismatch") << ", max relative error " << sim::format_real(worst) << "\n";
    if (!ok) return kExitMismatch;
  }
  return kExitOk;
}

struct DimsArgs {
  std::size_t nx = 34, ny = 34, nz = 66;
};

struct SimRunArgs {
  std::string scenario, graph, out_csv, guidance_txt, guidance_json, config, manifest;
  std::uint64_t seed = 0;
  std::uint64_t iters = 1;
  std::int64_t items = -1;
  bool no_replay = false;
  bool wall_clock = false;
  DimsArgs dims;
};

int sim_run(const SimRunArgs& a, const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  const ConfigFile cfg = load_config(a.config);
  if (a.scenario.empty() == a.graph.empty()) throw InvalidArgument("give exactly one of --scenario or --graph");

  dataflow::PipelineGraph g;
  if (!a.scenario.empty()) {
    const auto* s = scenarios::find_scenario(a.scenario);
    if (!s) throw InvalidArgument("unknown scenario '" + a.scenario + "'");
    scenarios::KernelConfig kc = s->config;
    scenarios::apply(cfg.calibration(), kc);
    g = scenarios::build_himeno_graph(kc, himeno::make_dims(a.dims.nx, a.dims.ny, a.dims.nz), s->name);
  } else {
    g = dataflow::load_graph(a.graph);
    cfg.apply(g);
  }
  dataflow::require_valid(g);

  std::uint64_t items = 0;
  if (a.items >= 0) {
    items = static_cast<std::uint64_t>(a.items);
  } else if (const auto* c = g.find_stage(g.compute_stage)) {
    items = static_cast<std::uint64_t>(c->items);
  }

  sim::SimOptions so;
  so.seed = a.seed;
  so.replay_iterations = !a.no_replay;
  sim::SimProfile p;
  try {
    p = sim::simulate_iterations(g, items, a.iters, so);
  } catch (const DeadlockError& e) {
    err << "deadlock at cycle " << e.cycle() << "; blocked:\n";
    for (const auto& b : e.blocked()) err << "  " << b << "\n";
    return kExitDeadlock;
  }
  const auto findings = guidance::run_rules(g, p, cfg.thresholds);
  const auto t = dataflow::analytic_throughput(g);

  out << "graph " << g.name << "\n";
  out << "items " << items << " x " << a.iters << " iterations\n";
  out << "total_cycles " << p.total_cycles << "\n";
  out << "achieved_mflops " << sim::format_real(p.achieved_mflops) << "\n";
  out << "memory_stall_fraction " << sim::format_real(p.memory_stall_fraction) << "\n";
  out << "steady_items_per_second " << sim::format_real(p.steady_items_per_second) << "\n";
  out << "analytic_items_per_second " << sim::format_real(t.items_per_second) << " (" << dataflow::to_string(t.kind)
      << " " << t.bottleneck << ")\n";
  for (const auto& w : dataflow::capacity_warnings(g)) out << "capacity warning: " << w << "\n";
  out << "guidance:\n" << guidance::format_text(findings);

  Manifest m;
  m.command = "hflow " + join(argv);
  m.config_path = a.config;
  m.seed = a.seed;
  m.wall_clock = a.wall_clock;
  if (!a.out_csv.empty()) {
    sim::write_profile_csv(a.out_csv, p);
    m.outputs.push_back(a.out_csv);
  }
  if (!a.guidance_txt.empty()) {
    write_text(a.guidance_txt, guidance::format_text(findings));
    m.outputs.push_back(a.guidance_txt);
  }
  if (!a.guidance_json.empty()) {
    write_text(a.guidance_json, guidance::to_json(findings).dump(2) + "\n");
    m.outputs.push_back(a.guidance_json);
  }
  write_manifest(m, a.manifest);
  return kExitOk;
}

struct LadderArgs {
  DimsArgs dims;
  std::uint64_t iters = 1;
  std::string csv, config, manifest;
  std::optional<double> freq_override;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool wall_clock = false;
};

int sim_ladder(const LadderArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  const ConfigFile cfg = load_config(a.config);
  scenarios::LadderOptions o;
  o.calibration = cfg.calibration();
  o.freq_override = a.freq_override;
  o.seed = a.seed;
  o.threads = std::max(1u, a.threads);
  if (a.freq_override && !(*a.freq_override > 0)) throw InvalidArgument("--freq-override must be > 0");
  const auto rows = scenarios::ladder(himeno::make_dims(a.dims.nx, a.dims.ny, a.dims.nz), a.iters, o);
  out << scenarios::format_ladder(rows);
  Manifest m;
  m.command = "hflow " + join(argv);
  m.config_path = a.config;
  m.seed = a.seed;
  m.wall_clock = a.wall_clock;
  if (!a.csv.empty()) {
    write_text(a.csv, scenarios::ladder_csv(rows));
    m.outputs.push_back(a.csv);
  }
  write_manifest(m, a.manifest);
  return kExitOk;
}

struct ExportArgs {
  DimsArgs dims;
  std::string dir = ".";
  std::string scenario;
};

int sim_export(const ExportArgs& a, std::ostream& out) {
  const auto dims = himeno::make_dims(a.dims.nx, a.dims.ny, a.dims.nz);
  fs::create_directories(a.dir);
  for (const auto& s : scenarios::catalog()) {
    if (!a.scenario.empty() && s.name != a.scenario) continue;
    const fs::path p = fs::path(a.dir) / (s.name + ".json");
    dataflow::save_graph(p, scenarios::build_himeno_graph(s.config, dims, s.name));
    out << "wrote " << p.string() << "\n";
  }
  if (!a.scenario.empty() && !scenarios::find_scenario(a.scenario)) {
    throw InvalidArgument("unknown scenario '" + a.scenario + "'");
  }
  if (a.scenario.empty()) {
    const fs::path p = fs::path(a.dir) / "catalog.json";
    write_text(p, scenarios::catalog_json().dump(2) + "\n");
    out << "wrote " << p.string() << "\n";
  }
  return kExitOk;
}

void add_dims(CLI::App* app, DimsArgs& d) {
  app->add_option("--nx", d.nx, "grid points along x")->capture_default_str();
  app->add_option("--ny", d.ny, "grid points along y")->capture_default_str();
  app->add_option("--nz", d.nz, "grid points along z")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Himeno benchmark and dataflow kernel performance model", "hflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto* himeno_cmd = app.add_subcommand("himeno", "functional Himeno benchmark");
  himeno_cmd->require_subcommand(1);
  HimenoArgs ha;
  auto* hrun = himeno_cmd->add_subcommand("run", "run the point-Jacobi benchmark");
  hrun->add_option("--nx", ha.nx, "grid points along x")->required();
  hrun->add_option("--ny", ha.ny, "grid points along y")->required();
  hrun->add_option("--nz", ha.nz, "grid points along z")->required();
  hrun->add_option("--iters", ha.iters, "iterations")->required();
  hrun->add_option("--oracle", ha.oracle, "file of expected gosa values, one per line");
  hrun->add_option("--dump", ha.dump, "directory for the final field dumps");
  hrun->add_option("--kernel", ha.kernel, "row kernel: auto, scalar, sse2 or avx2")->capture_default_str();
  hrun->add_option("--threads", ha.threads, "sweep threads")->capture_default_str();
  hrun->add_option("--gosa-width", ha.gosa_width, "partial sums in the residual")->capture_default_str();
  hrun->add_flag("--no-timing", ha.no_timing, "omit elapsed time and MFLOPs lines");
  hrun->add_option("--manifest", ha.manifest, "run manifest path");
  hrun->add_flag("--wall-clock-timestamp", ha.wall_clock, "stamp the manifest with the current time");

  auto* sim_cmd = app.add_subcommand("sim", "dataflow kernel simulation");
  sim_cmd->require_subcommand(1);

  SimRunArgs sa;
  auto* srun = sim_cmd->add_subcommand("run", "simulate a scenario or graph");
  auto* scen_opt = srun->add_option("--scenario", sa.scenario, "scenario name");
  auto* graph_opt = srun->add_option("--graph", sa.graph, "graph JSON file");
  scen_opt->excludes(graph_opt);
  srun->add_option("--out", sa.out_csv, "profile CSV path");
  srun->add_option("--guidance", sa.guidance_txt, "guidance text path");
  srun->add_option("--guidance-json", sa.guidance_json, "guidance JSON path");
  srun->add_option("--config", sa.config, "thresholds and calibration JSON");
  srun->add_option("--seed", sa.seed, "arbitration seed")->capture_default_str();
  srun->add_option("--iters", sa.iters, "kernel invocations")->capture_default_str();
  srun->add_option("--items", sa.items, "items per invocation (graph default: compute stage items)");
  srun->add_flag("--no-replay", sa.no_replay, "simulate every iteration instead of repeating the first");
  srun->add_option("--manifest", sa.manifest, "run manifest path");
  srun->add_flag("--wall-clock-timestamp", sa.wall_clock, "stamp the manifest with the current time");
  add_dims(srun, sa.dims);

  LadderArgs la;
  auto* sladder = sim_cmd->add_subcommand("ladder", "simulate every scenario in order");
  add_dims(sladder, la.dims);
  sladder->add_option("--iters", la.iters, "kernel invocations")->capture_default_str();
  sladder->add_option("--csv", la.csv, "CSV output path");
  sladder->add_option("--config", la.config, "thresholds and calibration JSON");
  sladder->add_option("--freq-override", la.freq_override, "kernel clock for every scenario, Hz");
  sladder->add_option("--seed", la.seed, "arbitration seed")->capture_default_str();
  sladder->add_option("--threads", la.threads, "scenarios simulated at once")->capture_default_str();
  sladder->add_option("--manifest", la.manifest, "run manifest path");
  sladder->add_flag("--wall-clock-timestamp", la.wall_clock, "stamp the manifest with the current time");

  double peak_flops = 34, peak_freq = 300e6;
  std::int64_t peak_ii = 1;
  auto* speak = sim_cmd->add_subcommand("peak", "theoretical peak MFLOPs");
  speak->add_option("--flops", peak_flops, "flops per item")->capture_default_str();
  speak->add_option("--freq", peak_freq, "clock, Hz")->capture_default_str();
  speak->add_option("--ii", peak_ii, "initiation interval")->capture_default_str();

  ExportArgs ea;
  auto* sexport = sim_cmd->add_subcommand("export", "write scenario graphs and the catalog as JSON");
  add_dims(sexport, ea.dims);
  sexport->add_option("--dir", ea.dir, "output directory")->capture_default_str();
  sexport->add_option("--scenario", ea.scenario, "only this scenario");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (hrun->parsed()) return himeno_run(ha, args, out, err);
    if (srun->parsed()) return sim_run(sa, args, out, err);
    if (sladder->parsed()) return sim_ladder(la, args, out);
    if (sexport->parsed()) return sim_export(ea, out);
    if (speak->parsed()) {
      if (peak_ii < 1 || !(peak_freq > 0) || !(peak_flops >= 0)) throw InvalidArgument("peak: need flops >= 0, freq > 0, ii >= 1");
      out << "theoretical_peak_mflops " << sim::format_real(dataflow::theoretical_peak_mflops(peak_flops, peak_freq, peak_ii))
          << "\n";
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "invalid input:\n";
    for (const auto& v : e.violations()) err << "  " << v << "\n";
    return kExitUsage;
  } catch (const DeadlockError& e) {
    err << e.what() << "\n";
    return kExitDeadlock;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidDimension& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hflow::cli
