// vdwmirror: van der Waals tables, steady-state potentials and trajectory
// ensembles for an evanescent-wave atom mirror.

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vdwmirror/config.hpp"
#include "vdwmirror/error.hpp"
#include "vdwmirror/tables.hpp"

namespace fs = std::filesystem;
using namespace vdwmirror;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kConfig = 2, kNumerical = 3, kScenario = 4 };

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format;
  std::optional<unsigned> threads;
};

struct TrajectoryFlags {
  std::string scenario;
  std::string material;
  std::optional<std::size_t> n;
  std::optional<double> t_max;
  std::optional<double> start_z;
  std::string detail = "ensemble";
  std::size_t series = 3;
};

unsigned env_threads() {
  if (const char* s = std::getenv("VDWMIRROR_THREADS")) {
    try {
      const long v = std::stol(s);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("VDWMIRROR_THREADS: expected a positive integer, got '") +
                      s + "'");
  }
  return 1;
}

RunConfig resolve(const Globals& g) {
  if (g.config.empty()) throw ConfigError("--config is required");
  RunConfig c = load_run_config(g.config);
  if (g.seed) {
    c.seed = *g.seed;
    c.scenario.seed = *g.seed;
  }
  if (!g.out.empty()) c.output_dir = g.out;
  if (!g.format.empty()) c.format = g.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  c.threads = g.threads ? *g.threads : env_threads();
  c.scenario.threads = c.threads;
  return c;
}

void emit(const RunConfig& c, const std::string& stem, const Table& table) {
  fs::create_directories(c.output_dir);
  const bool json = c.format == OutputFormat::Json;
  const fs::path path = c.output_dir / (stem + (json ? ".json" : ".csv"));
  std::ofstream out(path);
  if (!out) throw ConfigError(path.string() + ": cannot write");
  if (json) {
    out << to_json(table).dump(1) << '\n';
  } else {
    write_csv(out, table);
  }
  std::cout << "wrote " << path.string() << '\n';
}

// File-name safe material label: "ITO*" -> "ITO_star".
std::string file_label(const std::string& name) {
  std::string s;
  for (char ch : name) {
    if (ch == '*') {
      s += "_star";
    } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_') {
      s += ch;
    } else {
      s += '_';
    }
  }
  return s;
}

struct Setup {
  LevelScheme scheme;
  std::vector<DielectricModel> materials;
};

Setup load_inputs(const RunConfig& c) {
  Setup s{load_level_scheme(c.atom_file), {}};
  const auto all = load_materials(c.material_file);
  for (const auto& name : c.materials) s.materials.push_back(find_material(all, name));
  return s;
}

int cmd_vdw_table(const RunConfig& c) {
  const Setup s = load_inputs(c);
  std::vector<VdwCoefficients> coeffs;
  for (const auto& m : s.materials) coeffs.push_back(compute_vdw(s.scheme, m));
  emit(c, "table1", table1(coeffs));
  emit(c, "table2", table2(s.scheme, coeffs));
  return kOk;
}

int cmd_potential(const RunConfig& c) {
  const Setup s = load_inputs(c);
  const auto grid = log_grid(c.grid.z_max, c.grid.z_min, c.grid.points);
  for (const auto& m : s.materials) {
    const auto h = build_hamiltonian(s.scheme, compute_vdw(s.scheme, m), c.drives);
    const auto profile = effective_potential(h, grid, c.threads);
    emit(c, "potential_" + file_label(m.name()), potential_table(h, profile));
    const auto u = profile.U_eff_mhz();
    std::size_t imax = 0;
    for (std::size_t k = 1; k < u.size(); ++k) {
      if (u[k] > u[imax]) imax = k;
    }
    std::cout << m.name() << ": max U_eff " << u[imax] << " MHz at z=" << profile.z[imax]
              << " um\n";
    for (std::size_t k : local_minima(profile)) {
      const auto [zm, um] = refine_minimum(profile, k);
      std::cout << m.name() << ": local minimum " << units::angular_to_mhz(um)
                << " MHz at z=" << zm << " um\n";
    }
  }
  return kOk;
}

int cmd_trajectories(RunConfig c, const TrajectoryFlags& f) {
  if (!f.scenario.empty()) c.scenario.kind = f.scenario == "trap" ? ScenarioKind::Trap : ScenarioKind::Drop;
  if (f.n) c.scenario.n_trajectories = *f.n;
  if (f.t_max) c.scenario.t_max = *f.t_max;
  if (f.start_z) c.scenario.start_z = *f.start_z;
  if (c.scenario.n_trajectories < 1) throw ConfigError("--n must be >= 1");
  if (f.detail == "series") c.scenario.record_count = f.series;

  const Setup s = load_inputs(c);
  std::vector<DielectricModel> selected;
  for (const auto& m : s.materials) {
    if (f.material.empty() || m.name() == f.material) selected.push_back(m);
  }
  if (selected.empty()) throw ConfigError("--material '" + f.material + "' is not configured");

  // A material without its own trap minimum starts where the first trapping
  // material's minimum sits, so the two surfaces are compared at one height.
  std::optional<double> fallback_start;
  for (const auto& m : selected) {
    const auto h = build_hamiltonian(s.scheme, compute_vdw(s.scheme, m), c.drives);
    ScenarioConfig sc = c.scenario;
    EnsembleStats stats;
    if (sc.kind == ScenarioKind::Drop) {
      stats = run_drop(h, sc);
    } else {
      if (!sc.start_z) {
        const auto profile = effective_potential(
            h, log_grid(c.grid.z_max, sc.z_absorb, c.grid.points), c.threads);
        sc.start_z = locate_trap_minimum(profile, sc.z_absorb, sc.z_escape);
        if (!sc.start_z) {
          if (!fallback_start) {
            throw ScenarioError(m.name() + ": no interior U_eff minimum in (" +
                                format_number(sc.z_absorb) + ", " +
                                format_number(sc.z_escape) + ") um; pass --start-z");
          }
          std::cout << m.name() << ": no trap minimum, starting at z=" << *fallback_start
                    << " um\n";
          sc.start_z = fallback_start;
        } else if (!fallback_start) {
          fallback_start = sc.start_z;
        }
      }
      stats = run_trap(h, sc);
    }
    const std::string label = file_label(m.name());
    emit(c, "ensemble_" + label, ensemble_table(stats));
    for (std::size_t i = 0; i < stats.trajectories.size(); ++i) {
      const auto& rec = stats.trajectories[i].record;
      if (!rec) continue;
      emit(c, "series_" + label + "_" + std::to_string(i), series_table(*rec));
      emit(c, "jumps_" + label + "_" + std::to_string(i), jump_table(*rec, h));
    }
    std::cout << "[" << m.name() << "]\n" << ensemble_summary(stats);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Van der Waals-enhanced evanescent-wave atom mirror"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  app.add_option("--seed", g.seed, "Master RNG seed");
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "Worker threads (default $VDWMIRROR_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  auto* vdw = app.add_subcommand("vdw-table", "Per-transition and per-level vdW coefficients");
  auto* pot = app.add_subcommand("potential", "Steady-state effective potential profiles");
  auto* traj = app.add_subcommand("trajectories", "Quantum-trajectory ensembles");

  TrajectoryFlags tf;
  traj->add_option("--scenario", tf.scenario, "drop or trap")
      ->check(CLI::IsMember({"drop", "trap"}));
  traj->add_option("--material", tf.material, "Run only this material");
  traj->add_option("--n", tf.n, "Number of trajectories");
  traj->add_option("--t-max", tf.t_max, "Time limit per trajectory, us")
      ->check(CLI::PositiveNumber);
  traj->add_option("--start-z", tf.start_z, "Trap start height, um")->check(CLI::PositiveNumber);
  traj->add_option("--detail", tf.detail, "ensemble or series")
      ->check(CLI::IsMember({"ensemble", "series"}));
  traj->add_option("--series", tf.series, "Trajectories with time series when --detail series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig c = resolve(g);
    if (vdw->parsed()) return cmd_vdw_table(c);
    if (pot->parsed()) return cmd_potential(c);
    return cmd_trajectories(c, tf);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << '\n';
    return kScenario;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
