#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdwmirror/atom.hpp"
#include "vdwmirror/driven_atom.hpp"
#include "vdwmirror/materials.hpp"
#include "vdwmirror/trajectories.hpp"

namespace vdwmirror {

enum class OutputFormat { Csv, Json };

struct GridSpec {
  double z_max = 2.0;
  double z_min = 0.02;
  std::size_t points = 400;
};

struct RunConfig {
  std::filesystem::path atom_file;
  std::filesystem::path material_file;
  std::vector<std::string> materials;  // names selected from material_file
  DriveConfig drives;
  GridSpec grid;
  ScenarioConfig scenario;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 1;
};

// Atomic data: {"mass_kg", "levels": [{name, J, role}],
//               "transitions": [{upper, lower, omega_eV, rate_fs_per_us, J_upper, J_lower}]}
LevelScheme parse_level_scheme(const nlohmann::json& j, const std::string& context);
LevelScheme load_level_scheme(const std::filesystem::path& path);

// {"materials": [{name, eps_inf, omega_p_eV, gamma_eV, [model]}]}. A model
// with omega_p_eV = 0 (or "model": "dispersionless") is dispersionless.
std::vector<DielectricModel> parse_materials(const nlohmann::json& j,
                                             const std::string& context);
std::vector<DielectricModel> load_materials(const std::filesystem::path& path);
const DielectricModel& find_material(const std::vector<DielectricModel>& all,
                                     const std::string& name);

// Drive entries carry explicit units: rabi_MHz_x2pi, detuning_MHz_x2pi and
// one of kappa_x2pi_per_um / kappa_per_um.
Drive parse_drive(const nlohmann::json& j, const std::string& context);
ScenarioConfig parse_scenario(const nlohmann::json& j, const std::string& context);

// Relative file paths are resolved against the config file's directory.
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir,
                           const std::string& context);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace vdwmirror
