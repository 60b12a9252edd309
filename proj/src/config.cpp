#include "vdwmirror/config.hpp"

#include <fstream>
#include <set>

#include "vdwmirror/constants.hpp"
#include "vdwmirror/error.hpp"

namespace vdwmirror {

namespace {

using nlohmann::json;

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(context + ": missing field '" + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const std::string& key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number()) throw ConfigError(context + ": field '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& context) {
  if (!j.contains(key)) return fallback;
  return number(j, key, context);
}

std::string text(const json& j, const std::string& key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_string()) throw ConfigError(context + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t count(const json& j, const std::string& key, const std::string& context) {
  const json& v = require(j, key, context);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(context + ": field '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

LevelScheme parse_level_scheme(const json& j, const std::string& context) {
  std::vector<Level> levels;
  const json& lv = require(j, "levels", context);
  if (!lv.is_array()) throw ConfigError(context + ": 'levels' must be an array");
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const std::string ctx = context + ": levels[" + std::to_string(i) + "]";
    Level l;
    l.name = text(lv[i], "name", ctx);
    l.J = number(lv[i], "J", ctx);
    const std::string role = text(lv[i], "role", ctx);
    if (role == "ground") {
      l.role = LevelRole::Ground;
    } else if (role == "excited") {
      l.role = LevelRole::Excited;
    } else {
      throw ConfigError(ctx + ": role must be 'ground' or 'excited'");
    }
    levels.push_back(std::move(l));
  }
  std::vector<TransitionRecord> transitions;
  const json& tr = require(j, "transitions", context);
  if (!tr.is_array()) throw ConfigError(context + ": 'transitions' must be an array");
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const std::string ctx = context + ": transitions[" + std::to_string(i) + "]";
    TransitionRecord t;
    t.upper = text(tr[i], "upper", ctx);
    t.lower = text(tr[i], "lower", ctx);
    t.omega_ev = number(tr[i], "omega_eV", ctx);
    t.rate_fs = number(tr[i], "rate_fs_per_us", ctx);
    t.J_upper = number(tr[i], "J_upper", ctx);
    t.J_lower = number(tr[i], "J_lower", ctx);
    transitions.push_back(std::move(t));
  }
  const double mass = number(j, "mass_kg", context);
  try {
    return LevelScheme(std::move(levels), std::move(transitions), mass);
  } catch (const ConfigError& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

LevelScheme load_level_scheme(const std::filesystem::path& path) {
  return parse_level_scheme(read_json(path), path.string());
}

std::vector<DielectricModel> parse_materials(const json& j, const std::string& context) {
  const json& list = require(j, "materials", context);
  if (!list.is_array()) throw ConfigError(context + ": 'materials' must be an array");
  std::vector<DielectricModel> out;
  std::set<std::string> names;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ctx = context + ": materials[" + std::to_string(i) + "]";
    const json& m = list[i];
    const std::string name = text(m, "name", ctx);
    if (!names.insert(name).second) throw ConfigError(ctx + ": duplicate name " + name);
    const double eps_inf = number(m, "eps_inf", ctx);
    std::string model = m.contains("model") ? text(m, "model", ctx) : "";
    const double wp = number_or(m, "omega_p_eV", 0.0, ctx);
    if (model.empty()) model = wp == 0.0 ? "dispersionless" : "drude";
    try {
      if (model == "dispersionless") {
        out.push_back(DielectricModel::dispersionless(eps_inf, name));
      } else if (model == "drude") {
        out.push_back(DielectricModel::drude(eps_inf, wp, number(m, "gamma_eV", ctx), name));
      } else {
        throw ConfigError(ctx + ": model must be 'drude' or 'dispersionless'");
      }
    } catch (const DomainError& e) {
      throw ConfigError(ctx + ": " + e.what());
    }
  }
  return out;
}

std::vector<DielectricModel> load_materials(const std::filesystem::path& path) {
  return parse_materials(read_json(path), path.string());
}

const DielectricModel& find_material(const std::vector<DielectricModel>& all,
                                     const std::string& name) {
  for (const auto& m : all) {
    if (m.name() == name) return m;
  }
  throw ConfigError("unknown material '" + name + "'");
}

Drive parse_drive(const json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": drive must be an object");
  for (const char* bare : {"rabi", "detuning", "kappa", "omega_rabi", "kappa_z"}) {
    if (j.contains(bare)) {
      throw ConfigError(context + ": field '" + std::string(bare) +
                        "' has no unit; use rabi_MHz_x2pi, detuning_MHz_x2pi, "
                        "kappa_x2pi_per_um or kappa_per_um");
    }
  }
  Drive d;
  d.lower = text(j, "lower", context);
  d.upper = text(j, "upper", context);
  d.omega_rabi_0 = units::mhz_x2pi(number(j, "rabi_MHz_x2pi", context));
  d.detuning = units::mhz_x2pi(number(j, "detuning_MHz_x2pi", context));
  const bool has_x2pi = j.contains("kappa_x2pi_per_um");
  const bool has_plain = j.contains("kappa_per_um");
  if (has_x2pi == has_plain) {
    throw ConfigError(context + ": exactly one of kappa_x2pi_per_um / kappa_per_um is required");
  }
  d.kappa_z = has_x2pi ? constants::two_pi * number(j, "kappa_x2pi_per_um", context)
                       : number(j, "kappa_per_um", context);
  if (!(d.omega_rabi_0 >= 0.0)) throw ConfigError(context + ": rabi_MHz_x2pi must be >= 0");
  if (!(d.kappa_z >= 0.0)) throw ConfigError(context + ": kappa must be >= 0");
  return d;
}

ScenarioConfig parse_scenario(const json& j, const std::string& context) {
  ScenarioConfig s;
  const std::string kind = text(j, "kind", context);
  if (kind == "drop") {
    s.kind = ScenarioKind::Drop;
  } else if (kind == "trap") {
    s.kind = ScenarioKind::Trap;
  } else {
    throw ConfigError(context + ": kind must be 'drop' or 'trap'");
  }
  s.drop_height_um = number_or(j, "drop_height_um", s.drop_height_um, context);
  if (j.contains("n_trajectories")) s.n_trajectories = count(j, "n_trajectories", context);
  s.z_switch = number_or(j, "z_switch_um", s.z_switch, context);
  s.z_absorb = number_or(j, "z_absorb_um", s.z_absorb, context);
  s.z_escape = number_or(j, "z_escape_um", s.z_escape, context);
  s.t_max = number_or(j, "t_max_us", s.t_max, context);
  s.dt_max = number_or(j, "dt_max_us", s.dt_max, context);
  s.record_dt = number_or(j, "record_dt_us", s.record_dt, context);
  if (j.contains("start_z_um")) s.start_z = number(j, "start_z_um", context);
  if (j.contains("gravity")) s.gravity = require(j, "gravity", context).get<bool>();
  if (!(s.z_absorb < s.z_escape && s.z_escape <= s.z_switch)) {
    throw ConfigError(context + ": requires z_absorb_um < z_escape_um <= z_switch_um");
  }
  if (s.n_trajectories < 1) throw ConfigError(context + ": n_trajectories must be >= 1");
  return s;
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir,
                           const std::string& context) {
  RunConfig c;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  c.atom_file = resolve(text(j, "atom_file", context));
  c.material_file = resolve(text(j, "material_file", context));
  const json& mats = require(j, "materials", context);
  if (!mats.is_array()) throw ConfigError(context + ": 'materials' must be an array of names");
  for (const auto& m : mats) {
    if (!m.is_string()) throw ConfigError(context + ": 'materials' entries must be strings");
    c.materials.push_back(m.get<std::string>());
  }
  const json& drives = require(j, "drives", context);
  if (!drives.is_array()) throw ConfigError(context + ": 'drives' must be an array");
  for (std::size_t i = 0; i < drives.size(); ++i) {
    c.drives.drives.push_back(parse_drive(drives[i], context + ": drives[" + std::to_string(i) + "]"));
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    const std::string ctx = context + ": grid";
    c.grid.z_max = number_or(g, "z_max_um", c.grid.z_max, ctx);
    c.grid.z_min = number_or(g, "z_min_um", c.grid.z_min, ctx);
    if (g.contains("points")) c.grid.points = count(g, "points", ctx);
    if (!(c.grid.z_max > c.grid.z_min && c.grid.z_min > 0.0 && c.grid.points >= 2)) {
      throw ConfigError(ctx + ": requires z_max_um > z_min_um > 0 and points >= 2");
    }
  }
  if (j.contains("scenario")) c.scenario = parse_scenario(j.at("scenario"), context + ": scenario");
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError(context + ": seed must be an unsigned integer");
    c.seed = s.get<std::uint64_t>();
  }
  c.scenario.seed = c.seed;
  if (j.contains("output")) {
    const json& o = j.at("output");
    const std::string ctx = context + ": output";
    if (o.contains("dir")) c.output_dir = resolve(text(o, "dir", ctx));
    if (o.contains("format")) {
      const std::string f = text(o, "format", ctx);
      if (f == "csv") {
        c.format = OutputFormat::Csv;
      } else if (f == "json") {
        c.format = OutputFormat::Json;
      } else {
        throw ConfigError(ctx + ": format must be 'csv' or 'json'");
      }
    }
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  return parse_run_config(read_json(path), base, path.string());
}

}  // namespace vdwmirror
