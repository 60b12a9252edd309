#include "vdwmirror/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "vdwmirror/constants.hpp"

namespace vdwmirror {

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return format_number(std::get<double>(c));
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  write_row(out, table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    cells.reserve(row.size());
    for (const auto& c : row) cells.push_back(cell_text(c));
    write_row(out, cells);
  }
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
      std::visit([&](const auto& v) { obj[table.header[i]] = v; }, row[i]);
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  return rows;
}

Table table1(const std::vector<VdwCoefficients>& coeffs) {
  Table t;
  t.header = {"material", "a", "n", "omega_na_eV", "R_fs_per_us", "M_kHz_um3",
              "delta_vf", "delta_r", "r"};
  for (const auto& c : coeffs) {
    for (const auto& term : c.per_transition) {
      t.rows.push_back({c.material, term.a, term.n, term.omega_na_ev, term.rate_fs, term.M,
                        term.factors.delta_vf, term.factors.delta_r, term.factors.r});
    }
  }
  return t;
}

Table table2(const LevelScheme& scheme, const std::vector<VdwCoefficients>& coeffs) {
  Table t;
  t.header = {"quantity"};
  for (const auto& c : coeffs) t.header.push_back(c.material);
  if (coeffs.empty()) return t;
  for (const auto& level : scheme.levels()) {
    const auto& terms = coeffs.front().per_transition;
    const bool has_partner = std::any_of(terms.begin(), terms.end(),
                                         [&](const VdwTerm& t) { return t.a == level.name; });
    if (!has_partner) continue;
    std::vector<Cell> row{level.name};
    for (const auto& c : coeffs) row.emplace_back(c.shift(level.name).total);
    t.rows.push_back(std::move(row));
  }
  for (const auto& d : coeffs.front().per_decay) {
    std::vector<Cell> row{"D(" + d.lower + "<-" + d.upper + ")"};
    for (const auto& c : coeffs) row.emplace_back(c.decay(d.lower, d.upper));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table potential_table(const AtomFieldHamiltonian& h, const PotentialProfile& profile) {
  Table t;
  t.header = {"z_um", "U_eff_MHz"};
  for (const auto& n : h.level_names()) t.header.push_back("pop_" + n);
  for (int i = 1; i <= 3; ++i) t.header.push_back("F" + std::to_string(i) + "_MHz_per_um");
  for (int i = 1; i <= 3; ++i) t.header.push_back("eta" + std::to_string(i));
  t.header.push_back("heating_K_per_s");
  for (std::size_t k = 0; k < profile.z.size(); ++k) {
    const auto& p = profile.points[k];
    std::vector<Cell> row{profile.z[k], units::angular_to_mhz(profile.U_eff[k])};
    for (double pop : p.level_pops) row.emplace_back(pop);
    for (double f : profile.tracked_values[k]) row.emplace_back(units::angular_to_mhz(f));
    for (double e : profile.tracked_eta[k]) row.emplace_back(e);
    row.emplace_back(p.heating_rate);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table ensemble_table(const EnsembleStats& stats) {
  Table t;
  t.header = {"index", "outcome", "exit_time_us", "jumps", "final_z_um"};
  for (std::size_t i = 0; i < stats.trajectories.size(); ++i) {
    const auto& r = stats.trajectories[i];
    t.rows.push_back({static_cast<double>(i), to_string(r.outcome), r.exit_time,
                      static_cast<double>(r.jumps), r.final_z});
  }
  return t;
}

Table series_table(const TrajectoryRecord& record) {
  Table t;
  t.header = {"t_us", "z_um", "v_um_per_us", "force_MHz_per_um", "eta1", "eta2", "eta3"};
  for (std::size_t k = 0; k < record.t.size(); ++k) {
    t.rows.push_back({record.t[k], record.z[k], record.v[k],
                      units::angular_to_mhz(record.force[k]), record.eta[k][0],
                      record.eta[k][1], record.eta[k][2]});
  }
  return t;
}

Table jump_table(const TrajectoryRecord& record, const AtomFieldHamiltonian& h) {
  Table t;
  t.header = {"t_us", "channel", "z_um", "dv_um_per_us"};
  const auto& names = h.level_names();
  for (const auto& j : record.jumps) {
    const auto& c = h.channels()[j.channel];
    t.rows.push_back({j.t, names[c.upper] + "->" + names[c.lower], j.z, j.dv});
  }
  return t;
}

std::string ensemble_summary(const EnsembleStats& stats) {
  std::ostringstream s;
  const double n = static_cast<double>(stats.total());
  s << "trajectories: " << stats.total() << '\n'
    << "reflected: " << stats.n_reflected << " (" << stats.n_reflected / n << ")\n"
    << "absorbed: " << stats.n_absorbed << " (" << stats.n_absorbed / n << ")\n"
    << "timeout: " << stats.n_timeout << " (" << stats.n_timeout / n << ")\n"
    << "start_z_um: " << stats.start_z << '\n'
    << "mean_jumps: " << stats.mean_jumps << '\n'
    << "mean_escape_time_us: " << stats.mean_escape_time << '\n';
  for (const auto& [q, v] : stats.escape_time_quantiles) {
    s << "escape_time_q" << q << "_us: " << v << '\n';
  }
  if (stats.timeout_warning) s << "warning: more than 5% of trajectories timed out\n";
  return s.str();
}

}  // namespace vdwmirror
