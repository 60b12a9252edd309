#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "vdwmirror/atom.hpp"
#include "vdwmirror/driven_atom.hpp"
#include "vdwmirror/trajectories.hpp"
#include "vdwmirror/vdw.hpp"

namespace vdwmirror {

using Cell = std::variant<std::string, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// %.17g, which round-trips every finite double.
std::string format_number(double x);

void write_csv(std::ostream& out, const Table& table);
// Array of row objects keyed by the header.
nlohmann::json to_json(const Table& table);

// Splits CSV text into header + string cells (no quoting support beyond
// what write_csv emits).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

// Rows: material, a, n, omega_na_eV, R_fs_per_us, M_kHz_um3, delta_vf, delta_r, r.
Table table1(const std::vector<VdwCoefficients>& coeffs);

// First column is the row label: level names for C_a, "D(lower<-upper)" for
// decay coefficients; one column per material, kHz*um^3.
Table table2(const LevelScheme& scheme, const std::vector<VdwCoefficients>& coeffs);

// z_um, U_eff_MHz, pop_*, F_i (MHz/um, tracked), eta_i (tracked), heating_K_per_s.
Table potential_table(const AtomFieldHamiltonian& h, const PotentialProfile& profile);

// index, outcome, exit_time_us, jumps, final_z_um.
Table ensemble_table(const EnsembleStats& stats);

Table series_table(const TrajectoryRecord& record);
Table jump_table(const TrajectoryRecord& record, const AtomFieldHamiltonian& h);

// Printable multi-line ensemble summary.
std::string ensemble_summary(const EnsembleStats& stats);

}  // namespace vdwmirror
