#include "vdwmirror/atom.hpp"

#include <cmath>
#include <set>

#include "vdwmirror/constants.hpp"
#include "vdwmirror/error.hpp"

namespace vdwmirror {

namespace {

bool is_half_integer(double j) {
  const double twice = 2.0 * j;
  return j >= 0.0 && std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

LevelScheme::LevelScheme(std::vector<Level> levels,
                         std::vector<TransitionRecord> transitions,
                         double mass_kg)
    : levels_(std::move(levels)),
      transitions_(std::move(transitions)),
      mass_kg_(mass_kg) {
  if (!(mass_kg_ > 0.0)) throw ConfigError("level scheme: mass must be > 0");
  std::set<std::string> names;
  for (const auto& l : levels_) {
    if (!is_half_integer(l.J)) {
      throw ConfigError("level " + l.name + ": J must be a non-negative half-integer");
    }
    if (!names.insert(l.name).second) {
      throw ConfigError("duplicate level name " + l.name);
    }
  }
  for (const auto& t : transitions_) {
    const std::string label = t.upper + " -> " + t.lower;
    if (!(t.omega_ev > 0.0)) {
      throw ConfigError("transition " + label + ": omega_eV must be > 0");
    }
    if (!(t.rate_fs > 0.0)) {
      throw ConfigError("transition " + label + ": rate_fs_per_us must be > 0");
    }
    if (!is_half_integer(t.J_upper) || !is_half_integer(t.J_lower)) {
      throw ConfigError("transition " + label + ": J must be half-integers");
    }
  }
}

std::optional<std::size_t> LevelScheme::level_index(const std::string& name) const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].name == name) return i;
  }
  return std::nullopt;
}

const TransitionRecord* LevelScheme::find_transition(const std::string& a,
                                                     const std::string& b) const {
  for (const auto& t : transitions_) {
    if ((t.upper == a && t.lower == b) || (t.upper == b && t.lower == a)) {
      return &t;
    }
  }
  return nullptr;
}

double dipole_strength_coeff(const TransitionRecord& t, PerturbedEnd a) {
  const double omega = units::ev_to_angular(t.omega_ev);
  const double wavelength_factor = constants::c_um_per_us / omega;
  double angular = 1.0;
  if (a == PerturbedEnd::Lower) {
    // omega_na > 0: n = upper lies above a = lower.
    angular += 2.0 * (t.J_upper - t.J_lower) / (2.0 * t.J_lower + 1.0);
  }
  const double coeff = t.rate_fs * std::pow(wavelength_factor, 3) * angular / 16.0;
  return units::angular_to_khz_um3(coeff);
}

double saturation_intensity(const TransitionRecord& t) {
  const double omega_si = t.omega_ev * constants::ev_to_rad_per_us * 1e6;
  const double rate_si = t.rate_fs * 1e6;
  const double watts_per_m2 = constants::hbar_si * rate_si * std::pow(omega_si, 3) /
                              (12.0 * constants::pi * constants::c_si * constants::c_si) *
                              (2.0 * t.J_upper + 1.0) / (2.0 * t.J_lower + 1.0);
  return watts_per_m2 * 0.1;  // 1 W/m^2 = 0.1 mW/cm^2
}

double rabi_to_intensity(const TransitionRecord& t, double omega_rabi) {
  if (!(omega_rabi >= 0.0)) throw DomainError("rabi_to_intensity: Omega < 0");
  const double ratio = omega_rabi / t.rate_fs;
  return 2.0 * saturation_intensity(t) * ratio * ratio;
}

double thermal_debroglie(double mass_kg, double temperature_k) {
  if (!(temperature_k > 0.0)) throw DomainError("thermal_debroglie: T must be > 0");
  if (!(mass_kg > 0.0)) throw DomainError("thermal_debroglie: mass must be > 0");
  const double metres = constants::planck_si /
                        std::sqrt(2.0 * constants::pi * mass_kg *
                                  constants::boltzmann_si * temperature_k);
  return metres * 1e6;
}

FallKinematics fall_kinematics(double height_mm, double mass_kg) {
  if (!(height_mm >= 0.0)) throw DomainError("fall_kinematics: height < 0");
  FallKinematics k;
  const double height_um = height_mm * 1e3;
  k.speed_um_per_us = std::sqrt(2.0 * constants::gravity_um_per_us2 * height_um);
  const double v_si = k.speed_um_per_us;  // 1 um/us == 1 m/s
  k.kinetic_mhz = 0.5 * mass_kg * v_si * v_si / constants::planck_si * 1e-6;
  return k;
}

}  // namespace vdwmirror
