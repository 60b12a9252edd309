#pragma once

// Physical constants and the unit system used throughout the library.
//
// Internal units: lengths in um, times in us, angular frequencies and rates
// in rad/us (hbar = 1). Material and transition energies are given in eV.
// Van der Waals coefficients are reported in kHz*um^3 of ordinary frequency,
// i.e. (angular coefficient in us^-1 um^3) / (2 pi) * 1e3.

#include <numbers>

namespace vdwmirror::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Speed of light, um/us.
inline constexpr double c_um_per_us = 2.99792458e8;
// (1 eV)/hbar in rad/us.
inline constexpr double ev_to_rad_per_us = 1.51926757e9;
// Standard gravity, um/us^2.
inline constexpr double gravity_um_per_us2 = 9.81e-6;
// Mass of 39K, kg.
inline constexpr double mass_k39_kg = 6.4762e-26;

// SI values (exact in the 2019 SI).
inline constexpr double hbar_si = 1.054571817e-34;
inline constexpr double planck_si = 6.62607015e-34;
inline constexpr double boltzmann_si = 1.380649e-23;
inline constexpr double c_si = 2.99792458e8;

}  // namespace vdwmirror::constants

namespace vdwmirror::units {

inline constexpr double ev_to_angular(double energy_ev) {
  return energy_ev * constants::ev_to_rad_per_us;
}
inline constexpr double angular_to_ev(double omega) {
  return omega / constants::ev_to_rad_per_us;
}
// 2 pi x (value in MHz) -> rad/us.
inline constexpr double mhz_x2pi(double mhz) { return constants::two_pi * mhz; }
// rad/us -> ordinary MHz.
inline constexpr double angular_to_mhz(double omega) {
  return omega / constants::two_pi;
}
// Coefficient in kHz*um^3 (ordinary) -> angular us^-1*um^3.
inline constexpr double khz_um3_to_angular(double coeff) {
  return constants::two_pi * 1e-3 * coeff;
}
inline constexpr double angular_to_khz_um3(double coeff) {
  return coeff * 1e3 / constants::two_pi;
}
// hbar / m in um^2/us, converting a force in (rad/us)/um to an acceleration.
inline constexpr double hbar_over_mass(double mass_kg) {
  return constants::hbar_si / mass_kg * 1e6;
}

}  // namespace vdwmirror::units
