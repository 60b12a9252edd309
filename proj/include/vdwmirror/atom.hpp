#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vdwmirror/constants.hpp"

namespace vdwmirror {

enum class LevelRole { Ground, Excited };

struct Level {
  std::string name;  // e.g. "4P_3/2"
  double J = 0.0;    // spin-orbit quantum number, half-integer
  LevelRole role = LevelRole::Excited;
};

// One electric-dipole transition upper -> lower. Partners outside the
// simulated ladder are listed too; they only enter the vdW shift sums.
struct TransitionRecord {
  std::string upper;
  std::string lower;
  double omega_ev = 0.0;      // hbar*omega, > 0
  double rate_fs = 0.0;       // free-space decay rate upper -> lower, 1/us
  double J_upper = 0.0;
  double J_lower = 0.0;
};

class LevelScheme {
 public:
  LevelScheme(std::vector<Level> levels, std::vector<TransitionRecord> transitions,
              double mass_kg);

  // Simulated subspace, ordered bottom to top of the ladder.
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<TransitionRecord>& transitions() const { return transitions_; }
  double mass_kg() const { return mass_kg_; }

  std::optional<std::size_t> level_index(const std::string& name) const;
  // The transition joining the two named levels, in either order.
  const TransitionRecord* find_transition(const std::string& a,
                                          const std::string& b) const;

 private:
  std::vector<Level> levels_;
  std::vector<TransitionRecord> transitions_;
  double mass_kg_;
};

// Which end of the transition plays the perturbed level `a`.
enum class PerturbedEnd { Upper, Lower };

// M_an = R_fs (c/|w_na|)^3 (1 + 2 (J_n - J_a)/(2 J_a + 1) Theta(w_na)) / 16,
// in kHz*um^3. For a = upper the transition a -> n is downward and the
// angular factor is 1.
double dipole_strength_coeff(const TransitionRecord& t, PerturbedEnd a);

// I_sat = hbar R w^3 / (12 pi c^2) * (2 J_upper + 1)/(2 J_lower + 1), mW/cm^2.
double saturation_intensity(const TransitionRecord& t);

// I = 2 I_sat (Omega / R_fs)^2 with Omega in rad/us. mW/cm^2.
double rabi_to_intensity(const TransitionRecord& t, double omega_rabi);

// h / sqrt(2 pi m k_B T), um.
double thermal_debroglie(double mass_kg, double temperature_k);

struct FallKinematics {
  double speed_um_per_us = 0.0;
  double kinetic_mhz = 0.0;  // E_k / h
};

FallKinematics fall_kinematics(double height_mm,
                               double mass_kg = constants::mass_k39_kg);

}  // namespace vdwmirror
