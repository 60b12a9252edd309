#pragma once

#include <map>
#include <string>
#include <vector>

#include "vdwmirror/atom.hpp"
#include "vdwmirror/materials.hpp"

namespace vdwmirror {

// One (a, n) row: level a perturbed by partner n.
struct VdwTerm {
  std::string a;
  std::string n;
  double omega_na_ev = 0.0;  // signed, E_n - E_a
  double rate_fs = 0.0;
  double M = 0.0;            // kHz*um^3
  ImageFactors factors;
};

// delta E_a(z) = C_a / z^3, split into vacuum-fluctuation and resonant parts.
struct LevelShift {
  double total = 0.0;      // kHz*um^3
  double vf = 0.0;
  double resonant = 0.0;
};

// R_na(z) - R_na^fs = D_na / z^3 for a downward a -> n.
struct DecayCoefficient {
  std::string lower;
  std::string upper;
  double D = 0.0;  // kHz*um^3 (ordinary frequency)
};

struct VdwCoefficients {
  std::string material;
  std::vector<VdwTerm> per_transition;         // in level, then partner order
  std::map<std::string, LevelShift> per_level; // every simulated level
  std::vector<DecayCoefficient> per_decay;

  const LevelShift& shift(const std::string& level) const;
  // 0 when no entry exists for the pair.
  double decay(const std::string& lower, const std::string& upper) const;

  // Same levels and partners, all coefficients zero.
  static VdwCoefficients zeros(const LevelScheme& scheme);
};

VdwCoefficients compute_vdw(const LevelScheme& scheme,
                            const DielectricModel& material);

// 2 pi * 1e-3 * C_a / z^3, rad/us.
double shift_at(const VdwCoefficients& coeffs, const std::string& level, double z_um);

// 2 pi * 1e-3 * D_na / z^3, rad/us.
double decay_enhancement_at(const VdwCoefficients& coeffs, const std::string& lower,
                            const std::string& upper, double z_um);

// d/dz of shift_at.
double shift_derivative_at(const VdwCoefficients& coeffs, const std::string& level,
                           double z_um);

}  // namespace vdwmirror
