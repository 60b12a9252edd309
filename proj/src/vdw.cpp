#include "vdwmirror/vdw.hpp"

#include "vdwmirror/constants.hpp"
#include "vdwmirror/error.hpp"

namespace vdwmirror {

const LevelShift& VdwCoefficients::shift(const std::string& level) const {
  const auto it = per_level.find(level);
  if (it == per_level.end()) {
    throw ConfigError("no vdW shift coefficient for level " + level);
  }
  return it->second;
}

double VdwCoefficients::decay(const std::string& lower, const std::string& upper) const {
  for (const auto& d : per_decay) {
    if (d.lower == lower && d.upper == upper) return d.D;
  }
  return 0.0;
}

VdwCoefficients VdwCoefficients::zeros(const LevelScheme& scheme) {
  VdwCoefficients c;
  c.material = "none";
  for (const auto& level : scheme.levels()) c.per_level[level.name] = LevelShift{};
  return c;
}

VdwCoefficients compute_vdw(const LevelScheme& scheme,
                            const DielectricModel& material) {
  VdwCoefficients out;
  out.material = material.name();
  for (const auto& level : scheme.levels()) {
    LevelShift shift;
    for (const auto& t : scheme.transitions()) {
      const bool is_upper = t.upper == level.name;
      const bool is_lower = t.lower == level.name;
      if (!is_upper && !is_lower) continue;

      VdwTerm term;
      term.a = level.name;
      term.n = is_upper ? t.lower : t.upper;
      term.omega_na_ev = is_upper ? -t.omega_ev : t.omega_ev;
      term.rate_fs = t.rate_fs;
      term.M = dipole_strength_coeff(t, is_upper ? PerturbedEnd::Upper
                                                 : PerturbedEnd::Lower);
      term.factors = image_factors(material, -term.omega_na_ev);

      shift.vf -= term.M * term.factors.delta_vf;
      shift.resonant -= term.M * term.factors.delta_r;
      if (is_upper) {
        out.per_decay.push_back({t.lower, t.upper, term.M * term.factors.r});
      }
      out.per_transition.push_back(std::move(term));
    }
    shift.total = shift.vf + shift.resonant;
    out.per_level[level.name] = shift;
  }
  return out;
}

double shift_at(const VdwCoefficients& coeffs, const std::string& level, double z_um) {
  if (!(z_um > 0.0)) throw DomainError("shift_at: z must be > 0");
  return units::khz_um3_to_angular(coeffs.shift(level).total) / (z_um * z_um * z_um);
}

double decay_enhancement_at(const VdwCoefficients& coeffs, const std::string& lower,
                            const std::string& upper, double z_um) {
  if (!(z_um > 0.0)) throw DomainError("decay_enhancement_at: z must be > 0");
  return units::khz_um3_to_angular(coeffs.decay(lower, upper)) / (z_um * z_um * z_um);
}

double shift_derivative_at(const VdwCoefficients& coeffs, const std::string& level,
                           double z_um) {
  if (!(z_um > 0.0)) throw DomainError("shift_derivative_at: z must be > 0");
  const double z2 = z_um * z_um;
  return -3.0 * units::khz_um3_to_angular(coeffs.shift(level).total) / (z2 * z2);
}

}  // namespace vdwmirror
