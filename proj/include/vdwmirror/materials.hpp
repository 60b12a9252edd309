#pragma once

#include <complex>
#include <string>

namespace vdwmirror {

enum class DielectricKind { DrudeWithBackground, Dispersionless };

// Drude-family permittivity eps(w) = eps_inf - wp^2 / (w (w + i gamma)).
// All frequencies in eV.
class DielectricModel {
 public:
  static DielectricModel drude(double eps_inf, double omega_p_ev,
                               double gamma_ev, std::string name = {});
  static DielectricModel dispersionless(double eps_inf, std::string name = {});

  DielectricKind kind() const { return kind_; }
  double eps_inf() const { return eps_inf_; }
  double omega_p() const { return omega_p_; }
  double gamma() const { return gamma_; }
  const std::string& name() const { return name_; }

 private:
  DielectricModel(DielectricKind kind, double eps_inf, double omega_p,
                  double gamma, std::string name);

  DielectricKind kind_;
  double eps_inf_;
  double omega_p_;
  double gamma_;
  std::string name_;
};

// Dimensionless near-field image factors for one (a, n) pair.
struct ImageFactors {
  double delta_vf = 0.0;  // vacuum-fluctuation factor, sign of omega_na
  double delta_r = 0.0;   // resonant factor, zero unless a -> n is downward
  double r = 0.0;         // dissipative factor, zero unless downward
};

struct DrudeMinimum {
  double omega_min = 0.0;   // eV
  double real_min = 0.0;    // minimum of Re[(eps-1)/(eps+1)]
  double imag_at_min = 0.0; // Im[(eps-1)/(eps+1)] at omega_min
};

// eps(omega), omega > 0 in eV.
std::complex<double> permittivity(const DielectricModel& model, double omega);

// eps(i zeta), zeta > 0 in eV. Always real and >= eps_inf.
double permittivity_imag_axis(const DielectricModel& model, double zeta);

// Quasi-static p-polarized reflection coefficient (eps - 1)/(eps + 1).
// Throws NumericalError if |eps + 1| < 1e-12 (exact surface resonance).
std::complex<double> quasi_static_image(const DielectricModel& model,
                                        double omega);

// Closed-form minimum of Re[(eps_D - 1)/(eps_D + 1)] for a pure Drude metal
// (eps_inf = 1).
DrudeMinimum drude_image_minimum(double omega_p, double gamma);

// (2/pi) * Int_0^inf dzeta (eps(i zeta)-1)/(eps(i zeta)+1) * w/(w^2 + zeta^2),
// w = omega_na (signed, eV). Substitutes zeta = |w| tan(theta), which turns
// the kernel into sign(w) d(theta), then refines composite 200-point
// Gauss-Legendre panels until the relative change is below 1e-8.
double vacuum_fluctuation_factor(const DielectricModel& model, double omega_na);

// omega_an = omega_a - omega_n in eV; positive when a -> n is a downward
// transition.
ImageFactors image_factors(const DielectricModel& model, double omega_an);

}  // namespace vdwmirror
