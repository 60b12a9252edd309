#include "vdwmirror/materials.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "vdwmirror/error.hpp"
#include "vdwmirror/quadrature.hpp"

namespace vdwmirror {

namespace {

constexpr int kGaussOrder = 200;
constexpr double kQuadratureRelTol = 1e-8;
constexpr int kMaxDoublings = 6;
constexpr double kResonanceGuard = 1e-12;

const quadrature::GaussLegendreRule& base_rule() {
  static const quadrature::GaussLegendreRule rule =
      quadrature::gauss_legendre(kGaussOrder);
  return rule;
}

}  // namespace

DielectricModel::DielectricModel(DielectricKind kind, double eps_inf,
                                 double omega_p, double gamma,
                                 std::string name)
    : kind_(kind),
      eps_inf_(eps_inf),
      omega_p_(omega_p),
      gamma_(gamma),
      name_(std::move(name)) {}

DielectricModel DielectricModel::drude(double eps_inf, double omega_p_ev,
                                       double gamma_ev, std::string name) {
  if (!(omega_p_ev >= 0.0)) {
    throw DomainError("Drude model requires omega_p >= 0");
  }
  if (!(gamma_ev > 0.0)) {
    throw DomainError("Drude model requires gamma > 0");
  }
  if (!(eps_inf > 0.0)) {
    throw DomainError("Drude model requires eps_inf > 0");
  }
  return DielectricModel(DielectricKind::DrudeWithBackground, eps_inf,
                         omega_p_ev, gamma_ev, std::move(name));
}

DielectricModel DielectricModel::dispersionless(double eps_inf,
                                                std::string name) {
  if (!(eps_inf > 0.0)) {
    throw DomainError("dispersionless model requires eps_inf > 0");
  }
  return DielectricModel(DielectricKind::Dispersionless, eps_inf, 0.0, 0.0,
                         std::move(name));
}

std::complex<double> permittivity(const DielectricModel& model, double omega) {
  if (!(omega > 0.0)) throw DomainError("permittivity: omega must be > 0");
  if (model.kind() == DielectricKind::Dispersionless) {
    return {model.eps_inf(), 0.0};
  }
  const std::complex<double> denom(omega * omega, omega * model.gamma());
  return model.eps_inf() - model.omega_p() * model.omega_p() / denom;
}

double permittivity_imag_axis(const DielectricModel& model, double zeta) {
  if (!(zeta > 0.0)) {
    throw DomainError("permittivity_imag_axis: zeta must be > 0");
  }
  if (model.kind() == DielectricKind::Dispersionless) return model.eps_inf();
  return model.eps_inf() +
         model.omega_p() * model.omega_p() / (zeta * (zeta + model.gamma()));
}

std::complex<double> quasi_static_image(const DielectricModel& model,
                                        double omega) {
  const auto eps = permittivity(model, omega);
  if (std::abs(eps + 1.0) < kResonanceGuard) {
    throw NumericalError("quasi_static_image: exact surface resonance");
  }
  return (eps - 1.0) / (eps + 1.0);
}

DrudeMinimum drude_image_minimum(double omega_p, double gamma) {
  if (!(omega_p > 0.0)) throw DomainError("drude_image_minimum: omega_p <= 0");
  if (!(gamma >= 0.0)) throw DomainError("drude_image_minimum: gamma < 0");
  const double ratio = gamma / omega_p;
  DrudeMinimum m;
  m.omega_min = std::sqrt(0.5 * omega_p * omega_p +
                          gamma * omega_p / std::numbers::sqrt2);
  if (ratio == 0.0) {
    m.real_min = -HUGE_VAL;
    m.imag_at_min = HUGE_VAL;
    return m;
  }
  m.real_min = -0.5 / (std::numbers::sqrt2 * ratio + ratio * ratio);
  m.imag_at_min = -m.real_min * std::sqrt(1.0 + std::numbers::sqrt2 * ratio);
  return m;
}

double vacuum_fluctuation_factor(const DielectricModel& model,
                                 double omega_na) {
  if (omega_na == 0.0 || !std::isfinite(omega_na)) {
    throw DomainError("vacuum_fluctuation_factor: omega_na must be nonzero");
  }
  const double scale = std::abs(omega_na);
  const double sign = omega_na > 0.0 ? 1.0 : -1.0;
  // Integrand after zeta = |w| tan(theta): image(i zeta) d(theta) * sign(w).
  // The endpoint theta = pi/2 is never sampled by Gauss-Legendre nodes.
  auto integrand = [&](double theta) {
    const double zeta = scale * std::tan(theta);
    if (zeta <= 0.0) {
      // zeta -> 0+: eps(i zeta) -> infinity for any Drude metal.
      if (model.kind() == DielectricKind::DrudeWithBackground &&
          model.omega_p() > 0.0) {
        return 1.0;
      }
      const double e = model.eps_inf();
      return (e - 1.0) / (e + 1.0);
    }
    const double e = permittivity_imag_axis(model, zeta);
    return (e - 1.0) / (e + 1.0);
  };
  const auto res = quadrature::refine_until_converged(
      integrand, 0.0, 0.5 * std::numbers::pi, base_rule(), kQuadratureRelTol,
      kMaxDoublings);
  if (!res.converged) {
    throw NumericalError("vacuum_fluctuation_factor: quadrature did not converge");
  }
  return sign * (2.0 / std::numbers::pi) * res.value;
}

ImageFactors image_factors(const DielectricModel& model, double omega_an) {
  if (omega_an == 0.0 || !std::isfinite(omega_an)) {
    throw DomainError("image_factors: omega_an must be nonzero");
  }
  ImageFactors f;
  f.delta_vf = vacuum_fluctuation_factor(model, -omega_an);
  if (omega_an > 0.0) {
    const auto image = quasi_static_image(model, omega_an);
    f.delta_r = 2.0 * image.real();
    f.r = 4.0 * image.imag();
  }
  return f;
}

}  // namespace vdwmirror
