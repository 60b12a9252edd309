#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vdwmirror/atom.hpp"
#include "vdwmirror/vdw.hpp"

namespace vdwmirror {

using Matrix3c = Eigen::Matrix3cd;
using Vector3c = Eigen::Vector3cd;
using Liouvillian = Eigen::Matrix<std::complex<double>, 9, 9>;

// A laser on one ladder transition. Rabi frequency and detuning in rad/us,
// kappa_z in 1/um. Detuning is laser minus free-space transition frequency.
struct Drive {
  std::string lower;
  std::string upper;
  double omega_rabi_0 = 0.0;
  double detuning = 0.0;
  double kappa_z = 0.0;
};

// Exactly two drives: levels[0] <-> levels[1] and levels[1] <-> levels[2].
struct DriveConfig {
  std::vector<Drive> drives;
};

// One spontaneous-emission channel upper -> lower.
struct DecayChannel {
  std::size_t lower = 0;
  std::size_t upper = 0;
  double omega = 0.0;        // transition angular frequency, rad/us
  double rate_fs = 0.0;      // 1/us
  double decay_coeff = 0.0;  // angular us^-1 um^3, R_tot = rate_fs + coeff/z^3
};

// H, dH/dz and channel rates at one height, evaluated together.
struct LocalOperators {
  double z = 0.0;
  Matrix3c H;
  Matrix3c dH;
  std::array<double, 2> rates{};
};

struct HamiltonianOptions {
  // Add the ground-level shift delta_g(z) to every diagonal entry, so the
  // ground-state van der Waals attraction acts on the centre of mass.
  // Relative detunings are unaffected.
  bool ground_shift_offset = true;
};

// Position-dependent rotating-frame Hamiltonian of the driven three-level
// ladder g, e1, e2 and its decay channels e1 -> g, e2 -> e1.
//
//   H(z) = diag(o, o - D1(z), o - D2(z)) + (W1(z)/2)(|g><e1| + h.c.)
//                                         + (W2(z)/2)(|e1><e2| + h.c.)
//   D1(z) = d1 - (s_e1 - s_g),  D2(z) = d1 + d2 - (s_e2 - s_g)
//   Wk(z) = Wk0 exp(-kappa_k z),  o = s_g (or 0 without the offset)
class AtomFieldHamiltonian {
 public:
  static constexpr int dimension = 3;

  Matrix3c H(double z) const;
  Matrix3c dH_dz(double z) const;
  // Total decay rate of each channel at z.
  std::array<double, 2> rates(double z) const;
  LocalOperators local(double z) const;

  const std::array<DecayChannel, 2>& channels() const { return channels_; }
  double mass_kg() const { return mass_kg_; }
  const std::array<std::string, 3>& level_names() const { return names_; }

  double rabi(int drive, double z) const;
  const std::array<Drive, 2>& drives() const { return drives_; }

 private:
  friend AtomFieldHamiltonian build_hamiltonian(const LevelScheme&,
                                                const VdwCoefficients&,
                                                const DriveConfig&,
                                                HamiltonianOptions);
  std::array<std::string, 3> names_;
  std::array<Drive, 2> drives_;
  std::array<double, 3> shift_coeff_{};  // angular us^-1 um^3 per level
  std::array<DecayChannel, 2> channels_{};
  double mass_kg_ = 0.0;
  bool ground_offset_ = true;
};

AtomFieldHamiltonian build_hamiltonian(const LevelScheme& scheme,
                                       const VdwCoefficients& coeffs,
                                       const DriveConfig& drives,
                                       HamiltonianOptions options = {});

// Superoperator of d(rho)/dt = i[rho, H] + sum_c R_c D[sigma_c](rho) acting
// on the row-major vectorisation vec(rho)[3 i + j] = rho(i, j).
Liouvillian liouvillian(const Matrix3c& H, const std::array<DecayChannel, 2>& channels,
                        const std::array<double, 2>& rates);

// Applies the superoperator directly to a density matrix.
Matrix3c apply_liouvillian(const Matrix3c& rho, const Matrix3c& H,
                           const std::array<DecayChannel, 2>& channels,
                           const std::array<double, 2>& rates);

struct ForceEigen {
  std::array<double, 3> values{};  // descending: repulsive first
  Matrix3c vectors;                // columns match `values`
  std::array<double, 3> eta{};     // <f_i| rho |f_i>
};

struct SteadyStateResult {
  double z = 0.0;
  Matrix3c rho;
  double force_expect = 0.0;          // Tr(-dH/dz rho), (rad/us)/um
  std::array<double, 3> level_pops{};
  ForceEigen force;
  double heating_rate = 0.0;          // K/s
  double residual = 0.0;              // ||L(rho)|| / ||L||
  double singular_gap = 0.0;          // sigma_{n-1} / sigma_max
};

SteadyStateResult steady_state(const AtomFieldHamiltonian& h, double z);

ForceEigen force_eigenanalysis(const AtomFieldHamiltonian& h, double z,
                               const Matrix3c& rho);

// hbar^2/(3 c^2 k_B m) sum_c omega_c^2 R_c(z) rho_{upper,upper}, K/s.
double heating_rate(const AtomFieldHamiltonian& h, double z, const Matrix3c& rho);

struct PotentialProfile {
  std::vector<double> z;                  // descending, um
  std::vector<SteadyStateResult> points;
  std::vector<double> U_eff;              // rad/us, U_eff(z[0]) = 0
  // Force eigenvalues / populations with branch labels followed by maximal
  // eigenvector overlap between neighbouring grid points.
  std::vector<std::array<double, 3>> tracked_values;
  std::vector<std::array<double, 3>> tracked_eta;

  std::vector<double> U_eff_mhz() const;
};

// n log-spaced points from z_max down to z_min.
std::vector<double> log_grid(double z_max, double z_min, std::size_t n);

PotentialProfile effective_potential(const AtomFieldHamiltonian& h,
                                     const std::vector<double>& grid,
                                     unsigned threads = 1);

// Interior local minima of U_eff (indices into the profile).
std::vector<std::size_t> local_minima(const PotentialProfile& profile);

// Parabolic refinement of a grid minimum; returns (z, U) in um and rad/us.
std::pair<double, double> refine_minimum(const PotentialProfile& profile,
                                         std::size_t index);

struct PerturbativeVdw {
  double value = 0.0;  // rad/us
  bool regime_ok = true;
};

// U_vdW ~ (W(z)^2 / (4 d^2)) dE_e^r(z) + dE_g^vf(z) for the lower drive.
// NaN (and regime_ok = false) for a resonant drive.
PerturbativeVdw perturbative_vdw_potential(const VdwCoefficients& coeffs,
                                           const DriveConfig& drives, double z);

}  // namespace vdwmirror
