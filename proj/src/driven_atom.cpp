#include "vdwmirror/driven_atom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "vdwmirror/constants.hpp"
#include "vdwmirror/error.hpp"
#include "vdwmirror/parallel.hpp"

namespace vdwmirror {

namespace {

constexpr double kDegeneracyGap = 1e-6;

std::string format_z(double z) {
  std::ostringstream os;
  os.precision(6);
  os << z;
  return os.str();
}

}  // namespace

AtomFieldHamiltonian build_hamiltonian(const LevelScheme& scheme,
                                       const VdwCoefficients& coeffs,
                                       const DriveConfig& drives,
                                       HamiltonianOptions options) {
  const auto& levels = scheme.levels();
  if (levels.size() != 3) {
    throw ConfigError("driven atom: the level scheme must list exactly 3 ladder levels");
  }
  if (drives.drives.size() != 2) {
    throw ConfigError("driven atom: exactly two drives are required");
  }
  AtomFieldHamiltonian h;
  h.mass_kg_ = scheme.mass_kg();
  h.ground_offset_ = options.ground_shift_offset;
  for (int i = 0; i < 3; ++i) {
    h.names_[i] = levels[i].name;
    h.shift_coeff_[i] = units::khz_um3_to_angular(coeffs.shift(levels[i].name).total);
  }
  for (int k = 0; k < 2; ++k) {
    const Drive& d = drives.drives[k];
    const auto& lower = levels[k].name;
    const auto& upper = levels[k + 1].name;
    if (d.lower != lower || d.upper != upper) {
      throw ConfigError("drive " + std::to_string(k) + " (" + d.lower + " <-> " +
                        d.upper + ") must bind adjacent ladder levels " + lower +
                        " <-> " + upper);
    }
    if (!(d.omega_rabi_0 >= 0.0) || !(d.kappa_z >= 0.0) || !std::isfinite(d.detuning)) {
      throw ConfigError("drive " + std::to_string(k) +
                        ": requires omega_rabi_0 >= 0, kappa_z >= 0, finite detuning");
    }
    const TransitionRecord* t = scheme.find_transition(lower, upper);
    if (t == nullptr || t->upper != upper) {
      throw ConfigError("no transition record " + upper + " -> " + lower);
    }
    h.drives_[k] = d;
    DecayChannel& c = h.channels_[k];
    c.lower = static_cast<std::size_t>(k);
    c.upper = static_cast<std::size_t>(k + 1);
    c.omega = units::ev_to_angular(t->omega_ev);
    c.rate_fs = t->rate_fs;
    c.decay_coeff = units::khz_um3_to_angular(coeffs.decay(lower, upper));
  }
  return h;
}

double AtomFieldHamiltonian::rabi(int drive, double z) const {
  const Drive& d = drives_[drive];
  if (d.kappa_z == 0.0) return d.omega_rabi_0;
  return d.omega_rabi_0 * std::exp(-d.kappa_z * z);
}

Matrix3c AtomFieldHamiltonian::H(double z) const {
  const double inv_z3 = 1.0 / (z * z * z);
  const double s0 = shift_coeff_[0] * inv_z3;
  const double s1 = shift_coeff_[1] * inv_z3;
  const double s2 = shift_coeff_[2] * inv_z3;
  const double det1 = drives_[0].detuning - (s1 - s0);
  const double det2 = drives_[0].detuning + drives_[1].detuning - (s2 - s0);
  const double offset = ground_offset_ ? s0 : 0.0;
  const double w1 = 0.5 * rabi(0, z);
  const double w2 = 0.5 * rabi(1, z);
  Matrix3c m = Matrix3c::Zero();
  m(0, 0) = offset;
  m(1, 1) = offset - det1;
  m(2, 2) = offset - det2;
  m(0, 1) = m(1, 0) = w1;
  m(1, 2) = m(2, 1) = w2;
  return m;
}

Matrix3c AtomFieldHamiltonian::dH_dz(double z) const {
  const double z2 = z * z;
  const double d_inv_z3 = -3.0 / (z2 * z2);
  const double ds0 = shift_coeff_[0] * d_inv_z3;
  const double ds1 = shift_coeff_[1] * d_inv_z3;
  const double ds2 = shift_coeff_[2] * d_inv_z3;
  const double offset = ground_offset_ ? ds0 : 0.0;
  Matrix3c m = Matrix3c::Zero();
  m(0, 0) = offset;
  m(1, 1) = offset + (ds1 - ds0);
  m(2, 2) = offset + (ds2 - ds0);
  m(0, 1) = m(1, 0) = -0.5 * drives_[0].kappa_z * rabi(0, z);
  m(1, 2) = m(2, 1) = -0.5 * drives_[1].kappa_z * rabi(1, z);
  return m;
}

std::array<double, 2> AtomFieldHamiltonian::rates(double z) const {
  const double inv_z3 = 1.0 / (z * z * z);
  return {channels_[0].rate_fs + channels_[0].decay_coeff * inv_z3,
          channels_[1].rate_fs + channels_[1].decay_coeff * inv_z3};
}

LocalOperators AtomFieldHamiltonian::local(double z) const {
  LocalOperators op;
  op.z = z;
  const double inv_z3 = 1.0 / (z * z * z);
  const double d_inv_z3 = -3.0 * inv_z3 / z;
  const double offset = ground_offset_ ? 1.0 : 0.0;
  const double w1 = 0.5 * rabi(0, z);
  const double w2 = 0.5 * rabi(1, z);
  op.H.setZero();
  op.dH.setZero();
  for (int k = 0; k < 3; ++k) {
    // diagonal k: offset * s0 + (s_k - s0) - cumulative detuning
    const double rel = k == 0 ? 0.0 : shift_coeff_[k] - shift_coeff_[0];
    const double c = offset * shift_coeff_[0] + rel;
    op.H(k, k) = c * inv_z3;
    op.dH(k, k) = c * d_inv_z3;
  }
  op.H(1, 1) -= drives_[0].detuning;
  op.H(2, 2) -= drives_[0].detuning + drives_[1].detuning;
  op.H(0, 1) = op.H(1, 0) = w1;
  op.H(1, 2) = op.H(2, 1) = w2;
  op.dH(0, 1) = op.dH(1, 0) = -drives_[0].kappa_z * w1;
  op.dH(1, 2) = op.dH(2, 1) = -drives_[1].kappa_z * w2;
  op.rates = {channels_[0].rate_fs + channels_[0].decay_coeff * inv_z3,
              channels_[1].rate_fs + channels_[1].decay_coeff * inv_z3};
  return op;
}

Liouvillian liouvillian(const Matrix3c& H, const std::array<DecayChannel, 2>& channels,
                        const std::array<double, 2>& rates) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  const Matrix3c I = Matrix3c::Identity();
  // vec(A rho B) = kron(A, B^T) vec(rho) for row-major vec.
  auto kron = [](const Matrix3c& a, const Matrix3c& b) {
    Liouvillian k;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) k.block<3, 3>(3 * r, 3 * c) = a(r, c) * b;
    return k;
  };
  Liouvillian L = i * kron(I, H.transpose()) - i * kron(H, I);
  for (std::size_t k = 0; k < channels.size(); ++k) {
    Matrix3c s = Matrix3c::Zero();
    s(channels[k].lower, channels[k].upper) = 1.0;
    const Matrix3c sds = s.adjoint() * s;
    L += rates[k] * (kron(s, s.conjugate()) - 0.5 * kron(sds, I) -
                     0.5 * kron(I, sds.transpose()));
  }
  return L;
}

Matrix3c apply_liouvillian(const Matrix3c& rho, const Matrix3c& H,
                           const std::array<DecayChannel, 2>& channels,
                           const std::array<double, 2>& rates) {
  const std::complex<double> i(0.0, 1.0);
  Matrix3c out = i * (rho * H - H * rho);
  for (std::size_t k = 0; k < channels.size(); ++k) {
    const auto lo = channels[k].lower;
    const auto up = channels[k].upper;
    // sigma rho sigma^dag = rho(up, up) |lo><lo|; sigma^dag sigma = |up><up|.
    out(lo, lo) += rates[k] * rho(up, up);
    out.row(up) -= 0.5 * rates[k] * rho.row(up);
    out.col(up) -= 0.5 * rates[k] * rho.col(up);
  }
  return out;
}

ForceEigen force_eigenanalysis(const AtomFieldHamiltonian& h, double z,
                               const Matrix3c& rho) {
  const Matrix3c F = -h.dH_dz(z);
  Eigen::SelfAdjointEigenSolver<Matrix3c> solver(F);
  ForceEigen out;
  // Eigen sorts ascending; report descending so index 0 is the most repulsive.
  for (int k = 0; k < 3; ++k) {
    const int src = 2 - k;
    out.values[k] = solver.eigenvalues()(src);
    out.vectors.col(k) = solver.eigenvectors().col(src);
    out.eta[k] = (out.vectors.col(k).adjoint() * rho * out.vectors.col(k))(0, 0).real();
  }
  return out;
}

double heating_rate(const AtomFieldHamiltonian& h, double z, const Matrix3c& rho) {
  const auto rates = h.rates(z);
  double sum = 0.0;  // SI: rad^2/s^2 * 1/s
  for (std::size_t k = 0; k < rates.size(); ++k) {
    const auto& c = h.channels()[k];
    const double omega_si = c.omega * 1e6;
    sum += omega_si * omega_si * rates[k] * 1e6 * rho(c.upper, c.upper).real();
  }
  return constants::hbar_si * constants::hbar_si /
         (3.0 * constants::c_si * constants::c_si * constants::boltzmann_si *
          h.mass_kg()) *
         sum;
}

SteadyStateResult steady_state(const AtomFieldHamiltonian& h, double z) {
  if (!(z > 0.0)) throw DomainError("steady_state: z must be > 0");
  const Matrix3c H = h.H(z);
  const auto rates = h.rates(z);
  const Liouvillian L = liouvillian(H, h.channels(), rates);

  Eigen::JacobiSVD<Liouvillian> svd(L);
  const auto& sv = svd.singularValues();
  const double gap = sv(7) / sv(0);
  if (!(gap >= kDegeneracyGap)) {
    throw DegeneracyError("steady state is not unique at z = " + format_z(z) +
                          " um (singular-value gap " + format_z(gap) + ")");
  }

  // Replace the rho(0,0) equation by the trace constraint.
  Liouvillian A = L;
  A.row(0).setZero();
  A(0, 0) = A(0, 4) = A(0, 8) = 1.0;
  Eigen::Matrix<std::complex<double>, 9, 1> b = Eigen::Matrix<std::complex<double>, 9, 1>::Zero();
  b(0) = 1.0;
  const Eigen::Matrix<std::complex<double>, 9, 1> x = A.fullPivLu().solve(b);

  SteadyStateResult out;
  out.z = z;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out.rho(r, c) = x(3 * r + c);
  out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();
  out.rho /= out.rho.trace().real();

  Eigen::Matrix<std::complex<double>, 9, 1> v;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) v(3 * r + c) = out.rho(r, c);
  out.residual = (L * v).norm() / L.norm();
  out.singular_gap = gap;

  const Matrix3c dH = h.dH_dz(z);
  out.force_expect = -(dH * out.rho).trace().real();
  for (int k = 0; k < 3; ++k) out.level_pops[k] = out.rho(k, k).real();
  out.force = force_eigenanalysis(h, z, out.rho);
  out.heating_rate = heating_rate(h, z, out.rho);
  return out;
}

std::vector<double> PotentialProfile::U_eff_mhz() const {
  std::vector<double> out(U_eff.size());
  std::transform(U_eff.begin(), U_eff.end(), out.begin(), units::angular_to_mhz);
  return out;
}

std::vector<double> log_grid(double z_max, double z_min, std::size_t n) {
  if (!(z_max > z_min) || !(z_min > 0.0) || n < 2) {
    throw ConfigError("log_grid: requires z_max > z_min > 0 and n >= 2");
  }
  std::vector<double> z(n);
  const double ratio = std::log(z_min / z_max) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) z[i] = z_max * std::exp(ratio * static_cast<double>(i));
  z.front() = z_max;
  z.back() = z_min;
  return z;
}

PotentialProfile effective_potential(const AtomFieldHamiltonian& h,
                                     const std::vector<double>& grid,
                                     unsigned threads) {
  if (grid.size() < 2) throw ConfigError("effective_potential: grid needs >= 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) {
      throw ConfigError("effective_potential: grid must be strictly descending");
    }
  }
  PotentialProfile p;
  p.z = grid;
  p.points.resize(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { p.points[i] = steady_state(h, grid[i]); });

  // U(z) = Int_{z_max}^{z} Tr(dH/dz rho) dz' = -Int force dz'.
  p.U_eff.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dz = grid[i] - grid[i - 1];
    p.U_eff[i] = p.U_eff[i - 1] -
                 0.5 * (p.points[i].force_expect + p.points[i - 1].force_expect) * dz;
  }

  p.tracked_values.resize(grid.size());
  p.tracked_eta.resize(grid.size());
  std::array<int, 3> order{0, 1, 2};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ForceEigen& cur = p.points[i].force;
    if (i > 0) {
      const ForceEigen& prev = p.points[i - 1].force;
      // Greedy assignment of each previous branch to the unused current
      // eigenvector with the largest overlap.
      std::array<int, 3> next{-1, -1, -1};
      std::array<bool, 3> used{false, false, false};
      std::array<std::array<double, 3>, 3> overlap{};
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          overlap[a][b] = std::abs(prev.vectors.col(order[a]).dot(cur.vectors.col(b)));
      for (int round = 0; round < 3; ++round) {
        double best = -1.0;
        int ba = -1, bb = -1;
        for (int a = 0; a < 3; ++a) {
          if (next[a] >= 0) continue;
          for (int b = 0; b < 3; ++b) {
            if (used[b]) continue;
            if (overlap[a][b] > best) best = overlap[a][b], ba = a, bb = b;
          }
        }
        next[ba] = bb;
        used[bb] = true;
      }
      order = next;
    }
    for (int a = 0; a < 3; ++a) {
      p.tracked_values[i][a] = cur.values[order[a]];
      p.tracked_eta[i][a] = cur.eta[order[a]];
    }
  }
  return p;
}

std::vector<std::size_t> local_minima(const PotentialProfile& profile) {
  std::vector<std::size_t> out;
  const auto& U = profile.U_eff;
  for (std::size_t i = 1; i + 1 < U.size(); ++i) {
    if (U[i] < U[i - 1] && U[i] <= U[i + 1]) out.push_back(i);
  }
  return out;
}

std::pair<double, double> refine_minimum(const PotentialProfile& profile,
                                         std::size_t index) {
  const auto& z = profile.z;
  const auto& U = profile.U_eff;
  if (index == 0 || index + 1 >= z.size()) return {z[index], U[index]};
  const double x0 = z[index - 1], x1 = z[index], x2 = z[index + 1];
  const double y0 = U[index - 1], y1 = U[index], y2 = U[index + 1];
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (!(a > 0.0)) return {x1, y1};
  const double zm = std::clamp(-b / (2.0 * a), std::min(x0, x2), std::max(x0, x2));
  const double c = y1 - a * x1 * x1 - b * x1;
  return {zm, a * zm * zm + b * zm + c};
}

PerturbativeVdw perturbative_vdw_potential(const VdwCoefficients& coeffs,
                                           const DriveConfig& drives, double z) {
  if (!(z > 0.0)) throw DomainError("perturbative_vdw_potential: z must be > 0");
  if (drives.drives.empty()) throw ConfigError("perturbative_vdw_potential: no drives");
  const Drive& d = drives.drives.front();
  const double inv_z3 = 1.0 / (z * z * z);
  const double excited_r =
      units::khz_um3_to_angular(coeffs.shift(d.upper).resonant) * inv_z3;
  const double ground_vf = units::khz_um3_to_angular(coeffs.shift(d.lower).vf) * inv_z3;
  const double ground_total = units::khz_um3_to_angular(coeffs.shift(d.lower).total) * inv_z3;
  const double excited_total = units::khz_um3_to_angular(coeffs.shift(d.upper).total) * inv_z3;
  const double rabi = d.omega_rabi_0 * std::exp(-d.kappa_z * z);

  PerturbativeVdw out;
  if (rabi == 0.0) {
    out.value = ground_vf;
  } else if (d.detuning == 0.0) {
    out.value = std::numeric_limits<double>::quiet_NaN();
  } else {
    out.value = rabi * rabi / (4.0 * d.detuning * d.detuning) * excited_r + ground_vf;
  }
  const double det = std::abs(d.detuning);
  const double largest_shift = std::max(std::abs(ground_total), std::abs(excited_total));
  out.regime_ok = det >= 5.0 * rabi && det >= 5.0 * largest_shift;
  return out;
}

}  // namespace vdwmirror
