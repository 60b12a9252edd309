#include "vdwmirror/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vdwmirror/constants.hpp"
#include "vdwmirror/error.hpp"
#include "vdwmirror/parallel.hpp"

namespace vdwmirror {

namespace {

constexpr double kMaxJumpProbability = 0.1;
constexpr double kSpatialStep = 2e-4;  // um
constexpr double kRateStep = 0.01;
constexpr double kPhaseStep = 0.01;

double expected_force(const AtomFieldHamiltonian& h, double z, const Vector3c& psi) {
  return -(psi.adjoint() * h.dH_dz(z) * psi)(0, 0).real();
}

std::array<double, 3> eta_of(const AtomFieldHamiltonian& h, double z, const Vector3c& psi) {
  const Matrix3c rho = psi * psi.adjoint();
  return force_eigenanalysis(h, z, rho).eta;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t x = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Reflected: return "reflected";
    case Outcome::Absorbed: return "absorbed";
    case Outcome::Timeout: return "timeout";
  }
  return "unknown";
}

namespace {

double dt_at(const LocalOperators& op, double v, double dt_max) {
  const double gamma_tot = op.rates[0] + op.rates[1];
  // max row sum bounds the spectral norm from above
  double norm = 0.0;
  for (int r = 0; r < 3; ++r) norm = std::max(norm, op.H.row(r).cwiseAbs().sum());
  double dt = dt_max;
  if (gamma_tot > 0.0) dt = std::min(dt, kRateStep / gamma_tot);
  if (norm > 0.0) dt = std::min(dt, kPhaseStep / norm);
  if (v != 0.0) dt = std::min(dt, kSpatialStep / std::abs(v));
  return dt;
}

double acceleration(const AtomFieldHamiltonian& h, const LocalOperators& op,
                    const Vector3c& psi, const StepOptions& opt) {
  double a = -units::hbar_over_mass(h.mass_kg()) * (psi.adjoint() * op.dH * psi)(0, 0).real();
  if (opt.gravity) a -= constants::gravity_um_per_us2;
  return a;
}

// One step from the operators at s.z; leaves the operators at the new
// position in `next`.
void advance(TrajectoryState& s, const AtomFieldHamiltonian& h, const LocalOperators& here,
             LocalOperators& next, double dt, Rng& rng, const StepOptions& opt) {
  const auto& channels = h.channels();
  const auto& rates = here.rates;

  double v_half = s.v;
  double z_new = s.z;
  if (opt.motion) {
    if (std::isnan(s.accel)) s.accel = acceleration(h, here, s.psi, opt);
    v_half = s.v + 0.5 * s.accel * dt;
    z_new = s.z + v_half * dt;
  }

  int jumped = -1;
  if (opt.jumps) {
    std::array<double, 2> p{};
    for (std::size_t c = 0; c < channels.size(); ++c) {
      p[c] = rates[c] * std::norm(s.psi(channels[c].upper)) * dt;
    }
    if (p[0] + p[1] > kMaxJumpProbability) {
      throw NumericalError("step_sse: jump probability per step exceeds 0.1");
    }
    const double u = rng.uniform();
    if (u < p[0]) {
      jumped = 0;
    } else if (u < p[0] + p[1]) {
      jumped = 1;
    }
  }

  if (jumped >= 0) {
    const auto& c = channels[jumped];
    const std::complex<double> amp = s.psi(c.upper);
    s.psi.setZero();
    s.psi(c.lower) = amp / std::abs(amp);
  } else {
    // psi' = A psi, A = -i H - (1/2) sum R |up><up|
    Matrix3c A = std::complex<double>(0.0, -1.0) * here.H;
    for (std::size_t c = 0; c < channels.size(); ++c) {
      A(channels[c].upper, channels[c].upper) -= 0.5 * rates[c];
    }
    const Vector3c k1 = A * s.psi;
    const Vector3c k2 = A * (s.psi + 0.5 * dt * k1);
    const Vector3c k3 = A * (s.psi + 0.5 * dt * k2);
    const Vector3c k4 = A * (s.psi + dt * k3);
    s.psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    s.psi.normalize();
  }

  if (opt.motion) {
    s.z = z_new;
    next = h.local(s.z);
    s.accel = acceleration(h, next, s.psi, opt);
    s.v = v_half + 0.5 * s.accel * dt;
  } else {
    next = here;
  }
  if (jumped >= 0) {
    ++s.jump_count;
    const double dv = opt.motion ? emission_kick(channels[jumped], h.mass_kg(), rng) : 0.0;
    s.v += dv;
    if (opt.log_jumps) s.jump_log.push_back({s.t + dt, jumped, s.z, dv});
  }
  s.t += dt;
}

}  // namespace

double adaptive_dt(const AtomFieldHamiltonian& h, double z, double v, double dt_max) {
  return dt_at(h.local(z), v, dt_max);
}

double recoil_velocity(const DecayChannel& channel, double mass_kg) {
  // hbar omega / c / m in SI m/s, numerically equal to um/us.
  return constants::hbar_si * channel.omega * 1e6 / constants::c_si / mass_kg;
}

double emission_kick(const DecayChannel& channel, double mass_kg, Rng& rng) {
  return recoil_velocity(channel, mass_kg) * rng.uniform(-1.0, 1.0);
}

void step_sse(TrajectoryState& s, const AtomFieldHamiltonian& h, double dt, Rng& rng,
              const StepOptions& opt) {
  const LocalOperators here = h.local(s.z);
  LocalOperators next;
  advance(s, h, here, next, dt, rng, opt);
}

double EnsembleStats::reflected_fraction() const {
  const auto n = total();
  return n == 0 ? 0.0 : static_cast<double>(n_reflected) / static_cast<double>(n);
}

TrajectoryResult simulate_trajectory(const AtomFieldHamiltonian& h,
                                     const ScenarioConfig& scenario, double start_z,
                                     std::size_t index, bool record) {
  Rng rng(split_seed(scenario.seed, index));
  TrajectoryState s;
  s.psi = Vector3c::Zero();
  s.psi(0) = 1.0;
  s.z = start_z;
  s.v = 0.0;
  if (scenario.kind == ScenarioKind::Drop) {
    const double fall = scenario.drop_height_um - scenario.z_switch;
    if (fall > 0.0 && scenario.gravity) {
      s.v = -std::sqrt(2.0 * constants::gravity_um_per_us2 * fall);
    }
  }
  StepOptions opt;
  opt.jumps = scenario.jumps;
  opt.gravity = scenario.gravity;
  opt.log_jumps = record;

  TrajectoryResult res;
  TrajectoryRecord rec;
  double next_sample = 0.0;
  auto sample = [&] {
    rec.t.push_back(s.t);
    rec.z.push_back(s.z);
    rec.v.push_back(s.v);
    rec.force.push_back(expected_force(h, s.z, s.psi));
    rec.eta.push_back(eta_of(h, s.z, s.psi));
    next_sample = s.t + scenario.record_dt;
  };
  if (record) sample();

  const bool drop = scenario.kind == ScenarioKind::Drop;
  const double z_outer = drop ? scenario.z_switch : scenario.z_escape;
  res.outcome = Outcome::Timeout;
  LocalOperators here = h.local(s.z);
  LocalOperators next;
  while (s.t < scenario.t_max) {
    const double dt = std::min(dt_at(here, s.v, scenario.dt_max), scenario.t_max - s.t);
    advance(s, h, here, next, dt, rng, opt);
    std::swap(here, next);
    if (record && s.t >= next_sample) sample();
    if (s.z <= scenario.z_absorb) {
      res.outcome = Outcome::Absorbed;
      break;
    }
    if (s.z >= z_outer && (!drop || s.v > 0.0)) {
      res.outcome = Outcome::Reflected;
      break;
    }
  }
  if (record && rec.t.back() != s.t) sample();
  res.exit_time = s.t;
  res.jumps = s.jump_count;
  res.final_z = s.z;
  if (record) {
    rec.jumps = std::move(s.jump_log);
    res.record = std::move(rec);
  }
  return res;
}

namespace {

EnsembleStats run_ensemble(const AtomFieldHamiltonian& h, const ScenarioConfig& scenario,
                           double start_z) {
  if (scenario.n_trajectories < 1) throw ScenarioError("n_trajectories must be >= 1");
  if (!(scenario.z_absorb < scenario.z_escape && scenario.z_escape <= scenario.z_switch)) {
    throw ScenarioError("boundaries must satisfy z_absorb < z_escape <= z_switch");
  }
  if (!(scenario.t_max > 0.0) || !(scenario.dt_max > 0.0)) {
    throw ScenarioError("t_max and dt_max must be > 0");
  }
  EnsembleStats stats;
  stats.start_z = start_z;
  stats.trajectories.resize(scenario.n_trajectories);
  parallel_for(scenario.n_trajectories, scenario.threads, [&](std::size_t i) {
    stats.trajectories[i] =
        simulate_trajectory(h, scenario, start_z, i, i < scenario.record_count);
  });

  std::vector<double> escapes;
  double jump_sum = 0.0;
  for (const auto& t : stats.trajectories) {
    jump_sum += static_cast<double>(t.jumps);
    switch (t.outcome) {
      case Outcome::Reflected: ++stats.n_reflected; break;
      case Outcome::Absorbed: ++stats.n_absorbed; break;
      case Outcome::Timeout: ++stats.n_timeout; break;
    }
    if (t.outcome != Outcome::Timeout) escapes.push_back(t.exit_time);
  }
  const double n = static_cast<double>(scenario.n_trajectories);
  stats.mean_jumps = jump_sum / n;
  stats.timeout_warning = static_cast<double>(stats.n_timeout) > 0.05 * n;
  if (!escapes.empty()) {
    stats.mean_escape_time =
        std::accumulate(escapes.begin(), escapes.end(), 0.0) / static_cast<double>(escapes.size());
    std::sort(escapes.begin(), escapes.end());
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      // linear interpolation between order statistics
      const double pos = q * static_cast<double>(escapes.size() - 1);
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const auto hi = std::min(lo + 1, escapes.size() - 1);
      const double frac = pos - static_cast<double>(lo);
      stats.escape_time_quantiles.emplace_back(q, escapes[lo] + frac * (escapes[hi] - escapes[lo]));
    }
  }
  return stats;
}

}  // namespace

EnsembleStats run_drop(const AtomFieldHamiltonian& h, const ScenarioConfig& scenario) {
  if (scenario.kind != ScenarioKind::Drop) throw ScenarioError("run_drop: scenario kind is not drop");
  if (!(scenario.drop_height_um >= scenario.z_switch)) {
    throw ScenarioError("run_drop: drop height must be >= z_switch");
  }
  return run_ensemble(h, scenario, scenario.z_switch);
}

std::optional<double> locate_trap_minimum(const PotentialProfile& profile, double z_lo,
                                          double z_hi) {
  std::optional<std::size_t> best;
  for (std::size_t i : local_minima(profile)) {
    if (!(profile.z[i] > z_lo && profile.z[i] < z_hi)) continue;
    if (!best || profile.U_eff[i] < profile.U_eff[*best]) best = i;
  }
  if (!best) return std::nullopt;
  return refine_minimum(profile, *best).first;
}

EnsembleStats run_trap(const AtomFieldHamiltonian& h, const ScenarioConfig& scenario) {
  if (scenario.kind != ScenarioKind::Trap) throw ScenarioError("run_trap: scenario kind is not trap");
  double start = 0.0;
  if (scenario.start_z) {
    start = *scenario.start_z;
  } else {
    const auto profile =
        effective_potential(h, log_grid(2.0, scenario.z_absorb, 400), scenario.threads);
    const auto zmin = locate_trap_minimum(profile, scenario.z_absorb, scenario.z_escape);
    if (!zmin) throw ScenarioError("run_trap: no U_eff local minimum inside (z_absorb, z_escape)");
    start = *zmin;
  }
  if (!(start > scenario.z_absorb && start < scenario.z_escape)) {
    throw ScenarioError("run_trap: start position outside (z_absorb, z_escape)");
  }
  return run_ensemble(h, scenario, start);
}

QuasiMeanEta quasi_mean_eta(const TrajectoryRecord& record, double cutoff) {
  QuasiMeanEta out;
  if (record.t.empty()) return out;
  const auto turn = static_cast<std::size_t>(
      std::min_element(record.z.begin(), record.z.end()) - record.z.begin());
  std::array<double, 3> y = record.eta.front();
  for (std::size_t k = 0; k < record.t.size(); ++k) {
    if (k > 0) {
      const double dt = record.t[k] - record.t[k - 1];
      const double alpha = std::isinf(cutoff) ? 1.0 : 1.0 - std::exp(-cutoff * dt);
      for (int i = 0; i < 3; ++i) y[i] += alpha * (record.eta[k][i] - y[i]);
    }
    (k <= turn ? out.incident : out.reflected).push_back({record.z[k], y});
  }
  return out;
}

Matrix3c frozen_ensemble_average(const AtomFieldHamiltonian& h, double z, std::size_t n,
                                 double duration, std::uint64_t seed, double dt_max,
                                 unsigned threads) {
  std::vector<Matrix3c> finals(n);
  StepOptions opt;
  opt.motion = false;
  opt.gravity = false;
  const double dt = adaptive_dt(h, z, 0.0, dt_max);
  parallel_for(n, threads, [&](std::size_t i) {
    Rng rng(split_seed(seed, i));
    TrajectoryState s;
    s.psi = Vector3c::Zero();
    s.psi(0) = 1.0;
    s.z = z;
    while (s.t < duration) step_sse(s, h, std::min(dt, duration - s.t), rng, opt);
    finals[i] = s.psi * s.psi.adjoint();
  });
  Matrix3c sum = Matrix3c::Zero();
  for (const auto& m : finals) sum += m;
  return sum / static_cast<double>(n);
}

}  // namespace vdwmirror
