#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vdwmirror/driven_atom.hpp"

namespace vdwmirror {

// Per-trajectory random stream. Bits come from a 64-bit Mersenne twister;
// doubles are formed from the top 53 bits so the sequence is identical on
// every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Seed of trajectory `index`: splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

struct JumpEvent {
  double t = 0.0;
  int channel = 0;  // index into AtomFieldHamiltonian::channels()
  double z = 0.0;
  double dv = 0.0;
};

struct TrajectoryState {
  Vector3c psi = Vector3c::UnitX();
  double z = 0.0;  // um
  double v = 0.0;  // um/us
  double t = 0.0;  // us
  std::size_t jump_count = 0;
  std::vector<JumpEvent> jump_log;
  // Acceleration at (z, psi), cached between steps; NaN when stale.
  double accel = std::numeric_limits<double>::quiet_NaN();
};

struct StepOptions {
  bool jumps = true;
  bool motion = true;
  bool gravity = true;
  bool log_jumps = false;
};

// dt = min(dt_max, 0.01/Gamma_tot(z), 0.01/||H(z)||, 2e-4 um/|v|).
double adaptive_dt(const AtomFieldHamiltonian& h, double z, double v, double dt_max);

// Advances one step of length dt: either a quantum jump on one decay channel
// or RK4 evolution under H - (i/2) sum R sigma^dag sigma, followed by
// renormalisation, with velocity-Verlet centre-of-mass motion in between.
// Throws NumericalError if the total jump probability exceeds 0.1.
void step_sse(TrajectoryState& state, const AtomFieldHamiltonian& h, double dt,
              Rng& rng, const StepOptions& options = {});

// z-projection of an isotropic recoil: (hbar omega / c) / m * u, u ~ U[-1, 1].
double emission_kick(const DecayChannel& channel, double mass_kg, Rng& rng);
double recoil_velocity(const DecayChannel& channel, double mass_kg);

enum class ScenarioKind { Drop, Trap };
enum class Outcome { Reflected, Absorbed, Timeout };

std::string to_string(Outcome outcome);

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::Drop;
  double drop_height_um = 1000.0;
  std::size_t n_trajectories = 100;
  std::uint64_t seed = 1;
  double z_switch = 3.0;
  double z_absorb = 0.02;
  double z_escape = 0.5;
  double t_max = 200.0;   // us, counted from the start of SSE integration
  double dt_max = 1e-3;   // us
  bool gravity = true;
  bool jumps = true;
  // Trap start position; located from the U_eff profile when unset.
  std::optional<double> start_z;
  // Trajectories [0, record_count) keep a time series sampled every
  // record_dt microseconds.
  std::size_t record_count = 0;
  double record_dt = 2e-3;
  unsigned threads = 1;
};

struct TrajectoryRecord {
  std::vector<double> t;
  std::vector<double> z;
  std::vector<double> v;
  std::vector<double> force;  // <psi|F|psi>, (rad/us)/um
  std::vector<std::array<double, 3>> eta;
  std::vector<JumpEvent> jumps;
};

struct TrajectoryResult {
  Outcome outcome = Outcome::Timeout;
  double exit_time = 0.0;  // us since the SSE start
  std::size_t jumps = 0;
  double final_z = 0.0;
  std::optional<TrajectoryRecord> record;
};

struct EnsembleStats {
  std::size_t n_reflected = 0;
  std::size_t n_absorbed = 0;
  std::size_t n_timeout = 0;
  double mean_jumps = 0.0;
  double mean_escape_time = 0.0;  // over trajectories that did not time out
  std::vector<std::pair<double, double>> escape_time_quantiles;
  double start_z = 0.0;
  bool timeout_warning = false;   // more than 5% timed out
  std::vector<TrajectoryResult> trajectories;

  std::size_t total() const { return n_reflected + n_absorbed + n_timeout; }
  double reflected_fraction() const;
};

// Initial state and classification boundaries of one trajectory.
TrajectoryResult simulate_trajectory(const AtomFieldHamiltonian& h,
                                     const ScenarioConfig& scenario, double start_z,
                                     std::size_t index, bool record);

// Drop from rest at drop_height_um: ballistic fall to z_switch, then SSE.
// Reflected when z climbs back through z_switch, absorbed at z <= z_absorb.
EnsembleStats run_drop(const AtomFieldHamiltonian& h, const ScenarioConfig& scenario);

// Start at rest (ground state) at the U_eff minimum inside (z_absorb, z_escape).
// Outcome Reflected means escape through z_escape. Throws ScenarioError when
// no interior minimum exists and start_z is unset.
EnsembleStats run_trap(const AtomFieldHamiltonian& h, const ScenarioConfig& scenario);

// Deepest local U_eff minimum strictly inside (z_lo, z_hi), refined.
std::optional<double> locate_trap_minimum(const PotentialProfile& profile, double z_lo,
                                          double z_hi);

struct EtaSample {
  double z = 0.0;
  std::array<double, 3> eta{};
};

struct QuasiMeanEta {
  std::vector<EtaSample> incident;   // up to and including the turning point
  std::vector<EtaSample> reflected;
};

// Single-pole low-pass of the recorded eta series,
// y_k = y_{k-1} + (1 - exp(-cutoff dt_k)) (eta_k - y_{k-1}), indexed by z
// and split at the turning point (minimum z).
QuasiMeanEta quasi_mean_eta(const TrajectoryRecord& record, double cutoff);

// Mean of |psi><psi| over n frozen-position trajectories started in the
// ground state and run for `duration` us.
Matrix3c frozen_ensemble_average(const AtomFieldHamiltonian& h, double z, std::size_t n,
                                 double duration, std::uint64_t seed, double dt_max,
                                 unsigned threads);

}  // namespace vdwmirror
