#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "support.hpp"
#include "vdwmirror/error.hpp"
#include "vdwmirror/trajectories.hpp"

using namespace vdwmirror;
using testsupport::ito;
using testsupport::k39;
using testsupport::mirror_hamiltonian;

namespace {

DriveConfig no_drive() {
  DriveConfig d;
  d.drives.push_back({"4S_1/2", "4P_3/2", 0.0, 0.0, 0.0});
  d.drives.push_back({"4P_3/2", "3D_5/2", 0.0, 0.0, 0.0});
  return d;
}

// Asymptotic Kolmogorov survival function Q(lambda).
double kolmogorov_q(double lambda) {
  double q = 0.0;
  for (int k = 1; k < 100; ++k) {
    q += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  }
  return std::clamp(q, 0.0, 1.0);
}

}  // namespace

TEST_SUITE("trajectories") {

TEST_CASE("split seeds are distinct and reproducible") {
  CHECK(split_seed(1, 0) == split_seed(1, 0));
  CHECK(split_seed(1, 0) != split_seed(1, 1));
  CHECK(split_seed(1, 0) != split_seed(2, 0));
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("dark ground state is stationary") {
  const auto h = build_hamiltonian(k39(), VdwCoefficients::zeros(k39()), no_drive());
  TrajectoryState s;
  s.z = 0.3;
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) step_sse(s, h, 1e-3, rng, {.gravity = false});
  CHECK(std::abs(s.psi(0) - 1.0) < 1e-15);
  CHECK(s.z == 0.3);
  CHECK(s.v == 0.0);
  CHECK(s.jump_count == 0u);
}

TEST_CASE("ground state stays dark near a surface but is attracted") {
  const auto h = build_hamiltonian(k39(), compute_vdw(k39(), ito()), no_drive());
  TrajectoryState s;
  s.z = 0.3;
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) step_sse(s, h, 1e-3, rng, {.gravity = false});
  CHECK(std::abs(std::abs(s.psi(0)) - 1.0) < 1e-15);
  CHECK(s.v < 0.0);
  CHECK(s.jump_count == 0u);
}

TEST_CASE("jump times are exponential") {
  const auto c = compute_vdw(k39(), ito());
  const auto h = build_hamiltonian(k39(), c, no_drive());
  const double z = 0.1;
  const double rate = h.rates(z)[0];
  const double dt = adaptive_dt(h, z, 0.0, 1e-3);
  const int n = 10000;
  std::vector<double> times;
  for (int i = 0; i < n; ++i) {
    Rng rng(split_seed(99, i));
    TrajectoryState s;
    s.z = z;
    s.psi = Vector3c::UnitY();
    while (s.jump_count == 0) step_sse(s, h, dt, rng, {.motion = false});
    times.push_back(s.t);
  }
  std::sort(times.begin(), times.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::exp(-rate * times[i]);
    d = std::max({d, std::abs(cdf - i / double(n)), std::abs(cdf - (i + 1) / double(n))});
  }
  const double p = kolmogorov_q((std::sqrt(double(n)) + 0.12 + 0.11 / std::sqrt(double(n))) * d);
  CAPTURE(d);
  CHECK(p > 0.01);
}

TEST_CASE("norm and energy without decay") {
  const LevelScheme closed({{"g", 0.5, LevelRole::Ground}, {"e1", 1.5, LevelRole::Excited},
                            {"e2", 2.5, LevelRole::Excited}},
                           {{"e1", "g", 1.6, 1e-300, 1.5, 0.5}, {"e2", "e1", 1.0, 1e-300, 2.5, 1.5}},
                           6.4762e-26);
  DriveConfig d;
  d.drives.push_back({"g", "e1", units::mhz_x2pi(100.0), units::mhz_x2pi(50.0), 0.0});
  d.drives.push_back({"e1", "e2", units::mhz_x2pi(100.0), 0.0, 0.0});
  const auto h = build_hamiltonian(closed, VdwCoefficients::zeros(closed), d);
  TrajectoryState s;
  s.z = 1.0;
  s.psi = Vector3c(1.0, 0.5, -0.25).normalized();
  const Matrix3c H = h.H(s.z);
  const double e0 = (s.psi.adjoint() * H * s.psi)(0, 0).real();
  const double dt = adaptive_dt(h, s.z, 0.0, 1e-3);
  Rng rng(3);
  double drift = 0.0;
  for (int i = 0; i < 100000; ++i) {
    step_sse(s, h, dt, rng, {.jumps = false, .motion = false});
    drift = std::max(drift, std::abs(s.psi.norm() - 1.0));
  }
  CHECK(drift < 1e-8);
  const double e1 = (s.psi.adjoint() * H * s.psi)(0, 0).real();
  CHECK(std::abs(e1 / e0 - 1.0) < 1e-6);
}

TEST_CASE("norm over a million damped steps") {
  const auto h = mirror_hamiltonian(ito());
  TrajectoryState s;
  s.z = 0.2;
  const double dt = adaptive_dt(h, s.z, 0.0, 1e-3);
  Rng rng(5);
  for (int i = 0; i < 1000000; ++i) step_sse(s, h, dt, rng, {.jumps = false, .motion = false});
  CHECK(std::abs(s.psi.norm() - 1.0) < 1e-6);
}

TEST_CASE("oversized step is rejected") {
  const auto h = mirror_hamiltonian(ito());
  TrajectoryState s;
  s.z = 0.2;
  s.psi = Vector3c::UnitY();
  Rng rng(1);
  CHECK_THROWS_AS(step_sse(s, h, 1.0, rng), NumericalError);
}

TEST_CASE("adaptive step obeys every cap") {
  const auto h = mirror_hamiltonian(ito());
  for (double z : {0.03, 0.3, 2.5}) {
    for (double v : {0.0, 0.14, -2.0}) {
      const double dt = adaptive_dt(h, z, v, 1e-3);
      const auto r = h.rates(z);
      CHECK(dt <= 1e-3);
      CHECK(dt * (r[0] + r[1]) <= 0.01 + 1e-15);
      CHECK(dt * h.H(z).cwiseAbs().rowwise().sum().maxCoeff() <= 0.01 + 1e-15);
      if (v != 0.0) CHECK(dt * std::abs(v) <= 2e-4 + 1e-18);
    }
  }
}

TEST_CASE("emission kicks") {
  const auto h = mirror_hamiltonian(ito());
  const auto& c = h.channels()[0];
  const double vmax = recoil_velocity(c, h.mass_kg());
  // 767 nm photon on 39K: 1.33 cm/s = 0.0133 um/us
  CHECK(std::abs(vmax / 0.0133 - 1.0) < 0.01);
  Rng rng(11);
  const int n = 100000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dv = emission_kick(c, h.mass_kg(), rng);
    CHECK(std::abs(dv) <= vmax);
    sum += dv;
    sq += dv * dv;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  const double sigma = vmax / std::sqrt(3.0);
  CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(double(n)));
  CHECK(std::abs(var / (vmax * vmax / 3.0) - 1.0) < 0.05);
}

TEST_CASE("ensembles are deterministic and complete") {
  const auto h = mirror_hamiltonian(ito());
  ScenarioConfig sc;
  sc.n_trajectories = 4;
  sc.seed = 17;
  sc.t_max = 5.0;
  const auto a = run_drop(h, sc);
  sc.threads = 2;
  const auto b = run_drop(h, sc);
  REQUIRE(a.trajectories.size() == 4u);
  CHECK(a.total() == 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.trajectories[i].outcome == b.trajectories[i].outcome);
    CHECK(a.trajectories[i].exit_time == b.trajectories[i].exit_time);
    CHECK(a.trajectories[i].jumps == b.trajectories[i].jumps);
    CHECK(a.trajectories[i].final_z == b.trajectories[i].final_z);
  }
  CHECK(a.mean_jumps == b.mean_jumps);
  // 5 us is far too short to come back up: all time out and are flagged
  CHECK(a.n_timeout == 4u);
  CHECK(a.timeout_warning);
}

TEST_CASE("scenario validation") {
  const auto h = mirror_hamiltonian(ito());
  ScenarioConfig sc;
  sc.z_escape = 5.0;
  CHECK_THROWS_AS(run_drop(h, sc), ScenarioError);
  sc = ScenarioConfig{};
  sc.n_trajectories = 0;
  CHECK_THROWS_AS(run_drop(h, sc), ScenarioError);
  sc = ScenarioConfig{};
  sc.kind = ScenarioKind::Trap;
  sc.n_trajectories = 1;
  CHECK_THROWS_AS(run_trap(mirror_hamiltonian(testsupport::ito_star(), -3.0), sc), ScenarioError);
}

TEST_CASE("force-free trap never releases the atom") {
  const auto h = build_hamiltonian(k39(), VdwCoefficients::zeros(k39()), no_drive());
  ScenarioConfig sc;
  sc.kind = ScenarioKind::Trap;
  sc.n_trajectories = 3;
  sc.start_z = 0.2;
  sc.gravity = false;
  sc.t_max = 1.0;
  const auto st = run_trap(h, sc);
  CHECK(st.n_timeout == 3u);
  for (const auto& r : st.trajectories) CHECK(r.final_z == 0.2);
}

TEST_CASE("trap minimum is located on the profile") {
  const auto h = mirror_hamiltonian(ito(), -3.0);
  const auto p = effective_potential(h, log_grid(2.0, 0.02, 400));
  const auto z = locate_trap_minimum(p, 0.02, 0.5);
  REQUIRE(z);
  CHECK(*z > 0.15);
  CHECK(*z < 0.22);
}

TEST_CASE("slow atom conserves energy without jumps") {
  const auto h = mirror_hamiltonian(ito());
  const auto p = effective_potential(h, log_grid(2.0, 0.02, 800));
  auto u_at = [&](double z) {
    if (z >= p.z.front()) return 0.0;
    std::size_t k = 1;
    while (p.z[k] > z) ++k;
    const double t = (z - p.z[k]) / (p.z[k - 1] - p.z[k]);
    return p.U_eff[k] + t * (p.U_eff[k - 1] - p.U_eff[k]);
  };
  const double hm = units::hbar_over_mass(h.mass_kg());
  TrajectoryState s;
  s.z = 3.0;
  s.v = -0.01;
  auto energy = [&] {
    return 0.5 * s.v * s.v / hm + u_at(s.z) + constants::gravity_um_per_us2 * s.z / hm;
  };
  const double e0 = energy();
  const double ke0 = 0.5 * s.v * s.v / hm;
  Rng rng(1);
  double worst = 0.0;
  while (s.v < 0.0 && s.z > 0.02 && s.t < 2000.0) {
    step_sse(s, h, adaptive_dt(h, s.z, s.v, 1e-3), rng, {.jumps = false});
    worst = std::max(worst, std::abs(energy() - e0));
  }
  CAPTURE(s.z);
  CAPTURE(s.t);
  CAPTURE(worst / ke0);
  CHECK(s.v >= 0.0);
  CHECK(worst < 0.02 * ke0);
}

TEST_CASE("frozen ensemble approaches the steady state") {
  const auto h = mirror_hamiltonian(ito());
  const double z = 0.15;
  const auto ss = steady_state(h, z);
  const Matrix3c avg = frozen_ensemble_average(h, z, 1000, 1.0, 5, 1e-3, 1);
  CHECK((avg - ss.rho).cwiseAbs().maxCoeff() < 0.06);
  CHECK(std::abs(avg.trace() - 1.0) < 1e-12);
}

TEST_CASE("low-pass filter of eta") {
  TrajectoryRecord rec;
  for (int i = 0; i < 50; ++i) {
    rec.t.push_back(0.01 * i);
    rec.z.push_back(1.0 - 0.01 * i + (i > 30 ? 0.02 * (i - 30) : 0.0));
    rec.v.push_back(0.0);
    rec.force.push_back(0.0);
    rec.eta.push_back({0.2, 0.3, 0.5});
  }
  const auto f = quasi_mean_eta(rec, 2.45);
  for (const auto& s : f.incident) CHECK(s.eta[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(f.incident.size() + f.reflected.size() == 50u);
  CHECK(f.incident.back().z == doctest::Approx(0.7));

  for (int i = 0; i < 50; ++i) rec.eta[i] = {double(i % 3), 0.0, 1.0 - (i % 3)};
  const auto raw = quasi_mean_eta(rec, INFINITY);
  for (std::size_t i = 0; i < raw.incident.size(); ++i) CHECK(raw.incident[i].eta[0] == rec.eta[i][0]);
}

TEST_CASE("recorded series includes jumps") {
  const auto h = mirror_hamiltonian(ito());
  ScenarioConfig sc;
  sc.t_max = 2.0;
  sc.seed = 3;
  const auto r = simulate_trajectory(h, sc, sc.z_switch, 0, true);
  REQUIRE(r.record);
  CHECK(r.record->t.size() > 100u);
  CHECK(r.record->jumps.size() == r.jumps);
  for (const auto& e : r.record->eta) CHECK(std::abs(e[0] + e[1] + e[2] - 1.0) < 1e-9);
}

}  // TEST_SUITE
