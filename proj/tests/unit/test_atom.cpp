#include <cmath>

#include <doctest.h>

#include "support.hpp"
#include "vdwmirror/atom.hpp"
#include "vdwmirror/error.hpp"

using namespace vdwmirror;

namespace {

const TransitionRecord& find(const std::string& upper, const std::string& lower) {
  const auto* t = testsupport::k39().find_transition(upper, lower);
  REQUIRE(t != nullptr);
  return *t;
}

}  // namespace

TEST_SUITE("atom") {

TEST_CASE("dipole strength coefficients") {
  CHECK(std::abs(dipole_strength_coeff(find("3D_5/2", "4P_3/2"), PerturbedEnd::Upper) / 1.604 - 1) < 0.01);
  CHECK(std::abs(dipole_strength_coeff(find("4P_3/2", "4S_1/2"), PerturbedEnd::Lower) / 1.3447 - 1) < 0.01);
}

TEST_CASE("angular factor is 1 for equal J and for downward partners") {
  TransitionRecord t{"b", "a", 1.0, 10.0, 1.5, 1.5};
  CHECK(dipole_strength_coeff(t, PerturbedEnd::Lower) == dipole_strength_coeff(t, PerturbedEnd::Upper));
  TransitionRecord u{"b", "a", 1.0, 10.0, 1.5, 0.5};
  // factor 1 + 2 (3/2 - 1/2) / 2 = 2 from below
  CHECK(dipole_strength_coeff(u, PerturbedEnd::Lower) ==
        doctest::Approx(2.0 * dipole_strength_coeff(u, PerturbedEnd::Upper)).epsilon(1e-14));
}

TEST_CASE("dipole strength matches the unit convention by hand") {
  // 24.5 us^-1 * (c/w)^3 / 16 / (2 pi) * 1e3
  const double lam = constants::c_um_per_us / (1.0524 * constants::ev_to_rad_per_us);
  const double expect = 24.5 * lam * lam * lam / 16.0 / constants::two_pi * 1e3;
  CHECK(dipole_strength_coeff(find("3D_5/2", "4P_3/2"), PerturbedEnd::Upper) ==
        doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("saturation intensities") {
  CHECK(std::abs(saturation_intensity(find("4P_3/2", "4S_1/2")) / 3.4 - 1) < 0.02);
  CHECK(std::abs(saturation_intensity(find("3D_5/2", "4P_3/2")) / 0.47 - 1) < 0.02);
  TransitionRecord t = find("4P_3/2", "4S_1/2");
  const double base = saturation_intensity(t);
  t.rate_fs *= 2.0;
  CHECK(saturation_intensity(t) == doctest::Approx(2.0 * base).epsilon(1e-15));
}

TEST_CASE("power for a given Rabi frequency") {
  const double w = units::mhz_x2pi(100.0);
  const double pd = rabi_to_intensity(find("3D_5/2", "4P_3/2"), w);
  CHECK(std::abs(pd / 618.0 - 1) < 0.03);
  const double sp = rabi_to_intensity(find("4P_3/2", "4S_1/2"), w);
  CHECK(sp > 1800.0);
  CHECK(sp < 2000.0);
  CHECK(rabi_to_intensity(find("4P_3/2", "4S_1/2"), 0.0) == 0.0);
  CHECK_THROWS_AS(rabi_to_intensity(find("4P_3/2", "4S_1/2"), -1.0), DomainError);
}

TEST_CASE("thermal de Broglie wavelength") {
  const double m = constants::mass_k39_kg;
  CHECK(thermal_debroglie(m, 4e-6) == doctest::Approx(0.5 * thermal_debroglie(m, 1e-6)).epsilon(1e-14));
  const double mk = thermal_debroglie(m, 1e-3) * 1e3;  // nm
  const double uk = thermal_debroglie(m, 1e-6) * 1e3;
  CHECK(std::abs(mk - 8.9) < 0.1);
  CHECK(std::abs(uk - 280.0) < 3.0);
  CHECK_THROWS_AS(thermal_debroglie(m, 0.0), DomainError);
}

TEST_CASE("fall kinematics") {
  const auto one = fall_kinematics(1.0);
  CHECK(std::abs(one.speed_um_per_us / 0.14 - 1) < 0.01);
  CHECK(std::abs(one.kinetic_mhz / 0.96 - 1) < 0.02);
  const auto zero = fall_kinematics(0.0);
  CHECK(zero.speed_um_per_us == 0.0);
  CHECK(zero.kinetic_mhz == 0.0);
  CHECK(fall_kinematics(4.0).speed_um_per_us == doctest::Approx(2.0 * one.speed_um_per_us).epsilon(1e-15));
}

TEST_CASE("unit round trips") {
  for (double e : {0.3948, 1.0524, 3.0637}) {
    CHECK(std::abs(units::angular_to_ev(units::ev_to_angular(e)) / e - 1) < 1e-12);
  }
  CHECK(units::angular_to_khz_um3(units::khz_um3_to_angular(3.9)) == doctest::Approx(3.9).epsilon(1e-14));
}

TEST_CASE("level scheme validation") {
  std::vector<Level> levels{{"g", 0.5, LevelRole::Ground}, {"e", 1.5, LevelRole::Excited}};
  CHECK_THROWS_AS(LevelScheme(levels, {{"e", "g", -1.0, 1.0, 1.5, 0.5}}, 1e-26), ConfigError);
  CHECK_THROWS_AS(LevelScheme(levels, {{"e", "g", 1.0, 0.0, 1.5, 0.5}}, 1e-26), ConfigError);
  CHECK_THROWS_AS(LevelScheme(levels, {}, 0.0), ConfigError);
  CHECK_THROWS_AS(LevelScheme({{"g", 0.7, LevelRole::Ground}}, {}, 1e-26), ConfigError);
  CHECK_THROWS_AS(LevelScheme({{"g", 0.5, LevelRole::Ground}, {"g", 0.5, LevelRole::Excited}}, {}, 1e-26),
                  ConfigError);
  const LevelScheme ok(levels, {{"e", "g", 1.0, 1.0, 1.5, 0.5}}, 1e-26);
  CHECK(ok.level_index("e") == 1u);
  CHECK(ok.find_transition("g", "e") != nullptr);
  CHECK(ok.find_transition("g", "x") == nullptr);
}

}  // TEST_SUITE
