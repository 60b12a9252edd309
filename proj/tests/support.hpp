#pragma once

#include <string>

#include "vdwmirror/config.hpp"
#include "vdwmirror/constants.hpp"
#include "vdwmirror/driven_atom.hpp"
#include "vdwmirror/vdw.hpp"

namespace testsupport {

inline std::string data_path(const std::string& file) {
  return std::string(VDWMIRROR_DATA_DIR) + "/" + file;
}

inline std::string config_path(const std::string& file) {
  return std::string(VDWMIRROR_CONFIG_DIR) + "/" + file;
}

inline const vdwmirror::LevelScheme& k39() {
  static const vdwmirror::LevelScheme scheme = vdwmirror::load_level_scheme(data_path("k39.json"));
  return scheme;
}

inline vdwmirror::DielectricModel ito() {
  return vdwmirror::DielectricModel::drude(3.8, 2.19, 0.111, "ITO");
}

inline vdwmirror::DielectricModel ito_star() {
  return vdwmirror::DielectricModel::dispersionless(3.8, "ITO*");
}

// Mirror parameters {W1, D1, k1, W2, D2} / 2pi = {100, 50, 1/0.767 um, 100, d2} MHz, k2 = 0.
inline vdwmirror::DriveConfig mirror_drives(double d2_mhz = 0.0) {
  using vdwmirror::units::mhz_x2pi;
  vdwmirror::DriveConfig d;
  d.drives.push_back({"4S_1/2", "4P_3/2", mhz_x2pi(100.0), mhz_x2pi(50.0),
                      vdwmirror::constants::two_pi / 0.767});
  d.drives.push_back({"4P_3/2", "3D_5/2", mhz_x2pi(100.0), mhz_x2pi(d2_mhz), 0.0});
  return d;
}

inline vdwmirror::AtomFieldHamiltonian mirror_hamiltonian(const vdwmirror::DielectricModel& m,
                                                          double d2_mhz = 0.0) {
  return vdwmirror::build_hamiltonian(k39(), vdwmirror::compute_vdw(k39(), m),
                                      mirror_drives(d2_mhz));
}

}  // namespace testsupport
