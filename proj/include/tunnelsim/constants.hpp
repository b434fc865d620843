#pragma once

// Physical constants, CODATA 2018. Kept in one place so that golden test
// values stay bit-stable across the code base.

namespace tunnelsim::constants {

inline constexpr double speed_of_light = 299792458.0;        // m/s, exact
inline constexpr double hbar = 1.054571817e-34;              // J s
inline constexpr double planck = 6.62607015e-34;             // J s, exact
inline constexpr double electron_mass = 9.1093837015e-31;    // kg
inline constexpr double joule_per_ev = 1.602176634e-19;      // J/eV, exact
inline constexpr double pi = 3.141592653589793238462643383279502884;

inline constexpr double ev_to_joule(double ev) { return ev * joule_per_ev; }
inline constexpr double joule_to_ev(double j) { return j / joule_per_ev; }

}  // namespace tunnelsim::constants
