#pragma once

// Physical constants (CODATA 2018). All angular frequencies in the library
// are rad/s; conversion from the tabulated Hz values happens in the
// SystemParams factory, nowhere else.
namespace omsim::constants {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J/K
inline constexpr double c_light = 299792458.0;   // m/s
inline constexpr double two_pi = 6.283185307179586476925286766559;

}  // namespace omsim::constants
