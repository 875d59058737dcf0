#pragma once

// CODATA 2018 values, SI units. Fixed at compile time.

namespace ferrowrite::constants {

inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double avogadro = 6.02214076e23;          // 1/mol

}  // namespace ferrowrite::constants
