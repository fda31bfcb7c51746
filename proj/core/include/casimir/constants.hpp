#pragma once

#include <complex>
#include <numbers>

namespace casimir {

using cplx = std::complex<double>;

/// CODATA 2018 values, SI units.
namespace phys {
inline constexpr double c = 299792458.0;            // m/s
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double kB = 1.380649e-23;          // J/K
inline constexpr double eps0 = 8.8541878128e-12;    // F/m
}  // namespace phys

inline constexpr double pi = std::numbers::pi;
inline constexpr double zeta3 = 1.2020569031595942854;

inline constexpr cplx I{0.0, 1.0};

}  // namespace casimir
