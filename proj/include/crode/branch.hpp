#pragma once

// Continuous logarithms. The principal log jumps by 2*pi*i across the
// negative real axis; first integrals built from logs must instead follow
// the branch selected continuously along a trajectory.

#include <cmath>
#include <complex>
#include <numbers>

namespace crode {

/// The representative of `angle` + 2*pi*k closest to `reference`.
inline double unwrap_angle(double angle, double reference) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  return angle + two_pi * std::round((reference - angle) / two_pi);
}

/// log(w) on the branch whose imaginary part is nearest `reference_arg`.
inline std::complex<double> tracked_log(std::complex<double> w, double reference_arg) {
  return {std::log(std::abs(w)), unwrap_angle(std::arg(w), reference_arg)};
}

}  // namespace crode
