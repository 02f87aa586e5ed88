#pragma once

#include "stirap/sim_config.hpp"
#include "stirap/trajectory.hpp"

namespace stirap {

/// Validation oracle: integrates the three-spin master equation in the full
/// 8-dimensional space |q1 q2 q3> with
///   H(t) = delta * sum_j sigma^z_j
///        + Omega_P(t) (sigma^+_1 sigma^-_2 + h.c.)
///        + Omega_S(t) (sigma^+_2 sigma^-_3 + h.c.)
/// and dephasing gamma (sigma^z_2 rho sigma^z_2 - rho), starting from
/// |100><100|. The returned trajectory is the projection onto the
/// single-excitation states {|100>, |010>, |001>}; cert.max_leakage tracks
/// the total population found outside that sector.
///
/// This engine shares no right-hand-side code with the 3-level engines.
Trajectory evolve_full8(const SimConfig& cfg);

} // namespace stirap
