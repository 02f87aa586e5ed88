#pragma once

#include "stirap/matrix3.hpp"
#include "stirap/protocols.hpp"
#include "stirap/sim_config.hpp"
#include "stirap/trajectory.hpp"

namespace stirap {

/// A DensityMatrix3 whose rows/columns refer to the instantaneous dressed
/// basis {|+>, |d>, |->} instead of the bare levels.
using AdiabaticState = DensityMatrix3;

/// The unitary W(theta) whose columns are the dressed states |+>, |d>, |->
/// expressed in the bare basis. W^dagger H3 W = diag(Omega, 0, -Omega).
ComplexMatrix3 mixing_matrix(double theta);

/// M = W^dagger dW/dt = (sqrt2/2) theta_dot [[0,-1,0],[1,0,1],[0,-1,0]],
/// the real antisymmetric generator induced by the rotating basis.
ComplexMatrix3 gauge_matrix(double theta_dot);

/// F in the dressed basis: [[0,0,-1],[0,-1,0],[-1,0,0]]. Independent of theta;
/// it fixes |d> up to sign, so dressed dephasing never drains the dark level.
ComplexMatrix3 dressed_dephasing_generator();

/// Dressed-frame master-equation right-hand side:
/// -i [H_a, rho_a] - [M, rho_a] + gamma (F_a rho_a F_a - rho_a).
ComplexMatrix3 rhs_adiabatic(double t, const ComplexMatrix3& rho_a, const SimConfig& cfg);

/// Integrates the dressed-frame master equation. rho0 is given in the bare
/// frame and rotated by W(theta(0)) before stepping, so a run started from
/// |1><1| matches evolve_bare after the inverse rotation. Same certification
/// as evolve_bare.
Trajectory evolve_adiabatic(const SimConfig& cfg,
                            const DensityMatrix3& rho0 = DensityMatrix3::pure(0));

/// Basis changes between the two frames at mixing angle theta.
ComplexMatrix3 to_adiabatic_frame(const ComplexMatrix3& rho_bare, double theta);
ComplexMatrix3 to_bare_frame(const ComplexMatrix3& rho_adiabatic, double theta);

} // namespace stirap
