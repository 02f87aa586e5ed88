#pragma once

#include "stirap/matrix3.hpp"
#include "stirap/protocols.hpp"
#include "stirap/sim_config.hpp"
#include "stirap/trajectory.hpp"

namespace stirap {

/// Three-level Hamiltonian in the bare basis {|1>, |2>, |3>}:
/// [[0, Omega_P, 0], [Omega_P, 0, Omega_S], [0, Omega_S, 0]].
ComplexMatrix3 hamiltonian3(const DriveSample& s);

/// Dephasing of the intermediate level: gamma (F rho F - rho) with
/// F = diag(-1, 1, -1). Only the 1-2 and 2-3 coherences decay; the 1-3
/// coherence is untouched.
ComplexMatrix3 dissipator3(const ComplexMatrix3& rho, double gamma);

/// Master-equation right-hand side in the bare frame:
/// -i [H(t), rho] + D(rho). Hermitian and traceless for Hermitian input.
ComplexMatrix3 rhs_bare(double t, const ComplexMatrix3& rho, const SimConfig& cfg);

/// Fixed-step RK4 integration of the bare-frame master equation over
/// [0, T0], starting from |1><1| unless overridden. Throws NumericFailure
/// if any certification bound is breached.
Trajectory evolve_bare(const SimConfig& cfg, const DensityMatrix3& rho0 = DensityMatrix3::pure(0));

} // namespace stirap
