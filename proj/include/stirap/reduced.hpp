#pragma once

#include <utility>
#include <vector>

#include "stirap/matrix3.hpp"
#include "stirap/sim_config.hpp"

namespace stirap {

/// State of the closed three-variable system: the dark-state population and
/// the +d coherence split as rho_+d = a + i b. The remaining dressed-frame
/// entries follow from rho_++ = rho_-- = (1 - rho_dd)/2, rho_d- = rho_+d and
/// rho_+- = 0.
struct ReducedState {
    double rho_dd = 0.0;
    double a = 0.0;
    double b = 0.0;

    friend ReducedState operator+(const ReducedState& x, const ReducedState& y) {
        return {x.rho_dd + y.rho_dd, x.a + y.a, x.b + y.b};
    }
    friend ReducedState operator*(double s, const ReducedState& x) {
        return {s * x.rho_dd, s * x.a, s * x.b};
    }
};

/// Derivative of the reduced system:
///   d(rho_dd)/dt = -2 sqrt2 theta_dot a
///   da/dt        =  Omega b - (sqrt2/4) theta_dot (1 - 3 rho_dd)
///   db/dt        = -Omega a - 2 gamma b
ReducedState rhs_reduced(double t, const ReducedState& s, const SimConfig& cfg);

struct ReducedTrajectory {
    std::vector<double> times;
    std::vector<ReducedState> states;
    double dt_used = 0.0;
    long steps = 0;

    const ReducedState& final_state() const { return states.back(); }
};

/// RK4 integration of the reduced system from (rho_dd, a, b) = (1, 0, 0).
ReducedTrajectory evolve_reduced(const SimConfig& cfg);

/// Quasi-static solution 1/3 + (2/3) exp(-3 chi t) with chi = 2 gamma
/// theta_dot^2 / Omega^2, valid when theta_dot and Omega are constant.
double analytic_rho_dd(double t, double gamma, double theta_dot, double omega);

/// Closed-form transfer efficiency for the constant-coupling protocol, plus
/// both adiabaticity margins. The margins are reported as plain numbers; the
/// regime of near-complete transfer needs both to be well below 1.
struct EfficiencyReport {
    double rho33_final = 0.0;       // 1/3 + (2/3) exp(-exponent)
    double chi = 0.0;               // 2 gamma theta_dot^2 / Omega^2
    double exponent = 0.0;          // 3 pi gamma theta_dot / Omega^2
    double adiabatic_margin_1 = 0.0; // theta_dot / Omega
    double adiabatic_margin_2 = 0.0; // 3 pi gamma theta_dot / Omega^2
};

EfficiencyReport transfer_efficiency(double gamma, double omega0, double t0);

/// Reference formula for three-level dephasing on all coherences:
/// 1/3 + (2/3) exp(-gamma13 eta) with eta = (3/4) integral of sin^2(2 theta).
/// eta is 3 T0 / 8 in closed form for LinearSine and a composite-Simpson
/// quadrature (1e4 panels) for the Gaussian protocol. In the model treated
/// here the 1-3 coherence does not decay (gamma13 = 0), for which the formula
/// returns exactly 1 regardless of gamma; the rates gamma12/gamma23 of the
/// source model drop out of it entirely.
double classical_reference(double gamma13, const Protocol& protocol);

/// (max over t of theta_dot/Omega, max over t of 3 pi gamma theta_dot/Omega^2).
/// Closed form for LinearSine; a 1e4-point grid maximization over [0, T0] for
/// the Gaussian protocol. Note the Gaussian maximizer sits at the window edge,
/// where the couplings decay much faster than theta_dot does.
std::pair<double, double> adiabatic_margins(const SimConfig& cfg);

/// Dressed-frame state implied by a reduced state (see ReducedState).
DensityMatrix3 reduced_to_adiabatic(const ReducedState& s);

} // namespace stirap
