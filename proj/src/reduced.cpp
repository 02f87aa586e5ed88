#include "stirap/reduced.hpp"

#include <cmath>
#include <numbers>

#include "integrate.hpp"
#include "stirap/rk4.hpp"

namespace stirap {

ReducedState rhs_reduced(double t, const ReducedState& s, const SimConfig& cfg) {
    const DriveSample d = sample(cfg.protocol, t);
    const double root2 = std::numbers::sqrt2;
    return {-2.0 * root2 * d.theta_dot * s.a,
            d.omega * s.b - root2 / 4.0 * d.theta_dot * (1.0 - 3.0 * s.rho_dd),
            -d.omega * s.a - 2.0 * cfg.gamma * s.b};
}

ReducedTrajectory evolve_reduced(const SimConfig& cfg) {
    cfg.validate();
    const double t0 = cfg.protocol.t0;
    const long n = cfg.steps();
    const double h = cfg.dt_effective();
    const long stride = cfg.stride_effective();

    const auto rhs = [&cfg, t0](double t, const ReducedState& s) {
        return rhs_reduced(detail::clamp_time(t, t0), s, cfg);
    };

    ReducedTrajectory traj;
    traj.dt_used = h;
    traj.steps = n;

    ReducedState s{1.0, 0.0, 0.0};
    traj.times.push_back(0.0);
    traj.states.push_back(s);

    for (long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        s = rk4_step(rhs, t, h, s);
        const double t_next = detail::clamp_time(static_cast<double>(k + 1) * h, t0);
        if (!std::isfinite(s.rho_dd) || !std::isfinite(s.a) || !std::isfinite(s.b))
            throw NumericFailure("reduced: non-finite state", t_next);
        if (s.rho_dd < -kPositivityTol || s.rho_dd > 1.0 + kPositivityTol)
            throw NumericFailure("reduced: rho_dd left [0, 1] beyond tolerance", t_next);
        if ((k + 1) % stride == 0 || k + 1 == n) {
            traj.times.push_back(t_next);
            traj.states.push_back(s);
        }
    }
    return traj;
}

double analytic_rho_dd(double t, double gamma, double theta_dot, double omega) {
    const double chi = 2.0 * gamma * theta_dot * theta_dot / (omega * omega);
    if (chi == 0.0) return 1.0;
    return 1.0 / 3.0 + 2.0 / 3.0 * std::exp(-3.0 * chi * t);
}

EfficiencyReport transfer_efficiency(double gamma, double omega0, double t0) {
    const double theta_dot = std::numbers::pi / (2.0 * t0);
    EfficiencyReport r;
    r.chi = 2.0 * gamma * theta_dot * theta_dot / (omega0 * omega0);
    r.exponent = 3.0 * std::numbers::pi * gamma * theta_dot / (omega0 * omega0);
    r.rho33_final = gamma == 0.0 ? 1.0 : 1.0 / 3.0 + 2.0 / 3.0 * std::exp(-r.exponent);
    r.adiabatic_margin_1 = theta_dot / omega0;
    r.adiabatic_margin_2 = r.exponent;
    return r;
}

double classical_reference(double gamma13, const Protocol& protocol) {
    if (gamma13 < 0.0 || !std::isfinite(gamma13))
        throw ContractViolation("classical_reference: gamma13 must be nonnegative and finite");
    if (gamma13 == 0.0) return 1.0;

    double eta;
    if (protocol.kind == ProtocolKind::LinearSine) {
        eta = 3.0 * protocol.t0 / 8.0;
    } else {
        // composite Simpson over sin^2(2 theta(t)), fixed panel count
        constexpr int kPanels = 10000;
        const double h = protocol.t0 / kPanels;
        const auto f = [&](double t) {
            const double s2 = std::sin(2.0 * sample(protocol, t).theta);
            return s2 * s2;
        };
        double acc = f(0.0) + f(protocol.t0);
        for (int i = 1; i < kPanels; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
        eta = 0.75 * acc * h / 3.0;
    }
    return 1.0 / 3.0 + 2.0 / 3.0 * std::exp(-gamma13 * eta);
}

std::pair<double, double> adiabatic_margins(const SimConfig& cfg) {
    const Protocol& p = cfg.protocol;
    if (p.kind == ProtocolKind::LinearSine) {
        const double theta_dot = std::numbers::pi / (2.0 * p.t0);
        return {theta_dot / p.omega0,
                3.0 * std::numbers::pi * cfg.gamma * theta_dot / (p.omega0 * p.omega0)};
    }
    constexpr int kGrid = 10000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= kGrid; ++i) {
        const DriveSample s = sample(p, p.t0 * i / kGrid);
        m1 = std::max(m1, s.theta_dot / s.omega);
        m2 = std::max(m2, 3.0 * std::numbers::pi * cfg.gamma * s.theta_dot / (s.omega * s.omega));
    }
    return {m1, m2};
}

DensityMatrix3 reduced_to_adiabatic(const ReducedState& s) {
    DensityMatrix3 rho;
    const double wings = 0.5 * (1.0 - s.rho_dd);
    const Complex pd(s.a, s.b);
    rho.m(0, 0) = wings;
    rho.m(1, 1) = s.rho_dd;
    rho.m(2, 2) = wings;
    rho.m(0, 1) = pd;
    rho.m(1, 0) = std::conj(pd);
    rho.m(1, 2) = pd;
    rho.m(2, 1) = std::conj(pd);
    return rho;
}

} // namespace stirap
