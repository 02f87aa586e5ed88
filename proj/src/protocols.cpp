#include "stirap/protocols.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stirap {

namespace {
double sq(double x) { return x * x; }
} // namespace

Protocol Protocol::linear_sine(double omega0, double t0) {
    Protocol p;
    p.kind = ProtocolKind::LinearSine;
    p.omega0 = omega0;
    p.t0 = t0;
    p.validate();
    return p;
}

Protocol Protocol::gaussian(double omega0, double t_width, double tau) {
    return gaussian_custom_window(omega0, t_width, tau, 8.0 * t_width);
}

Protocol Protocol::gaussian_custom_window(double omega0, double t_width, double tau, double t0) {
    Protocol p;
    p.kind = ProtocolKind::Gaussian;
    p.omega0 = omega0;
    p.t0 = t0;
    p.tau = tau;
    p.t_width = t_width;
    p.validate();
    return p;
}

Protocol Protocol::scaled_to(double new_t0) const {
    if (!(new_t0 > 0.0) || !std::isfinite(new_t0))
        throw ConfigError("protocol: scaled window must be positive and finite");
    Protocol p = *this;
    if (kind == ProtocolKind::Gaussian) {
        const double factor = new_t0 / t0;
        p.tau *= factor;
        p.t_width *= factor;
    }
    p.t0 = new_t0;
    p.validate();
    return p;
}

void Protocol::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw ConfigError("protocol: omega0 must be positive and finite");
    if (!(t0 > 0.0) || !std::isfinite(t0))
        throw ConfigError("protocol: t0 must be positive and finite");
    if (kind == ProtocolKind::Gaussian) {
        if (!(t_width > 0.0) || !std::isfinite(t_width))
            throw ConfigError("protocol: t_width must be positive and finite");
        if (!std::isfinite(tau)) throw ConfigError("protocol: tau must be finite");
    }
}

std::string Protocol::kind_name() const {
    return kind == ProtocolKind::LinearSine ? "linear_sine" : "gaussian";
}

DriveSample sample(const Protocol& p, double t) {
    if (!(t >= 0.0 && t <= p.t0))
        throw std::domain_error("sample: t outside the protocol window [0, T0]");

    DriveSample s;
    if (p.kind == ProtocolKind::LinearSine) {
        const double theta = std::numbers::pi * t / (2.0 * p.t0);
        s.omega_p = p.omega0 * std::sin(theta);
        s.omega_s = p.omega0 * std::cos(theta);
        s.omega = p.omega0; // exact for this protocol
        s.theta = theta;
        s.theta_dot = std::numbers::pi / (2.0 * p.t0);
    } else {
        const double u = t - p.t0 / 2.0;
        s.omega_p = p.omega0 * std::exp(-sq(u - p.tau / 2.0) / sq(p.t_width));
        s.omega_s = p.omega0 * std::exp(-sq(u + p.tau / 2.0) / sq(p.t_width));
        s.omega = std::hypot(s.omega_p, s.omega_s);
        // atan2 of the two amplitudes stays well-behaved when omega_s underflows.
        s.theta = std::atan2(s.omega_p, s.omega_s);
        s.theta_dot = theta_dot_gaussian(p, t);
    }
    return s;
}

double theta_dot_gaussian(const Protocol& p, double t) {
    if (p.kind != ProtocolKind::Gaussian)
        throw ContractViolation("theta_dot_gaussian: protocol is not Gaussian");
    const double x = 2.0 * p.tau * (t - p.t0 / 2.0) / sq(p.t_width);
    return p.tau / sq(p.t_width) / std::cosh(x);
}

} // namespace stirap
