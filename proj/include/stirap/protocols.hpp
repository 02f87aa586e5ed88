#pragma once

#include <string>

#include "stirap/errors.hpp"

namespace stirap {

enum class ProtocolKind { LinearSine, Gaussian };

/// Pulse-pair description for the two driving schemes.
///
/// LinearSine:  Omega_P = Omega0 sin(pi t / 2 T0),  Omega_S = Omega0 cos(pi t / 2 T0),
///              so the total coupling stays at Omega0 and the mixing angle grows
///              linearly from 0 to pi/2 over the window [0, T0].
/// Gaussian:    two Gaussians of width T delayed by tau, Stokes first; the window
///              is T0 = 8 T by convention (a separate factory decouples the two
///              for exploration).
struct Protocol {
    ProtocolKind kind = ProtocolKind::LinearSine;
    double omega0 = 0.0;  // peak coupling strength
    double t0 = 0.0;      // window duration
    double tau = 0.0;     // Gaussian pulse delay (pump lags Stokes for tau > 0)
    double t_width = 0.0; // Gaussian width

    static Protocol linear_sine(double omega0, double t0);

    /// Gaussian protocol with the standard window t0 = 8 * t_width.
    static Protocol gaussian(double omega0, double t_width, double tau);

    /// Gaussian protocol with an explicit window, decoupled from 8 * t_width.
    static Protocol gaussian_custom_window(double omega0, double t_width, double tau, double t0);

    /// Pure time dilation onto a new window. For the Gaussian protocol tau and
    /// t_width scale by the same factor so the pulse shape is preserved.
    Protocol scaled_to(double new_t0) const;

    void validate() const; // throws ConfigError

    std::string kind_name() const;
};

/// Instantaneous pulse data at time t.
struct DriveSample {
    double omega_p = 0.0;   // pump coupling
    double omega_s = 0.0;   // Stokes coupling
    double omega = 0.0;     // sqrt(omega_p^2 + omega_s^2)
    double theta = 0.0;     // mixing angle, tan(theta) = omega_p / omega_s
    double theta_dot = 0.0; // analytic d(theta)/dt
};

/// Exact pulse sample. Throws std::domain_error for t outside [0, t0].
/// theta_dot is always the closed-form derivative, never a finite difference.
DriveSample sample(const Protocol& p, double t);

/// d(theta)/dt = (tau / T^2) sech(2 tau (t - T0/2) / T^2) for the Gaussian
/// protocol. Throws ContractViolation for other protocol kinds.
double theta_dot_gaussian(const Protocol& p, double t);

} // namespace stirap
