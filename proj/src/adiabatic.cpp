#include "stirap/adiabatic.hpp"

#include <cmath>
#include <numbers>

#include "integrate.hpp"

namespace stirap {

ComplexMatrix3 mixing_matrix(double theta) {
    const double r = std::numbers::sqrt2 / 2.0;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    ComplexMatrix3 w;
    w(0, 0) = r * s;
    w(0, 1) = c;
    w(0, 2) = r * s;
    w(1, 0) = r;
    w(1, 1) = 0.0;
    w(1, 2) = -r;
    w(2, 0) = r * c;
    w(2, 1) = -s;
    w(2, 2) = r * c;
    return w;
}

ComplexMatrix3 gauge_matrix(double theta_dot) {
    const double c = std::numbers::sqrt2 / 2.0 * theta_dot;
    ComplexMatrix3 m;
    m(0, 1) = -c;
    m(1, 0) = c;
    m(1, 2) = c;
    m(2, 1) = -c;
    return m;
}

ComplexMatrix3 dressed_dephasing_generator() {
    ComplexMatrix3 f;
    f(0, 2) = -1.0;
    f(1, 1) = -1.0;
    f(2, 0) = -1.0;
    return f;
}

ComplexMatrix3 rhs_adiabatic(double t, const ComplexMatrix3& rho_a, const SimConfig& cfg) {
    const DriveSample s = sample(cfg.protocol, t);
    const ComplexMatrix3 h_a = ComplexMatrix3::diag(s.omega, 0.0, -s.omega);
    const ComplexMatrix3 f_a = dressed_dephasing_generator();
    ComplexMatrix3 out = Complex(0.0, -1.0) * commutator(h_a, rho_a);
    out -= commutator(gauge_matrix(s.theta_dot), rho_a);
    out += cfg.gamma * (f_a * rho_a * f_a - rho_a);
    return out;
}

Trajectory evolve_adiabatic(const SimConfig& cfg, const DensityMatrix3& rho0) {
    cfg.validate();
    rho0.validate();
    const double t0 = cfg.protocol.t0;
    const ComplexMatrix3 rho_a0 = to_adiabatic_frame(rho0.m, sample(cfg.protocol, 0.0).theta);
    const auto rhs = [&cfg, t0](double t, const ComplexMatrix3& m) {
        return rhs_adiabatic(detail::clamp_time(t, t0), m, cfg);
    };
    return detail::integrate_density(cfg, rho_a0, Frame::Adiabatic, rhs);
}

ComplexMatrix3 to_adiabatic_frame(const ComplexMatrix3& rho_bare, double theta) {
    const ComplexMatrix3 w = mixing_matrix(theta);
    return adjoint(w) * rho_bare * w;
}

ComplexMatrix3 to_bare_frame(const ComplexMatrix3& rho_adiabatic, double theta) {
    const ComplexMatrix3 w = mixing_matrix(theta);
    return w * rho_adiabatic * adjoint(w);
}

} // namespace stirap
