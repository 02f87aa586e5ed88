#include "stirap/lindblad.hpp"

#include "integrate.hpp"

namespace stirap {

ComplexMatrix3 hamiltonian3(const DriveSample& s) {
    ComplexMatrix3 h;
    h(0, 1) = h(1, 0) = s.omega_p;
    h(1, 2) = h(2, 1) = s.omega_s;
    return h;
}

ComplexMatrix3 dissipator3(const ComplexMatrix3& rho, double gamma) {
    // gamma (F rho F - rho) with F = diag(-1, 1, -1) kills nothing on the
    // diagonal and on the 1-3 coherence, and damps the rest at rate 2 gamma.
    ComplexMatrix3 d;
    const double g2 = -2.0 * gamma;
    d(0, 1) = g2 * rho(0, 1);
    d(1, 0) = g2 * rho(1, 0);
    d(1, 2) = g2 * rho(1, 2);
    d(2, 1) = g2 * rho(2, 1);
    return d;
}

ComplexMatrix3 rhs_bare(double t, const ComplexMatrix3& rho, const SimConfig& cfg) {
    const DriveSample s = sample(cfg.protocol, t);
    return Complex(0.0, -1.0) * commutator(hamiltonian3(s), rho) + dissipator3(rho, cfg.gamma);
}

Trajectory evolve_bare(const SimConfig& cfg, const DensityMatrix3& rho0) {
    cfg.validate();
    rho0.validate();
    const double t0 = cfg.protocol.t0;
    const auto rhs = [&cfg, t0](double t, const ComplexMatrix3& m) {
        return rhs_bare(detail::clamp_time(t, t0), m, cfg);
    };
    return detail::integrate_density(cfg, rho0.m, Frame::Bare, rhs);
}

} // namespace stirap
