#pragma once

// Shared stepping/certification loop for the two 3-level engines. The
// right-hand sides stay independent; only the stepper and bookkeeping are
// common. Internal header, not installed.

#include <algorithm>
#include <cmath>

#include "stirap/errors.hpp"
#include "stirap/rk4.hpp"
#include "stirap/sim_config.hpp"
#include "stirap/trajectory.hpp"

namespace stirap::detail {

inline constexpr double kCertHermTol = 1e-10;

// k*h can overshoot t0 by one ulp on the last stage; the protocol window is
// closed so clamp before sampling.
inline double clamp_time(double t, double t0) { return std::clamp(t, 0.0, t0); }

template <class Rhs>
Trajectory integrate_density(const SimConfig& cfg, ComplexMatrix3 rho, Frame frame, const Rhs& rhs) {
    const double t0 = cfg.protocol.t0;
    const long n = cfg.steps();
    const double h = cfg.dt_effective();
    const long stride = cfg.stride_effective();

    Trajectory traj;
    traj.frame = frame;
    traj.cert.dt_used = h;
    traj.cert.steps = n;
    traj.times.reserve(static_cast<std::size_t>(n / stride + 2));

    const auto record = [&](double t, const ComplexMatrix3& m) {
        traj.times.push_back(t);
        DensityMatrix3 d{m};
        traj.trace_err.push_back(d.trace_error());
        traj.purity.push_back(purity(d));
        traj.states.push_back(std::move(d));
    };

    traj.cert.min_eigenvalue = eig_hermitian3(rho)[0];
    record(0.0, rho);

    for (long k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * h;
        rho = rk4_step(rhs, t, h, rho);
        const double t_next = clamp_time(static_cast<double>(k + 1) * h, t0);

        const double defect = hermiticity_defect(rho);
        traj.cert.max_herm_defect = std::max(traj.cert.max_herm_defect, defect);
        if (defect > kCertHermTol)
            throw NumericFailure("integrator: Hermiticity defect exceeded 1e-10", t_next);
        rho = symmetrize(rho);

        const double terr = std::abs(rho.trace().real() - 1.0);
        traj.cert.max_trace_err = std::max(traj.cert.max_trace_err, terr);
        if (terr > kTraceTol) throw NumericFailure("integrator: trace drift exceeded 1e-9", t_next);

        const double emin = eig_hermitian3(rho)[0];
        traj.cert.min_eigenvalue = std::min(traj.cert.min_eigenvalue, emin);
        if (emin < -kPositivityTol)
            throw NumericFailure("integrator: negative eigenvalue beyond 1e-9", t_next);

        if ((k + 1) % stride == 0 || k + 1 == n) record(t_next, rho);
    }
    return traj;
}

} // namespace stirap::detail
