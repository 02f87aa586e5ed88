#pragma once

#include <vector>

#include "stirap/matrix3.hpp"

namespace stirap {

enum class Frame { Bare, Adiabatic };

/// Per-run integrator certification. The engines measure the Hermiticity
/// defect before each re-symmetrization, the trace after it, and the smallest
/// eigenvalue at every step (3-level engines) or every recorded sample
/// (the 8-dim oracle). max_leakage is populated by the oracle only.
struct Certification {
    double max_trace_err = 0.0;
    double max_herm_defect = 0.0;
    double min_eigenvalue = 1.0;
    double max_leakage = 0.0;
    double dt_used = 0.0;
    long steps = 0;
};

/// Time-stamped states plus diagnostics from one evolution. `states` live in
/// the frame named by `frame`; purity and the trace error are frame-agnostic.
struct Trajectory {
    Frame frame = Frame::Bare;
    std::vector<double> times;
    std::vector<DensityMatrix3> states;
    std::vector<double> trace_err;
    std::vector<double> purity;
    Certification cert;

    const DensityMatrix3& final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
};

} // namespace stirap
