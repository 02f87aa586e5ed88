#pragma once

#include <algorithm>
#include <cmath>

#include "stirap/protocols.hpp"

namespace stirap {

/// One simulation setup: a drive protocol, the dephasing strength and the
/// integrator controls. All rates, energies and times are dimensionless.
struct SimConfig {
    Protocol protocol;
    double gamma = 0.0;    // dephasing strength on the intermediate spin
    double delta = 0.0;    // level energy, enters the 8-dim oracle only
    double dt = 0.0;       // requested step; 0 selects the default
    long sample_stride = 0; // output decimation; 0 selects ~2000 recorded rows

    double dt_cap() const {
        return std::min(0.01 / std::max({protocol.omega0, gamma, 1.0}), protocol.t0 / 1000.0);
    }

    /// Requested step, or the default min(T0/5000, 0.01/max(Omega0, gamma, 1)).
    double dt_target() const {
        if (dt > 0.0) return dt;
        return std::min(protocol.t0 / 5000.0, 0.01 / std::max({protocol.omega0, gamma, 1.0}));
    }

    /// Number of uniform steps covering [0, T0]; the effective step T0/n never
    /// exceeds the requested one.
    long steps() const {
        return static_cast<long>(std::ceil(protocol.t0 / dt_target() - 1e-9));
    }

    double dt_effective() const { return protocol.t0 / static_cast<double>(steps()); }

    long stride_effective() const {
        if (sample_stride >= 1) return sample_stride;
        return std::max(1L, steps() / 2000);
    }

    void validate() const {
        protocol.validate();
        if (!(gamma >= 0.0) || !std::isfinite(gamma))
            throw ConfigError("config: gamma must be nonnegative and finite");
        if (!std::isfinite(delta)) throw ConfigError("config: delta must be finite");
        if (dt != 0.0) {
            if (!(dt > 0.0) || !std::isfinite(dt))
                throw ConfigError("config: dt must be positive and finite");
            if (dt > dt_cap())
                throw ConfigError("config: dt exceeds min(0.01/max(omega0, gamma, 1), t0/1000)");
        }
        if (sample_stride < 0) throw ConfigError("config: sample_stride must be >= 1");
    }
};

} // namespace stirap
