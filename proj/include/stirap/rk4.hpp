#pragma once

namespace stirap {

/// One classic fourth-order Runge-Kutta step. State needs operator+ and
/// scalar multiplication; Rhs is callable as rhs(t, state) -> state.
template <class State, class Rhs>
State rk4_step(const Rhs& rhs, double t, double h, const State& y) {
    const State k1 = rhs(t, y);
    const State k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1);
    const State k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2);
    const State k4 = rhs(t + h, y + h * k3);
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace stirap
