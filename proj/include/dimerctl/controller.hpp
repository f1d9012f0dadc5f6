#pragma once

#include <algorithm>
#include <stdexcept>

namespace dimerctl {

/// Integral control law: the actuated production rate is kc * max{0, I},
/// and I accumulates the tracking error mu - y. The output clamp is the only
/// nonlinearity; the integrator itself may run negative and recover.
struct ControllerState {
    double i = 0.0;   ///< integrator value
    double kc = 0.0;  ///< gain, > 0
    double mu = 0.0;  ///< reference mean dimer count, > 0
    double ts = 0.0;  ///< sampling period; unused by the continuous-time loop

    void validate() const {
        if (!(kc > 0.0)) throw std::invalid_argument("controller: kc must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("controller: mu must be > 0");
    }
};

/// Actuated production rate kc * max{0, I}; always >= 0.
[[nodiscard]] inline double control_output(const ControllerState& c) {
    return c.kc * std::max(0.0, c.i);
}

/// Explicit-Euler update I += dt * (mu - y) against an observed mean dimer
/// count y. All other fields pass through unchanged.
[[nodiscard]] inline ControllerState integrate_error(ControllerState c, double y, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_error: dt must be > 0");
    c.i += dt * (c.mu - y);
    return c;
}

}  // namespace dimerctl
