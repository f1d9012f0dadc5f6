#pragma once

#include <optional>
#include <vector>

#include "dimerctl/controller.hpp"
#include "dimerctl/network.hpp"

namespace dimerctl {

/// First-order moment state; `i` carries the integrator in closed loop and
/// is ignored by the open-loop operations.
struct MomentState {
    double x1 = 0.0;
    double x2 = 0.0;
    double i = 0.0;
};

struct MomentDerivative {
    double dx1 = 0.0;
    double dx2 = 0.0;
};

/// Monomer-variance input v(t): a constant, identically zero (the
/// deliberately wrong deterministic closure used by the no-quadratic
/// demonstration), or a replayed time series with piecewise-linear
/// interpolation (clamped beyond the tabulated range).
class VarianceSignal {
public:
    static VarianceSignal zero_closure();
    static VarianceSignal constant(double v0);
    static VarianceSignal tabulated(std::vector<double> times, std::vector<double> values);

    double operator()(double t) const;
    bool is_zero_closure() const { return zero_; }

private:
    VarianceSignal() = default;

    bool zero_ = false;
    double v0_ = 0.0;
    std::vector<double> times_, values_;  // empty unless tabulated
};

/// Mean dynamics with the monomer variance as exogenous input:
///   x1' = k1 + (b - gamma1) x1 - b x1^2 - b v
///   x2' = -(b/2) x1 - gamma2 x2 + (b/2) x1^2 + (b/2) v
[[nodiscard]] MomentDerivative moment_rhs(const MomentState& s, const NetworkParams& p, double v);

/// Fixed-step RK4 trajectory, one row per step. Closed-loop runs fill the
/// integrator and applied-input columns; open-loop runs leave them empty.
/// `negative_dip_time` records the first time a mean dipped below -1e-9
/// (the states are not clamped; a dip indicates an inadmissible v signal).
struct MomentTrajectory {
    std::vector<double> time, x1, x2;
    std::vector<double> integ, u;
    std::optional<double> negative_dip_time;

    std::size_t size() const { return time.size(); }
};

MomentTrajectory integrate_open(const MomentState& s0, const NetworkParams& params,
                                const VarianceSignal& v, double t_final, double dt);

/// Couples the mean dynamics to the continuous-time integral law
/// k1(t) = kc * max{0, I(t)}, I' = mu - x2. `params.k1` is ignored.
MomentTrajectory integrate_closed_loop(const MomentState& s0, const NetworkParams& params,
                                       const ControllerState& controller, const VarianceSignal& v,
                                       double t_final, double dt);

}  // namespace dimerctl
