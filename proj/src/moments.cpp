#include "dimerctl/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "dimerctl/errors.hpp"

namespace dimerctl {

VarianceSignal VarianceSignal::zero_closure() {
    VarianceSignal s;
    s.zero_ = true;
    return s;
}

VarianceSignal VarianceSignal::constant(double v0) {
    if (!(v0 >= 0.0)) throw std::invalid_argument("variance signal: constant must be >= 0");
    VarianceSignal s;
    s.v0_ = v0;
    return s;
}

VarianceSignal VarianceSignal::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument("variance signal: need equally sized, nonempty tables");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("variance signal: times must be strictly increasing");
        if (!(values[i] >= 0.0))
            throw std::invalid_argument("variance signal: values must be >= 0");
    }
    VarianceSignal s;
    s.times_ = std::move(times);
    s.values_ = std::move(values);
    return s;
}

double VarianceSignal::operator()(double t) const {
    if (times_.empty()) return zero_ ? 0.0 : v0_;
    if (t <= times_.front()) return values_.front();
    if (t >= times_.back()) return values_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto j = static_cast<std::size_t>(it - times_.begin());
    const double t0 = times_[j - 1], t1 = times_[j];
    const double w = (t - t0) / (t1 - t0);
    return values_[j - 1] + w * (values_[j] - values_[j - 1]);
}

MomentDerivative moment_rhs(const MomentState& s, const NetworkParams& p, double v) {
    MomentDerivative d;
    d.dx1 = p.k1 + (p.b - p.gamma1) * s.x1 - p.b * s.x1 * s.x1 - p.b * v;
    d.dx2 = -0.5 * p.b * s.x1 - p.gamma2 * s.x2 + 0.5 * p.b * s.x1 * s.x1 + 0.5 * p.b * v;
    return d;
}

namespace {

struct Vec3 {
    double x1, x2, i;
};

Vec3 operator+(Vec3 a, const Vec3& b) { return {a.x1 + b.x1, a.x2 + b.x2, a.i + b.i}; }
Vec3 operator*(double c, const Vec3& a) { return {c * a.x1, c * a.x2, c * a.i}; }

// The closed-loop flag folds the integral law into the vector field; open
// loop keeps the integrator frozen and params.k1 as the production rate.
template <class Rhs>
MomentTrajectory rk4_run(Vec3 y, Rhs&& rhs, double t_final, double dt, bool closed_loop,
                         double kc) {
    if (!(dt > 0.0)) throw std::invalid_argument("moment integration: dt must be > 0");
    if (!(t_final > 0.0)) throw std::invalid_argument("moment integration: t_final must be > 0");
    const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));
    if (n_steps == 0) throw std::invalid_argument("moment integration: t_final must be >= dt/2");

    MomentTrajectory traj;
    traj.time.reserve(n_steps + 1);

    const auto record = [&](double t, const Vec3& s) {
        traj.time.push_back(t);
        traj.x1.push_back(s.x1);
        traj.x2.push_back(s.x2);
        if (closed_loop) {
            traj.integ.push_back(s.i);
            traj.u.push_back(kc * std::max(0.0, s.i));
        }
        if (!traj.negative_dip_time && (s.x1 < -1e-9 || s.x2 < -1e-9))
            traj.negative_dip_time = t;
    };

    record(0.0, y);
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const Vec3 k1 = rhs(t, y);
        const Vec3 k2 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k1);
        const Vec3 k3 = rhs(t + 0.5 * dt, y + (0.5 * dt) * k2);
        const Vec3 k4 = rhs(t + dt, y + dt * k3);
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double t_next = static_cast<double>(n + 1) * dt;
        if (!(std::isfinite(y.x1) && std::isfinite(y.x2) && std::isfinite(y.i))) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "moment integration diverged to non-finite state at t=%g",
                          t_next);
            throw SimulationError(msg);
        }
        record(t_next, y);
    }
    return traj;
}

}  // namespace

MomentTrajectory integrate_open(const MomentState& s0, const NetworkParams& params,
                                const VarianceSignal& v, double t_final, double dt) {
    const auto rhs = [&](double t, const Vec3& s) {
        const MomentDerivative d = moment_rhs({s.x1, s.x2, 0.0}, params, v(t));
        return Vec3{d.dx1, d.dx2, 0.0};
    };
    return rk4_run(Vec3{s0.x1, s0.x2, 0.0}, rhs, t_final, dt, /*closed_loop=*/false, 0.0);
}

MomentTrajectory integrate_closed_loop(const MomentState& s0, const NetworkParams& params,
                                       const ControllerState& controller, const VarianceSignal& v,
                                       double t_final, double dt) {
    controller.validate();
    const auto rhs = [&params, &controller, &v](double t, const Vec3& s) {
        NetworkParams p = params;
        p.k1 = controller.kc * std::max(0.0, s.i);
        const MomentDerivative d = moment_rhs({s.x1, s.x2, 0.0}, p, v(t));
        return Vec3{d.dx1, d.dx2, controller.mu - s.x2};
    };
    return rk4_run(Vec3{s0.x1, s0.x2, s0.i}, rhs, t_final, dt, /*closed_loop=*/true,
                   controller.kc);
}

}  // namespace dimerctl
