#include "dimerctl/ssa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dimerctl/errors.hpp"

namespace dimerctl {

namespace {

// Direct-method jump loop. obs(state, a, b) is invoked once per maximal
// interval [a, b) on which the state is constant, including the final
// partial interval up to t1.
template <class Obs>
CellState advance_observed(CellState state, const NetworkParams& p, double t0, double t1,
                           RngStream& rng, Obs&& obs) {
    double t = t0;
    for (;;) {
        const auto w = propensities(state, p);
        const double total = w[0] + w[1] + w[2] + w[3];
        if (total <= 0.0) {  // absorbing (k1 = 0 and empty state)
            obs(state, t, t1);
            return state;
        }
        const double wait = rng.exponential(total);
        if (t + wait > t1) {
            obs(state, t, t1);
            return state;
        }
        obs(state, t, t + wait);
        t += wait;
        // Channel selection proportional to propensity; zero channels are
        // skipped so roundoff in the running difference can never pick an
        // unfireable reaction.
        double r = rng.uniform01() * total;
        int pick = -1;
        for (int k = 0; k < kNumReactions; ++k) {
            if (w[k] <= 0.0) continue;
            pick = k;
            r -= w[k];
            if (r <= 0.0) break;
        }
        state = apply_reaction(state, pick);
    }
}

struct NoopObserver {
    void operator()(const CellState&, double, double) const {}
};

struct EnsembleStats {
    double mean_x1, mean_x2, var_x1, var_x2;
};

// Integer accumulation keeps the statistics exact up to the final divisions,
// independent of summation order.
EnsembleStats ensemble_stats(const std::vector<CellState>& cells) {
    std::uint64_t s1 = 0, s2 = 0, q1 = 0, q2 = 0;
    for (const CellState& c : cells) {
        s1 += c.x1;
        s2 += c.x2;
        q1 += c.x1 * c.x1;
        q2 += c.x2 * c.x2;
    }
    const double n = static_cast<double>(cells.size());
    EnsembleStats st{};
    st.mean_x1 = static_cast<double>(s1) / n;
    st.mean_x2 = static_cast<double>(s2) / n;
    st.var_x1 = std::max(0.0, static_cast<double>(q1) / n - st.mean_x1 * st.mean_x1);
    st.var_x2 = std::max(0.0, static_cast<double>(q2) / n - st.mean_x2 * st.mean_x2);
    return st;
}

}  // namespace

void SimulationConfig::validate() const {
    std::vector<std::string> issues;
    if (n_cells < 1) issues.push_back("simulation: n_cells must be >= 1");
    if (!(ts > 0.0)) issues.push_back("simulation: ts must be > 0");
    if (!(t_final >= ts)) issues.push_back("simulation: t_final must be >= ts");
    if (initial.mode == InitialCondition::Mode::kList && initial.states.size() != n_cells)
        issues.push_back("simulation: initial state list size must equal n_cells");
    if (record_cell >= 0 && static_cast<std::size_t>(record_cell) >= n_cells)
        issues.push_back("simulation: record_cell out of range");
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

CellState simulate_cell_segment(CellState state, const NetworkParams& params, double t0, double t1,
                                RngStream& rng) {
    if (t1 < t0) throw std::invalid_argument("simulate_cell_segment: t1 must be >= t0");
    if (t1 == t0) return state;
    return advance_observed(state, params, t0, t1, rng, NoopObserver{});
}

EnsembleTrace run_closed_loop(const SimulationConfig& config, const NetworkParams& params,
                              const ControllerState& controller) {
    config.validate();
    {
        std::vector<std::string> issues;
        if (!(controller.kc >= 0.0)) issues.push_back("controller: kc must be >= 0");
        if (!(controller.mu > 0.0)) issues.push_back("controller: mu must be > 0");
        if (controller.ts != config.ts)
            issues.push_back("controller: ts must equal simulation ts");
        if (!issues.empty()) throw ConfigError(std::move(issues));
    }

    const auto n_steps = static_cast<std::size_t>(std::llround(config.t_final / config.ts));
    const std::size_t n = config.n_cells;

    std::vector<RngStream> streams;
    streams.reserve(n);
    for (std::size_t i = 0; i < n; ++i) streams.push_back(RngStream::for_stream(config.seed, i));

    std::vector<CellState> cells(n);
    switch (config.initial.mode) {
        case InitialCondition::Mode::kFixed:
            std::fill(cells.begin(), cells.end(), config.initial.fixed);
            break;
        case InitialCondition::Mode::kList:
            cells = config.initial.states;
            break;
        case InitialCondition::Mode::kRandomBinary:
            for (std::size_t i = 0; i < n; ++i) {
                cells[i].x1 = streams[i].next_u64() & 1u;
                cells[i].x2 = streams[i].next_u64() & 1u;
            }
            break;
    }

    EnsembleTrace trace;
    trace.ts = config.ts;
    trace.tracked_cell = config.record_cell;
    trace.time.reserve(n_steps + 1);

    NetworkParams seg = params;
    double integ = controller.i;
    double y = ensemble_stats(cells).mean_x2;

    for (std::size_t s = 0; s <= n_steps; ++s) {
        const EnsembleStats st = ensemble_stats(cells);
        trace.time.push_back(static_cast<double>(s) * config.ts);
        trace.mean_x1.push_back(st.mean_x1);
        trace.mean_x2.push_back(st.mean_x2);
        trace.var_x1.push_back(st.var_x1);
        trace.var_x2.push_back(st.var_x2);
        trace.integ.push_back(integ);
        trace.u.push_back(controller.kc * std::max(0.0, integ));
        if (config.record_cell >= 0)
            trace.cell_path.push_back(cells[static_cast<std::size_t>(config.record_cell)]);
        if (s == n_steps) break;

        // Input from the current integrator, then the error update, then the
        // ensemble advance, then the new measurement.
        const double u = controller.kc * std::max(0.0, integ);
        integ += config.ts * (controller.mu - y);
        seg.k1 = u;
        const double t_lo = static_cast<double>(s) * config.ts;
        const double t_hi = static_cast<double>(s + 1) * config.ts;
        for (std::size_t i = 0; i < n; ++i)
            cells[i] = advance_observed(cells[i], seg, t_lo, t_hi, streams[i], NoopObserver{});
        y = ensemble_stats(cells).mean_x2;
    }
    return trace;
}

std::vector<SweepRow> stationary_sweep(const std::vector<double>& k1_values,
                                       const NetworkParams& params, double horizon, RngStream& rng,
                                       double burn_in_fraction) {
    if (!(horizon > 0.0)) throw std::invalid_argument("stationary_sweep: horizon must be > 0");
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0))
        throw std::invalid_argument("stationary_sweep: burn-in fraction must be in [0, 1)");
    for (std::size_t i = 0; i < k1_values.size(); ++i) {
        if (!(k1_values[i] >= 0.0))
            throw std::invalid_argument("stationary_sweep: k1 values must be >= 0");
        if (i > 0 && k1_values[i] < k1_values[i - 1])
            throw std::invalid_argument("stationary_sweep: k1 values must be sorted ascending");
    }

    const double t_burn = horizon * burn_in_fraction;
    std::vector<SweepRow> rows;
    rows.reserve(k1_values.size());
    for (const double k1 : k1_values) {
        NetworkParams p = params;
        p.k1 = k1;
        double wsum = 0.0, sx1 = 0.0, sx2 = 0.0, sx1sq = 0.0;
        advance_observed(CellState{0, 0}, p, 0.0, horizon, rng,
                         [&](const CellState& x, double a, double b) {
                             const double lo = std::max(a, t_burn);
                             if (lo >= b) return;
                             const double w = b - lo;
                             const double x1 = static_cast<double>(x.x1);
                             wsum += w;
                             sx1 += w * x1;
                             sx2 += w * static_cast<double>(x.x2);
                             sx1sq += w * x1 * x1;
                         });
        SweepRow row;
        row.k1 = k1;
        row.mean_x1 = sx1 / wsum;
        row.mean_x2 = sx2 / wsum;
        row.var_x1 = std::max(0.0, sx1sq / wsum - row.mean_x1 * row.mean_x1);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace dimerctl
