#pragma once

#include <cstdint>
#include <vector>

#include "dimerctl/controller.hpp"
#include "dimerctl/network.hpp"
#include "dimerctl/rng.hpp"

namespace dimerctl {

/// How the ensemble's initial states are chosen.
struct InitialCondition {
    enum class Mode {
        kFixed,         ///< every cell starts at `fixed`
        kList,          ///< `states[i]` for cell i (size must equal n_cells)
        kRandomBinary,  ///< x1, x2 drawn independently uniform on {0, 1}
    };

    Mode mode = Mode::kFixed;
    CellState fixed{};
    std::vector<CellState> states;
};

struct SimulationConfig {
    std::size_t n_cells = 1;
    double t_final = 0.0;
    double ts = 0.0;  ///< controller sampling period
    std::uint64_t seed = 0;
    InitialCondition initial{};
    int record_cell = -1;  ///< >= 0: keep that cell's sampled trajectory

    void validate() const;
};

/// Sampled ensemble statistics of one closed-loop run. Row i is sample time
/// i * ts. `integ` is the integrator value entering that sample (before the
/// error update) and `u` the input computed from it, i.e. the rate applied
/// over the following sampling interval.
struct EnsembleTrace {
    double ts = 0.0;
    std::vector<double> time;
    std::vector<double> mean_x1, mean_x2, var_x1, var_x2;
    std::vector<double> u, integ;
    int tracked_cell = -1;
    std::vector<CellState> cell_path;  ///< empty unless tracked_cell >= 0

    std::size_t size() const { return time.size(); }
};

/// Exact jump-process advance of one cell from t0 to t1 with frozen rates
/// (Gillespie direct method): draw an exponential waiting time from the
/// total propensity, pick a channel proportionally to its propensity, apply,
/// repeat until the next jump would pass t1. A state with zero total
/// propensity is absorbing.
CellState simulate_cell_segment(CellState state, const NetworkParams& params, double t0, double t1,
                                RngStream& rng);

/// Sampled-data closed loop over an ensemble. At every sample, in order:
/// the input u = kc * max{0, I} is computed from the current integrator,
/// the integrator absorbs the error against the latest measured mean dimer
/// count, all cells advance one sampling period under production rate u,
/// and the mean dimer count is re-measured.
///
/// `params.k1` is ignored; the controller supplies the production rate.
/// kc = 0 is accepted as the controller-off degenerate (u identically 0).
EnsembleTrace run_closed_loop(const SimulationConfig& config, const NetworkParams& params,
                              const ControllerState& controller);

struct SweepRow {
    double k1 = 0.0;
    double mean_x1 = 0.0;
    double mean_x2 = 0.0;
    double var_x1 = 0.0;
};

/// Open-loop stationary statistics per production rate: one long trajectory
/// from (0, 0) for each k1, time-averaged over the trailing part of the
/// horizon after discarding the burn-in fraction. Rows keep the input order;
/// k1_values must be nonnegative and sorted ascending.
std::vector<SweepRow> stationary_sweep(const std::vector<double>& k1_values,
                                       const NetworkParams& params, double horizon, RngStream& rng,
                                       double burn_in_fraction = 0.5);

}  // namespace dimerctl
