#include "dimerctl/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "dimerctl/csv.hpp"
#include "dimerctl/ergodicity.hpp"
#include "dimerctl/errors.hpp"
#include "dimerctl/moments.hpp"
#include "dimerctl/ssa.hpp"
#include "dimerctl/stability.hpp"
#include "dimerctl/svg_plot.hpp"

namespace dimerctl {

namespace {

namespace fs = std::filesystem;

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

// Arithmetic mean of a uniformly sampled column over the trailing third of
// the horizon (the stationarity window used by all summary estimates).
double last_third_mean(const std::vector<double>& time, const std::vector<double>& col) {
    const double t_lo = time.back() * (2.0 / 3.0);
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < time.size(); ++i) {
        if (time[i] < t_lo) continue;
        sum += col[i];
        ++n;
    }
    return sum / static_cast<double>(n);
}

struct SsaSummary {
    double mean_x2 = 0.0;
    double var_x1 = 0.0;  ///< the SSA estimate of the equilibrium variance v*
    double u = 0.0;       ///< stationary actuation, reused as k1 downstream
    double window_start = 0.0, window_end = 0.0;
};

SsaSummary summarize(const EnsembleTrace& trace) {
    SsaSummary s;
    s.mean_x2 = last_third_mean(trace.time, trace.mean_x2);
    s.var_x1 = last_third_mean(trace.time, trace.var_x1);
    s.u = last_third_mean(trace.time, trace.u);
    s.window_start = trace.time.back() * (2.0 / 3.0);
    s.window_end = trace.time.back();
    return s;
}

void write_ssa_artifacts(const ExperimentConfig& cfg, const EnsembleTrace& trace,
                         ExperimentResult& result) {
    const fs::path dir = cfg.output_dir;
    const double mu = cfg.controller->mu;

    write_trace_csv(trace, dir / "trace.csv");
    result.outputs.push_back(dir / "trace.csv");

    if (trace.tracked_cell >= 0) {
        write_cell_path_csv(trace, dir / "cell.csv");
        result.outputs.push_back(dir / "cell.csv");

        PlotSpec fig1;
        fig1.title = "Single-cell trajectory (cell " + std::to_string(trace.tracked_cell) + ")";
        fig1.x_label = "time";
        fig1.y_label = "copy number";
        PlotSeries s1{.label = "X1", .color = "#1f77b4", .x = {}, .y = {}};
        PlotSeries s2{.label = "X2", .color = "#d62728", .x = {}, .y = {}};
        for (std::size_t i = 0; i < trace.cell_path.size(); ++i) {
            s1.x.push_back(trace.time[i]);
            s1.y.push_back(static_cast<double>(trace.cell_path[i].x1));
            s2.x.push_back(trace.time[i]);
            s2.y.push_back(static_cast<double>(trace.cell_path[i].x2));
        }
        fig1.series = {s1, s2};
        fig1.dashed_hline = mu;
        fig1.dashed_label = "reference mu = " + fmt6(mu);
        write_svg_plot(fig1, dir / "fig1_cell.svg");
        result.outputs.push_back(dir / "fig1_cell.svg");
    }

    PlotSpec fig2;
    fig2.title = "Population means under integral control";
    fig2.x_label = "time";
    fig2.y_label = "mean copy number";
    fig2.series = {
        PlotSeries{.label = "mean X1", .color = "#1f77b4", .x = trace.time, .y = trace.mean_x1},
        PlotSeries{.label = "mean X2", .color = "#d62728", .x = trace.time, .y = trace.mean_x2},
    };
    fig2.dashed_hline = mu;
    fig2.dashed_label = "reference mu = " + fmt6(mu);
    write_svg_plot(fig2, dir / "fig2_means.svg");
    result.outputs.push_back(dir / "fig2_means.svg");

    const double vbound = variance_bound(cfg.network, mu).upper;
    PlotSpec fig3;
    fig3.title = "Population variances under integral control";
    fig3.x_label = "time";
    fig3.y_label = "variance";
    fig3.series = {
        PlotSeries{.label = "var X1", .color = "#1f77b4", .x = trace.time, .y = trace.var_x1},
        PlotSeries{.label = "var X2", .color = "#d62728", .x = trace.time, .y = trace.var_x2},
    };
    fig3.dashed_hline = vbound;
    fig3.dashed_label = "equilibrium variance bound = " + fmt6(vbound);
    write_svg_plot(fig3, dir / "fig3_variances.svg");
    result.outputs.push_back(dir / "fig3_variances.svg");
}

void write_stability_report(const ExperimentConfig& cfg, double v_star,
                            const std::optional<SsaSummary>& estimate, const fs::path& path) {
    const NetworkParams& p = cfg.network;
    const double kc = cfg.controller->kc;
    const double mu = cfg.controller->mu;
    const EquilibriumReport report = solve_equilibrium(p, mu, kc, v_star);
    const VarianceInterval vb = variance_bound(p, mu);
    const std::optional<ParamBox> box = cfg.stability ? cfg.stability->box : std::nullopt;

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "# stability report\n";
    out << "network.b = " << fmt6(p.b) << "\n";
    out << "network.gamma1 = " << fmt6(p.gamma1) << "\n";
    out << "network.gamma2 = " << fmt6(p.gamma2) << "\n";
    out << "controller.kc = " << fmt6(kc) << "\n";
    out << "controller.mu = " << fmt6(mu) << "\n";
    out << "v_star = " << fmt6(v_star) << "\n";
    if (estimate) {
        out << "estimate.window_start = " << fmt6(estimate->window_start) << "\n";
        out << "estimate.window_end = " << fmt6(estimate->window_end) << "\n";
        out << "estimate.mean_x2 = " << fmt6(estimate->mean_x2) << "\n";
        out << "estimate.var_x1 = " << fmt6(estimate->var_x1) << "\n";
        out << "estimate.u = " << fmt6(estimate->u) << "\n";
    }
    out << "case = " << to_string(report.label) << "\n";
    out << "delta = " << fmt6(report.delta) << "\n";
    out << "delta_boundary = " << yes_no(report.delta_boundary) << "\n";
    out << "equilibria = " << report.equilibria.size() << "\n";
    for (std::size_t i = 0; i < report.equilibria.size(); ++i) {
        const Equilibrium& eq = report.equilibria[i];
        const std::string key = "equilibrium." + std::to_string(i + 1);
        out << key << ".x1 = " << fmt6(eq.x1) << "\n";
        out << key << ".x2 = " << fmt6(eq.x2) << "\n";
        out << key << ".k1 = " << fmt6(eq.k1) << "\n";
        out << key << ".I = " << fmt6(eq.integ) << "\n";
        out << key << ".I_positive = " << yes_no(eq.integ_positive) << "\n";
        out << key << ".verdict = " << to_string(eq.verdict) << "\n";
    }
    if (report.gain_bound) out << "gain_bound.at_delta = " << fmt6(*report.gain_bound) << "\n";
    out << "gain_bound.uniform = " << fmt6(uniform_gain_bound(p)) << "\n";
    if (box) out << "gain_bound.robust = " << fmt6(robust_gain_bound(*box)) << "\n";
    out << "variance_bound.lower = " << fmt6(vb.lower) << "\n";
    out << "variance_bound.upper = " << fmt6(vb.upper) << "\n";
    if (box)
        out << "variance_bound.robust_upper = " << fmt6(variance_bound(*box, mu).upper) << "\n";
    if (!report.equilibria.empty()) {
        const LinearFallacyReport fallacy = demo_linear_fallacy(p, mu, kc, v_star);
        out << "fallacy.no_quadratic_det = " << fmt6(fallacy.no_quadratic_det) << "\n";
        out << "fallacy.no_quadratic_verdict = " << to_string(fallacy.no_quadratic_verdict)
            << "\n";
        out << "fallacy.upper_block_hurwitz = " << yes_no(fallacy.upper_block_hurwitz) << "\n";
        out << "fallacy.true_verdict = " << to_string(fallacy.true_verdict) << "\n";
    }
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

void write_ergodicity_report(const NetworkParams& p, std::uint64_t grid_bound,
                             const fs::path& path) {
    const DriftCertificate cert = certify_drift(p, grid_bound);

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << "# ergodicity certificate\n";
    out << "network.k1 = " << fmt6(p.k1) << "\n";
    out << "network.b = " << fmt6(p.b) << "\n";
    out << "network.gamma1 = " << fmt6(p.gamma1) << "\n";
    out << "network.gamma2 = " << fmt6(p.gamma2) << "\n";
    out << "nu = " << fmt6(cert.nu[0]) << " " << fmt6(cert.nu[1]) << "\n";
    out << "c1 = " << fmt6(cert.c1) << "\n";
    out << "c2 = " << fmt6(cert.c2) << "\n";
    out << "c3 = " << fmt6(cert.c3) << "\n";
    out << "c4 = " << fmt6(cert.c4) << "\n";
    out << "grid_bound = " << cert.checked_grid_bound << "\n";
    out << "all_satisfied = " << yes_no(cert.all_satisfied) << "\n";
    if (cert.witness)
        out << "witness = (" << cert.witness->x1 << ", " << cert.witness->x2 << ")\n";
    out << "moment_bound.weighted = " << fmt6(moment_bound(p, {1.0, 2.0})) << "\n";
    out << "moment_bound.x1 = " << fmt6(moment_bound(p, {1.0, 0.0})) << "\n";
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

VarianceSignal make_variance_signal(const VarianceSpec& spec) {
    switch (spec.mode) {
        case VarianceSpec::Mode::kZero:
            return VarianceSignal::zero_closure();
        case VarianceSpec::Mode::kConstant:
            return VarianceSignal::constant(spec.value);
        case VarianceSpec::Mode::kReplay: {
            const EnsembleTrace trace = read_trace_csv(spec.replay_csv);
            return VarianceSignal::tabulated(trace.time, trace.var_x1);
        }
    }
    throw std::logic_error("make_variance_signal: unhandled mode");
}

void run_moment_ode(const ExperimentConfig& cfg, ExperimentResult& result) {
    const MomentRunSpec& spec = *cfg.moment;
    const VarianceSignal v = make_variance_signal(spec.variance);
    const MomentState s0{spec.x1_0, spec.x2_0, spec.i0};

    MomentTrajectory traj;
    std::optional<double> mu_line;
    if (spec.closed_loop) {
        traj = integrate_closed_loop(s0, cfg.network, *cfg.controller, v, spec.t_final, spec.dt);
        mu_line = cfg.controller->mu;
    } else {
        traj = integrate_open(s0, cfg.network, v, spec.t_final, spec.dt);
    }

    const fs::path dir = cfg.output_dir;
    write_moments_csv(traj, dir / "moments.csv");
    result.outputs.push_back(dir / "moments.csv");

    PlotSpec fig;
    fig.title = spec.closed_loop ? "Moment trajectories, closed loop"
                                 : "Moment trajectories, open loop";
    fig.x_label = "time";
    fig.y_label = "mean copy number";
    fig.series = {
        PlotSeries{.label = "x1", .color = "#1f77b4", .x = traj.time, .y = traj.x1},
        PlotSeries{.label = "x2", .color = "#d62728", .x = traj.time, .y = traj.x2},
    };
    if (mu_line) {
        fig.dashed_hline = *mu_line;
        fig.dashed_label = "reference mu = " + fmt6(*mu_line);
    }
    write_svg_plot(fig, dir / "moments.svg");
    result.outputs.push_back(dir / "moments.svg");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.output_dir);
    ExperimentResult result;
    const fs::path dir = cfg.output_dir;

    switch (cfg.kind) {
        case ExperimentKind::kClosedLoopSsa: {
            const EnsembleTrace trace = run_closed_loop(*cfg.simulation, cfg.network,
                                                        *cfg.controller);
            write_ssa_artifacts(cfg, trace, result);
            break;
        }
        case ExperimentKind::kOpenLoopSweep: {
            RngStream rng = RngStream::for_stream(cfg.sweep->seed, 0);
            const auto rows = stationary_sweep(cfg.sweep->k1_values, cfg.network,
                                               cfg.sweep->horizon, rng,
                                               cfg.sweep->burn_in_fraction);
            write_sweep_csv(rows, dir / "sweep.csv");
            result.outputs.push_back(dir / "sweep.csv");
            break;
        }
        case ExperimentKind::kMomentOde:
            run_moment_ode(cfg, result);
            break;
        case ExperimentKind::kStabilityReport:
            write_stability_report(cfg, cfg.stability->v_star, std::nullopt,
                                   dir / "stability.txt");
            result.outputs.push_back(dir / "stability.txt");
            break;
        case ExperimentKind::kErgodicityReport:
            write_ergodicity_report(cfg.network, cfg.ergodicity->grid_bound,
                                    dir / "ergodicity.txt");
            result.outputs.push_back(dir / "ergodicity.txt");
            break;
        case ExperimentKind::kFullPaperRepro: {
            const EnsembleTrace trace = run_closed_loop(*cfg.simulation, cfg.network,
                                                        *cfg.controller);
            write_ssa_artifacts(cfg, trace, result);

            // The analysis reports are fed by the run itself: the estimated
            // stationary variance classifies the equilibrium case, and the
            // stationary actuation plays the role of k1 in the drift
            // certificate.
            const SsaSummary summary = summarize(trace);
            write_stability_report(cfg, summary.var_x1, summary, dir / "stability.txt");
            result.outputs.push_back(dir / "stability.txt");

            NetworkParams drift_params = cfg.network;
            drift_params.k1 = summary.u;
            const std::uint64_t grid = cfg.ergodicity ? cfg.ergodicity->grid_bound : 200;
            write_ergodicity_report(drift_params, grid, dir / "ergodicity.txt");
            result.outputs.push_back(dir / "ergodicity.txt");
            break;
        }
    }
    return result;
}

}  // namespace dimerctl
