#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimerctl/config.hpp"
#include "dimerctl/errors.hpp"
#include "dimerctl/experiment.hpp"

namespace {

// Exit codes; stderr additionally carries one JSON object with the matching
// error category so callers never have to parse prose.
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitIo = 4;
constexpr int kExitSimulation = 5;

int fail(const char* category, const std::string& message,
         const std::vector<std::string>& issues, int code) {
    nlohmann::json err;
    err["error"]["category"] = category;
    err["error"]["message"] = message;
    if (!issues.empty()) err["error"]["issues"] = issues;
    std::cerr << err.dump() << "\n";
    return code;
}

struct KindInfo {
    dimerctl::ExperimentKind kind;
    const char* description;
};

constexpr KindInfo kKinds[] = {
    {dimerctl::ExperimentKind::kClosedLoopSsa,
     "Sampled integral control of a stochastically simulated cell ensemble"},
    {dimerctl::ExperimentKind::kOpenLoopSweep,
     "Open-loop stationary statistics over a grid of production rates"},
    {dimerctl::ExperimentKind::kMomentOde,
     "First-order moment ODE integration, open or closed loop"},
    {dimerctl::ExperimentKind::kStabilityReport,
     "Equilibria, Routh-Hurwitz verdicts, gain and variance bounds"},
    {dimerctl::ExperimentKind::kErgodicityReport,
     "Foster-Lyapunov drift certificate and asymptotic moment bounds"},
    {dimerctl::ExperimentKind::kFullPaperRepro,
     "Closed-loop ensemble run plus the stability and ergodicity reports it implies"},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral feedback control of a stochastic dimerization network"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_override;
    std::optional<std::uint64_t> cells_override;
    for (const KindInfo& info : kKinds) {
        CLI::App* sub = app.add_subcommand(dimerctl::to_string(info.kind), info.description);
        sub->add_option("-c,--config", config_path, "Experiment config file (JSON)")->required();
        sub->add_option("--seed", seed_override, "Override the RNG seed");
        sub->add_option("--out", out_override, "Override the output directory");
        sub->add_option("--cells", cells_override, "Override the ensemble size");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return fail("usage", e.what(), {}, kExitUsage);
    }

    const std::string sub_name = app.get_subcommands().front()->get_name();
    const auto kind = dimerctl::parse_experiment_kind(sub_name);

    try {
        dimerctl::ExperimentConfig cfg = dimerctl::load_config(config_path, kind);
        if (out_override) cfg.output_dir = *out_override;
        if (seed_override) {
            if (cfg.simulation) cfg.simulation->seed = *seed_override;
            if (cfg.sweep) cfg.sweep->seed = *seed_override;
        }
        if (cells_override && cfg.simulation) cfg.simulation->n_cells = *cells_override;

        const dimerctl::ExperimentResult result = dimerctl::run_experiment(cfg);
        for (const auto& path : result.outputs) std::cout << path.string() << "\n";
        return 0;
    } catch (const dimerctl::ConfigError& e) {
        return fail("config", e.what(), e.issues(), kExitConfig);
    } catch (const dimerctl::IoError& e) {
        return fail("io", e.what(), {}, kExitIo);
    } catch (const dimerctl::SimulationError& e) {
        return fail("simulation", e.what(), {}, kExitSimulation);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), {}, kExitInternal);
    }
}
