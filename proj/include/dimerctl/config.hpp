#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dimerctl/controller.hpp"
#include "dimerctl/errors.hpp"
#include "dimerctl/network.hpp"
#include "dimerctl/ssa.hpp"
#include "dimerctl/stability.hpp"

namespace dimerctl {

enum class ExperimentKind {
    kClosedLoopSsa,
    kOpenLoopSweep,
    kMomentOde,
    kStabilityReport,
    kErgodicityReport,
    kFullPaperRepro,
};

const char* to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);

/// Config-level description of the variance input for moment-ODE runs.
struct VarianceSpec {
    enum class Mode { kConstant, kZero, kReplay };
    Mode mode = Mode::kConstant;
    double value = 0.0;
    std::filesystem::path replay_csv;  ///< trace whose var_x1 column is replayed
};

struct MomentRunSpec {
    bool closed_loop = true;  ///< open loop uses network.k1 as the fixed rate
    double dt = 1e-3;
    double t_final = 0.0;
    double x1_0 = 0.0, x2_0 = 0.0, i0 = 0.0;
    VarianceSpec variance{};
};

struct SweepSpec {
    std::vector<double> k1_values;
    double horizon = 0.0;
    double burn_in_fraction = 0.5;
    std::uint64_t seed = 0;
};

struct StabilitySpec {
    double v_star = 0.0;
    std::optional<ParamBox> box;  ///< adds the robust bound to the report
};

struct ErgodicitySpec {
    std::uint64_t grid_bound = 200;
};

/// One experiment: a kind plus the sections it needs. validate() collects
/// every issue and throws ConfigError if any, before anything runs.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::kClosedLoopSsa;
    std::filesystem::path output_dir = "out";
    NetworkParams network{};  ///< k1 ignored by closed-loop kinds
    std::optional<ControllerState> controller;
    std::optional<SimulationConfig> simulation;
    std::optional<MomentRunSpec> moment;
    std::optional<SweepSpec> sweep;
    std::optional<StabilitySpec> stability;
    std::optional<ErgodicitySpec> ergodicity;

    void validate() const;
};

/// Parses a JSON config file. When `kind_override` is given (the CLI
/// subcommand), the file's optional "experiment" field must agree with it;
/// otherwise the field is required. Relative replay paths resolve against
/// the config file's directory.
ExperimentConfig load_config(const std::filesystem::path& file,
                             std::optional<ExperimentKind> kind_override = {});

}  // namespace dimerctl
