#include "dimerctl/config.hpp"

#include <fstream>
#include <utility>

#include <json.hpp>

namespace dimerctl {

namespace {

using nlohmann::json;

constexpr std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::kClosedLoopSsa, "closed-loop-ssa"},
    {ExperimentKind::kOpenLoopSweep, "open-loop-sweep"},
    {ExperimentKind::kMomentOde, "moment-ode"},
    {ExperimentKind::kStabilityReport, "stability-report"},
    {ExperimentKind::kErgodicityReport, "ergodicity-report"},
    {ExperimentKind::kFullPaperRepro, "full-paper-repro"},
};

// Collecting extractors: a missing/mistyped field records an issue and
// yields the default, so one pass reports everything wrong at once.
double num_field(const json& j, const char* sec, const char* key,
                 std::vector<std::string>& issues, bool required, double def = 0.0) {
    if (!j.contains(key)) {
        if (required)
            issues.push_back(std::string(sec) + ": missing required field '" + key + "'");
        return def;
    }
    if (!j[key].is_number()) {
        issues.push_back(std::string(sec) + ": field '" + key + "' must be a number");
        return def;
    }
    return j[key].get<double>();
}

std::uint64_t uint_field(const json& j, const char* sec, const char* key,
                         std::vector<std::string>& issues, bool required, std::uint64_t def = 0) {
    if (!j.contains(key)) {
        if (required)
            issues.push_back(std::string(sec) + ": missing required field '" + key + "'");
        return def;
    }
    if (!j[key].is_number_unsigned()) {
        issues.push_back(std::string(sec) + ": field '" + key +
                         "' must be a nonnegative integer");
        return def;
    }
    return j[key].get<std::uint64_t>();
}

bool bool_field(const json& j, const char* sec, const char* key,
                std::vector<std::string>& issues, bool def) {
    if (!j.contains(key)) return def;
    if (!j[key].is_boolean()) {
        issues.push_back(std::string(sec) + ": field '" + key + "' must be a boolean");
        return def;
    }
    return j[key].get<bool>();
}

InitialCondition parse_initial(const json& j, std::vector<std::string>& issues) {
    InitialCondition init;
    const std::string mode = j.value("mode", "fixed");
    if (mode == "fixed") {
        init.mode = InitialCondition::Mode::kFixed;
        init.fixed.x1 = uint_field(j, "simulation.initial", "x1", issues, false, 0);
        init.fixed.x2 = uint_field(j, "simulation.initial", "x2", issues, false, 0);
    } else if (mode == "random-binary") {
        init.mode = InitialCondition::Mode::kRandomBinary;
    } else if (mode == "list") {
        init.mode = InitialCondition::Mode::kList;
        if (!j.contains("states") || !j["states"].is_array()) {
            issues.push_back("simulation.initial: mode 'list' needs a 'states' array");
            return init;
        }
        for (const auto& entry : j["states"]) {
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned() ||
                !entry[1].is_number_unsigned()) {
                issues.push_back(
                    "simulation.initial: each state must be a [x1, x2] pair of nonnegative "
                    "integers");
                return init;
            }
            init.states.push_back(
                CellState{entry[0].get<std::uint64_t>(), entry[1].get<std::uint64_t>()});
        }
    } else {
        issues.push_back("simulation.initial: unknown mode '" + mode + "'");
    }
    return init;
}

VarianceSpec parse_variance(const json& j, const std::filesystem::path& base_dir,
                            std::vector<std::string>& issues) {
    VarianceSpec spec;
    const std::string mode = j.value("mode", "constant");
    if (mode == "constant") {
        spec.mode = VarianceSpec::Mode::kConstant;
        spec.value = num_field(j, "moment.variance", "value", issues, true);
    } else if (mode == "zero") {
        spec.mode = VarianceSpec::Mode::kZero;
    } else if (mode == "replay") {
        spec.mode = VarianceSpec::Mode::kReplay;
        const std::string file = j.value("replay_csv", "");
        if (file.empty()) {
            issues.push_back("moment.variance: mode 'replay' needs 'replay_csv'");
        } else {
            std::filesystem::path p = file;
            spec.replay_csv = p.is_absolute() ? p : base_dir / p;
        }
    } else {
        issues.push_back("moment.variance: unknown mode '" + mode + "'");
    }
    return spec;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
    for (const auto& [k, n] : kKindNames)
        if (name == n) return k;
    return std::nullopt;
}

ExperimentConfig load_config(const std::filesystem::path& file,
                             std::optional<ExperimentKind> kind_override) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config: " + file.string());

    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError({std::string("config: ") + e.what()});
    }

    std::vector<std::string> issues;
    ExperimentConfig cfg;
    const std::filesystem::path base_dir = file.has_parent_path()
                                               ? file.parent_path()
                                               : std::filesystem::path(".");

    if (j.contains("experiment")) {
        const std::string name = j["experiment"].is_string() ? j["experiment"].get<std::string>()
                                                             : std::string();
        const auto kind = parse_experiment_kind(name);
        if (!kind) {
            issues.push_back("config: unknown experiment kind '" + name + "'");
        } else if (kind_override && *kind != *kind_override) {
            issues.push_back(std::string("config: experiment kind '") + name +
                             "' does not match the requested '" + to_string(*kind_override) +
                             "'");
        } else {
            cfg.kind = *kind;
        }
    } else if (kind_override) {
        cfg.kind = *kind_override;
    } else {
        issues.push_back("config: missing 'experiment' field");
    }

    cfg.output_dir = j.value("output_dir", "out");

    if (j.contains("network")) {
        const json& n = j["network"];
        cfg.network.k1 = num_field(n, "network", "k1", issues, false, 0.0);
        cfg.network.b = num_field(n, "network", "b", issues, true);
        cfg.network.gamma1 = num_field(n, "network", "gamma1", issues, true);
        cfg.network.gamma2 = num_field(n, "network", "gamma2", issues, true);
    } else {
        issues.push_back("config: missing 'network' section");
    }

    if (j.contains("controller")) {
        const json& c = j["controller"];
        ControllerState ctl;
        ctl.kc = num_field(c, "controller", "kc", issues, true);
        ctl.mu = num_field(c, "controller", "mu", issues, true);
        ctl.i = num_field(c, "controller", "i0", issues, false, 0.0);
        cfg.controller = ctl;
    }

    if (j.contains("simulation")) {
        const json& s = j["simulation"];
        SimulationConfig sim;
        sim.n_cells = uint_field(s, "simulation", "n_cells", issues, true, 1);
        sim.t_final = num_field(s, "simulation", "t_final", issues, true);
        sim.ts = num_field(s, "simulation", "ts", issues, true);
        sim.seed = uint_field(s, "simulation", "seed", issues, true);
        if (s.contains("record_cell")) {
            if (s["record_cell"].is_number_integer())
                sim.record_cell = s["record_cell"].get<int>();
            else
                issues.push_back("simulation: field 'record_cell' must be an integer");
        }
        if (s.contains("initial")) sim.initial = parse_initial(s["initial"], issues);
        cfg.simulation = sim;
        if (cfg.controller) cfg.controller->ts = sim.ts;
    }

    if (j.contains("moment")) {
        const json& m = j["moment"];
        MomentRunSpec spec;
        spec.closed_loop = bool_field(m, "moment", "closed_loop", issues, true);
        spec.dt = num_field(m, "moment", "dt", issues, false, 1e-3);
        spec.t_final = num_field(m, "moment", "t_final", issues, true);
        spec.x1_0 = num_field(m, "moment", "x1_0", issues, false, 0.0);
        spec.x2_0 = num_field(m, "moment", "x2_0", issues, false, 0.0);
        spec.i0 = num_field(m, "moment", "i0", issues, false, 0.0);
        if (m.contains("variance"))
            spec.variance = parse_variance(m["variance"], base_dir, issues);
        else
            issues.push_back("moment: missing 'variance' section");
        cfg.moment = spec;
    }

    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        SweepSpec spec;
        if (s.contains("k1_values") && s["k1_values"].is_array()) {
            for (const auto& v : s["k1_values"]) {
                if (v.is_number())
                    spec.k1_values.push_back(v.get<double>());
                else
                    issues.push_back("sweep: k1_values entries must be numbers");
            }
        } else {
            issues.push_back("sweep: missing 'k1_values' array");
        }
        spec.horizon = num_field(s, "sweep", "horizon", issues, true);
        spec.burn_in_fraction = num_field(s, "sweep", "burn_in_fraction", issues, false, 0.5);
        spec.seed = uint_field(s, "sweep", "seed", issues, true);
        cfg.sweep = spec;
    }

    if (j.contains("stability")) {
        const json& s = j["stability"];
        StabilitySpec spec;
        spec.v_star = num_field(s, "stability", "v_star", issues, true);
        if (s.contains("box")) {
            const json& b = s["box"];
            ParamBox box;
            const auto interval = [&](const char* key, double& lo, double& hi) {
                if (!b.contains(key) || !b[key].is_array() || b[key].size() != 2 ||
                    !b[key][0].is_number() || !b[key][1].is_number()) {
                    issues.push_back(std::string("stability.box: '") + key +
                                     "' must be a [lo, hi] number pair");
                    return;
                }
                lo = b[key][0].get<double>();
                hi = b[key][1].get<double>();
            };
            interval("gamma1", box.gamma1_lo, box.gamma1_hi);
            interval("gamma2", box.gamma2_lo, box.gamma2_hi);
            interval("b", box.b_lo, box.b_hi);
            spec.box = box;
        }
        cfg.stability = spec;
    }

    if (j.contains("ergodicity")) {
        ErgodicitySpec spec;
        spec.grid_bound = uint_field(j["ergodicity"], "ergodicity", "grid_bound", issues, false,
                                     200);
        cfg.ergodicity = spec;
    }

    if (!issues.empty()) throw ConfigError(std::move(issues));
    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> issues;

    if (output_dir.empty()) issues.push_back("config: output_dir must not be empty");

    if (!(network.k1 >= 0.0)) issues.push_back("network: k1 must be >= 0");
    if (!(network.b > 0.0)) issues.push_back("network: b must be > 0");
    if (!(network.gamma1 > 0.0)) issues.push_back("network: gamma1 must be > 0");
    if (!(network.gamma2 > 0.0)) issues.push_back("network: gamma2 must be > 0");

    const auto need = [&](bool present, const char* section) {
        if (!present)
            issues.push_back(std::string("config: experiment '") + to_string(kind) +
                             "' needs the '" + section + "' section");
    };
    switch (kind) {
        case ExperimentKind::kClosedLoopSsa:
        case ExperimentKind::kFullPaperRepro:
            need(controller.has_value(), "controller");
            need(simulation.has_value(), "simulation");
            break;
        case ExperimentKind::kOpenLoopSweep:
            need(sweep.has_value(), "sweep");
            break;
        case ExperimentKind::kMomentOde:
            need(moment.has_value(), "moment");
            if (moment && moment->closed_loop) need(controller.has_value(), "controller");
            break;
        case ExperimentKind::kStabilityReport:
            need(controller.has_value(), "controller");
            need(stability.has_value(), "stability");
            break;
        case ExperimentKind::kErgodicityReport:
            need(ergodicity.has_value(), "ergodicity");
            break;
    }

    if (controller) {
        if (!(controller->kc > 0.0)) issues.push_back("controller: kc must be > 0");
        if (!(controller->mu > 0.0)) issues.push_back("controller: mu must be > 0");
        if ((kind == ExperimentKind::kClosedLoopSsa || kind == ExperimentKind::kFullPaperRepro) &&
            simulation && controller->ts != simulation->ts)
            issues.push_back("controller: ts must equal simulation ts");
    }
    if (simulation) {
        try {
            simulation->validate();
        } catch (const ConfigError& e) {
            issues.insert(issues.end(), e.issues().begin(), e.issues().end());
        }
    }
    if (moment) {
        if (!(moment->dt > 0.0)) issues.push_back("moment: dt must be > 0");
        if (!(moment->t_final > 0.0)) issues.push_back("moment: t_final must be > 0");
        if (!(moment->x1_0 >= 0.0)) issues.push_back("moment: x1_0 must be >= 0");
        if (!(moment->x2_0 >= 0.0)) issues.push_back("moment: x2_0 must be >= 0");
        if (moment->variance.mode == VarianceSpec::Mode::kConstant &&
            !(moment->variance.value >= 0.0))
            issues.push_back("moment.variance: value must be >= 0");
    }
    if (sweep) {
        if (sweep->k1_values.empty()) issues.push_back("sweep: k1_values must not be empty");
        for (std::size_t i = 0; i < sweep->k1_values.size(); ++i) {
            if (!(sweep->k1_values[i] >= 0.0)) {
                issues.push_back("sweep: k1_values must be >= 0");
                break;
            }
            if (i > 0 && sweep->k1_values[i] < sweep->k1_values[i - 1]) {
                issues.push_back("sweep: k1_values must be sorted ascending");
                break;
            }
        }
        if (!(sweep->horizon > 0.0)) issues.push_back("sweep: horizon must be > 0");
        if (!(sweep->burn_in_fraction >= 0.0 && sweep->burn_in_fraction < 1.0))
            issues.push_back("sweep: burn_in_fraction must be in [0, 1)");
    }
    if (stability) {
        if (!(stability->v_star >= 0.0)) issues.push_back("stability: v_star must be >= 0");
        if (stability->box) {
            try {
                stability->box->validate();
            } catch (const std::invalid_argument& e) {
                issues.push_back(std::string("stability.box: ") + e.what());
            }
        }
    }
    if (ergodicity && ergodicity->grid_bound < 10)
        issues.push_back("ergodicity: grid_bound must be >= 10");

    if (!issues.empty()) throw ConfigError(std::move(issues));
}

}  // namespace dimerctl
