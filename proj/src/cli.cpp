#include "empskit/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "empskit/classify.hpp"
#include "empskit/error.hpp"
#include "empskit/spinchain.hpp"

namespace empskit::cli {

namespace {

struct LoadedState {
    State state;
    std::string id;
};

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ValidationError("malformed JSON in '" + path + "': " + e.what());
    }
}

LoadedState load_state(const RunConfig& config) {
    if (config.state_path) {
        return {state_from_json(read_json_file(*config.state_path)), *config.state_path};
    }
    if (config.builder) {
        const Json& b = *config.builder;
        std::string id = b.value("builder", std::string{"builder"});
        if (b.contains("params")) id += b["params"].dump();
        return {state_from_json(b), id};
    }
    throw ValidationError("no input state: pass --state FILE or --builder NAME");
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
    if (config.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.output);
    if (!file) throw ValidationError("cannot write output file '" + config.output + "'");
    file << text;
    if (!file) throw ValidationError("failed writing output file '" + config.output + "'");
}

void maybe_save_state(const RunConfig& config, const State& state) {
    if (!config.save_state) return;
    std::ofstream file(*config.save_state);
    if (!file) throw ValidationError("cannot write state file '" + *config.save_state + "'");
    file << state_to_json(state).dump() << '\n';
}

std::string resolved_format(const RunConfig& config) {
    if (!config.format.empty()) {
        if (config.format != "json" && config.format != "csv") {
            throw ValidationError("format must be json or csv, got '" + config.format + "'");
        }
        return config.format;
    }
    return (config.command == Command::Orbit || config.command == Command::Sweep) ? "csv" : "json";
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

SpinChainSpec chain_spec(const RunConfig& config, std::string& label) {
    if (config.spec_path) {
        label = *config.spec_path;
        return spin_chain_from_json(read_json_file(*config.spec_path));
    }
    label = config.hamiltonian;
    if (config.hamiltonian == "h1") return ising_chain(config.sites, config.coupling, config.field);
    if (config.hamiltonian == "h2") {
        if (config.sites != 5) throw ValidationError("h2 is defined on N = 5 sites only");
        return long_range_chain(config.coupling, config.field);
    }
    throw ValidationError("hamiltonian must be h1 or h2, got '" + config.hamiltonian + "'");
}

std::string run_emps(const RunConfig& config) {
    const auto loaded = load_state(config);
    maybe_save_state(config, loaded.state);
    return json_text(emps_record(loaded.id, loaded.state));
}

std::string run_classify(const RunConfig& config) {
    const auto loaded = load_state(config);
    maybe_save_state(config, loaded.state);
    if (const auto* rho = std::get_if<DensityMatrix>(&loaded.state)) {
        std::string family = config.family.value_or("");
        if (family.empty() && config.builder) {
            const std::string name = config.builder->value("builder", std::string{});
            if (name == "noisy_w") family = "w";
            if (name == "noisy_ghz") family = "ghz";
        }
        if (family != "w" && family != "ghz") {
            throw ValidationError("classify: mixed input needs --family w|ghz");
        }
        const auto report = discriminate_noisy(*rho, family == "w" ? NoisyFamily::W : NoisyFamily::Ghz);
        return json_text(noisy_record(loaded.id, report));
    }
    const auto& psi = std::get<PureState>(loaded.state);
    if (psi.num_qubits() == 3) return json_text(classification_record(loaded.id, classify_three_qubit(psi)));
    Json record = emps_record(loaded.id, loaded.state);
    record["verdict"] = nullptr;
    record["note"] = "SLOCC verdicts are issued for 3 qubits only; facet and indicator values reported";
    return json_text(record);
}

std::string run_polytope(const RunConfig& config) {
    if (config.emps_values) return json_text(polytope_record(EmpsVector(*config.emps_values)));
    const auto loaded = load_state(config);
    return json_text(polytope_record(emps_vector(loaded.state)));
}

std::string run_orbit(const RunConfig& config) {
    if (config.samples < 1) throw ValidationError("orbit: --samples must be >= 1");
    const auto loaded = load_state(config);
    const auto* psi = std::get_if<PureState>(&loaded.state);
    if (!psi) throw ValidationError("orbit: input must be a pure state");
    const auto samples = slocc_orbit_sample(*psi, config.samples, config.seed);
    if (resolved_format(config) == "csv") return orbit_csv(samples);
    Json points = Json::array();
    for (const auto& v : samples) points.push_back(Json(std::vector<double>(v.values().begin(), v.values().end())));
    Json record = {{"state_id", loaded.id}, {"units", "E"}, {"seed", config.seed}, {"samples", std::move(points)}};
    return json_text(record);
}

std::string run_ising(const RunConfig& config) {
    std::string label;
    const auto spec = chain_spec(config, label);
    const auto ground = ground_state(build_hamiltonian(spec));
    maybe_save_state(config, ground.state);
    return json_text(ground_state_record(label, spec, ground));
}

std::string run_sweep(const RunConfig& config) {
    std::string label;
    const auto spec = chain_spec(config, label);
    SweepParameter parameter;
    if (config.sweep_parameter == "J") {
        parameter = SweepParameter::Coupling;
    } else if (config.sweep_parameter == "h") {
        parameter = SweepParameter::Field;
    } else if (config.sweep_parameter == "coefficient") {
        parameter = SweepParameter::Coefficient;
        if (config.term_index >= spec.extra_terms.size()) {
            throw ValidationError("sweep: --term " + std::to_string(config.term_index) + " but the Hamiltonian has " +
                                  std::to_string(spec.extra_terms.size()) + " extra terms");
        }
    } else {
        throw ValidationError("sweep: --param must be J, h or coefficient");
    }
    const auto rows = indicator_sweep(spec, parameter, config.sweep_values, config.term_index);
    if (resolved_format(config) == "csv") return sweep_csv(rows);
    return json_text(sweep_json(config.sweep_parameter, rows));
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        resolved_format(config);
        std::string text;
        switch (config.command) {
            case Command::Emps: text = run_emps(config); break;
            case Command::Classify: text = run_classify(config); break;
            case Command::Polytope: text = run_polytope(config); break;
            case Command::Orbit: text = run_orbit(config); break;
            case Command::Ising: text = run_ising(config); break;
            case Command::Sweep: text = run_sweep(config); break;
        }
        write_output(config, text, out);
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

namespace {

struct StateFlags {
    std::string builder;
    int n = 3;
    std::optional<double> theta;
    std::vector<double> coeffs;
    int l = 1;
    double alpha = M_SQRT1_2;
    double beta = M_SQRT1_2;
    int position = 3;
    double v = 0.0;
};

void add_state_options(CLI::App& app, StateFlags& flags, RunConfig& config) {
    app.add_option("--state", config.state_path, "State file (JSON)");
    app.add_option("--builder", flags.builder, "ghz | w | dicke | generalized_dicke | biseparable | noisy_w | noisy_ghz");
    app.add_option("--n", flags.n, "Qubit count for ghz/dicke builders");
    app.add_option("--theta", flags.theta, "GHZ angle in radians");
    app.add_option("--coeffs", flags.coeffs, "Comma-separated coefficients (w, generalized_dicke)")->delimiter(',');
    app.add_option("--l", flags.l, "Dicke excitation number");
    app.add_option("--alpha", flags.alpha, "Biseparable amplitude of |00>");
    app.add_option("--beta", flags.beta, "Biseparable amplitude of |11>");
    app.add_option("--position", flags.position, "Biseparable factored qubit (1..3)");
    app.add_option("--v", flags.v, "Noise weight for noisy_w / noisy_ghz");
    app.add_option("--save-state", config.save_state, "Write the input state to this file");
}

void add_output_options(CLI::App& app, RunConfig& config) {
    app.add_option("--output,-o", config.output, "Output path (default: stdout)");
    app.add_option("--format", config.format, "json | csv");
}

void add_chain_options(CLI::App& app, RunConfig& config) {
    // --h is the field, so help is long-form only here.
    app.set_help_flag("--help", "Print this help message and exit");
    app.add_option("--hamiltonian", config.hamiltonian, "h1 (nearest neighbour) | h2 (long range)");
    app.add_option("--spec", config.spec_path, "Spin-chain spec file (JSON)");
    app.add_option("--N,--sites", config.sites, "Chain length");
    app.add_option("--J,--coupling", config.coupling, "Coupling constant");
    app.add_option("--h,--field", config.field, "External field");
}

std::optional<Json> builder_json(const StateFlags& flags) {
    if (flags.builder.empty()) return std::nullopt;
    Json params = Json::object();
    const std::string& b = flags.builder;
    if (b == "ghz") {
        params["n"] = flags.n;
        if (!flags.theta) throw ValidationError("builder ghz needs --theta");
        params["theta"] = *flags.theta;
    } else if (b == "w") {
        params["coeffs"] = flags.coeffs;
    } else if (b == "dicke") {
        params["n"] = flags.n;
        params["l"] = flags.l;
    } else if (b == "generalized_dicke") {
        params["n"] = flags.n;
        params["l"] = flags.l;
        params["coeffs"] = flags.coeffs;
    } else if (b == "biseparable") {
        params["alpha"] = flags.alpha;
        params["beta"] = flags.beta;
        params["position"] = flags.position;
    } else if (b == "noisy_w" || b == "noisy_ghz") {
        params["v"] = flags.v;
    }
    return Json{{"builder", b}, {"params", std::move(params)}};
}

std::uint64_t env_seed() {
    const char* s = std::getenv("EMPSKIT_SEED");
    if (!s || !*s) return kDefaultSeed;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw ValidationError(std::string("EMPSKIT_SEED is not an unsigned integer: ") + s);
    return v;
}

}  // namespace

int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Marginal passive-state energies, SLOCC polytopes and Ising ground states"};
    app.require_subcommand(1);

    RunConfig config;
    StateFlags flags;
    std::optional<std::uint64_t> seed;
    std::vector<double> emps_values;
    double sweep_from = 0.0;
    double sweep_to = 2.0;
    int sweep_steps = 21;

    app.add_option("--seed", seed, "Random seed (default 42, or EMPSKIT_SEED)");

    auto* emps = app.add_subcommand("emps", "EMPS vector, total, eta and polygon report");
    add_state_options(*emps, flags, config);
    add_output_options(*emps, config);

    auto* classify = app.add_subcommand("classify", "Three-qubit SLOCC verdict or noisy W/GHZ discrimination");
    add_state_options(*classify, flags, config);
    add_output_options(*classify, config);
    classify->add_option("--family", config.family, "w | ghz, for density-matrix state files");

    auto* polytope = app.add_subcommand("polytope", "Membership in the three-qubit W and GHZ polytopes");
    add_state_options(*polytope, flags, config);
    add_output_options(*polytope, config);
    polytope->add_option("--emps", emps_values, "Comma-separated EMPS vector e1,e2,e3")->delimiter(',');

    auto* orbit = app.add_subcommand("orbit", "EMPS point cloud of random SLOCC images");
    add_state_options(*orbit, flags, config);
    add_output_options(*orbit, config);
    orbit->add_option("--samples", config.samples, "Number of samples");

    auto* ising = app.add_subcommand("ising", "Ground state and indicators of an Ising chain");
    add_chain_options(*ising, config);
    add_output_options(*ising, config);
    ising->add_option("--save-state", config.save_state, "Write the ground state to this file");

    auto* sweep = app.add_subcommand("sweep", "Indicators along a parameter sweep");
    add_chain_options(*sweep, config);
    add_output_options(*sweep, config);
    sweep->add_option("--param", config.sweep_parameter, "J | h | coefficient");
    sweep->add_option("--term", config.term_index, "Extra-term index for --param coefficient (0-based)");
    auto* values_opt = sweep->add_option("--values", config.sweep_values, "Comma-separated values")->delimiter(',');
    sweep->add_option("--from", sweep_from, "Range start (default 0)")->excludes(values_opt);
    sweep->add_option("--to", sweep_to, "Range end (default 2)")->excludes(values_opt);
    sweep->add_option("--steps", sweep_steps, "Range points (default 21)")->excludes(values_opt);

    for (auto* sub : {emps, classify, polytope, orbit, ising, sweep}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    try {
        config.seed = seed ? *seed : env_seed();
        config.builder = builder_json(flags);
        if (config.builder && config.state_path) throw ValidationError("pass either --state or --builder, not both");
        if (!emps_values.empty()) config.emps_values = emps_values;
        if (sweep->parsed() && values_opt->count() == 0) {
            if (sweep_steps < 1) throw ValidationError("sweep: --steps must be >= 1");
            config.sweep_values.clear();
            for (int k = 0; k < sweep_steps; ++k) {
                const double t = sweep_steps == 1 ? 0.0 : static_cast<double>(k) / (sweep_steps - 1);
                config.sweep_values.push_back(sweep_from + t * (sweep_to - sweep_from));
            }
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    }

    if (emps->parsed()) config.command = Command::Emps;
    if (classify->parsed()) config.command = Command::Classify;
    if (polytope->parsed()) config.command = Command::Polytope;
    if (orbit->parsed()) config.command = Command::Orbit;
    if (ising->parsed()) config.command = Command::Ising;
    if (sweep->parsed()) config.command = Command::Sweep;
    return run(config, out, err);
}

}  // namespace empskit::cli
