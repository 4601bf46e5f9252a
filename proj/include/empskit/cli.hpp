#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "empskit/random.hpp"
#include "empskit/serialize.hpp"

namespace empskit::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kValidation = 2,
    kNumeric = 3,
};

enum class Command { Emps, Classify, Polytope, Orbit, Ising, Sweep };

struct RunConfig {
    Command command = Command::Emps;
    /// Path to a state file; alternative to `builder`.
    std::optional<std::string> state_path;
    /// {"builder": name, "params": {...}} assembled from flags.
    std::optional<Json> builder;
    /// Empty writes to the output stream.
    std::string output;
    /// "json" or "csv"; empty picks the command default (csv for orbit/sweep).
    std::string format;
    std::uint64_t seed = kDefaultSeed;
    int samples = 1000;
    /// Writes the input state as a state file.
    std::optional<std::string> save_state;

    // polytope
    std::optional<std::vector<double>> emps_values;

    // classify on a density-matrix file: noisy family "w" or "ghz"
    std::optional<std::string> family;

    // ising / sweep
    std::string hamiltonian = "h1";
    std::optional<std::string> spec_path;
    int sites = 5;
    double coupling = 1.0;
    double field = 1.0;
    std::string sweep_parameter = "h";
    std::size_t term_index = 0;
    std::vector<double> sweep_values;
};

/// Executes one command. Errors are reported on `err` and mapped to exit codes:
/// 2 for invalid input, 3 for numeric failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) into a RunConfig and runs it.
/// EMPSKIT_SEED replaces the default seed when --seed is absent.
int run_command_line(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace empskit::cli
