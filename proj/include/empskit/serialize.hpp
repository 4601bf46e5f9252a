#pragma once

// JSON and CSV formats.
//
// State files:
//   {"n": 3, "amps": [[re, im], ...]}                      pure state
//   {"dim": 8, "entries": [[re, im], ...]}                 density matrix, row-major
//   {"builder": "ghz", "params": {"n": 3, "theta": 0.7}}   named family
// Spin-chain files:
//   {"N": 5, "J": 1.0, "h": 1.0, "extra_terms": [{"coefficient": 4.0, "pauli": "IXXXI"}]}

#include <string>
#include <vector>

#include <json.hpp>

#include "empskit/classify.hpp"
#include "empskit/emps.hpp"
#include "empskit/qcore.hpp"
#include "empskit/spinchain.hpp"

namespace empskit {

using Json = nlohmann::json;

/// Throws ValidationError naming the offending field or violated invariant.
State state_from_json(const Json& j);
StateBuilderSpec builder_from_json(const std::string& name, const Json& params);
Json state_to_json(const State& state);

SpinChainSpec spin_chain_from_json(const Json& j);
Json spin_chain_to_json(const SpinChainSpec& spec);

Json emps_record(const std::string& state_id, const State& state);
Json classification_record(const std::string& state_id, const ClassLabel& label);
Json polytope_record(const EmpsVector& v);
Json noisy_record(const std::string& state_id, const NoisyReport& report);
Json ground_state_record(const std::string& label, const SpinChainSpec& spec, const GroundStateResult& ground);

/// Header e1,...,en then one row per sample.
std::string orbit_csv(const std::vector<EmpsVector>& samples);
/// Header parameter,ground_energy,gap,eta_over_E,entropy_criterion,degenerate.
std::string sweep_csv(const std::vector<SweepRow>& rows);
Json sweep_json(const std::string& parameter, const std::vector<SweepRow>& rows);

/// Shortest text that parses back to the same double.
std::string format_double(double x);

}  // namespace empskit
