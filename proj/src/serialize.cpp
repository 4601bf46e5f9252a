#include "empskit/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "empskit/error.hpp"

namespace empskit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError(what); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    bad(where + ": expected a number or a [re, im] pair");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

const Json& require(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) bad(where + ": missing field '" + key + "'");
    return j.at(key);
}

int require_int(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number_integer()) bad(where + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

double require_double(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_number()) bad(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> require_doubles(const Json& j, const char* key, const std::string& where) {
    const Json& v = require(j, key, where);
    if (!v.is_array()) bad(where + ": field '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) bad(where + ": field '" + key + "' must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Json doubles(std::span<const double> xs) {
    Json arr = Json::array();
    for (double x : xs) arr.push_back(x);
    return arr;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

StateBuilderSpec builder_from_json(const std::string& name, const Json& params) {
    const std::string where = "builder '" + name + "'";
    if (!params.is_object()) bad(where + ": params must be an object");
    if (name == "ghz") return GhzSpec{require_int(params, "n", where), require_double(params, "theta", where)};
    if (name == "w") {
        const char* key = params.contains("coefficients") ? "coefficients" : "coeffs";
        return WSpec{require_doubles(params, key, where)};
    }
    if (name == "dicke") return DickeSpec{require_int(params, "n", where), require_int(params, "l", where)};
    if (name == "generalized_dicke") {
        const char* key = params.contains("coefficients") ? "coefficients" : "coeffs";
        return GeneralizedDickeSpec{require_int(params, "n", where), require_int(params, "l", where),
                                    require_doubles(params, key, where)};
    }
    if (name == "biseparable") {
        BiseparableSpec spec;
        if (params.contains("alpha")) spec.alpha = complex_from_json(params["alpha"], where + " alpha");
        if (params.contains("beta")) spec.beta = complex_from_json(params["beta"], where + " beta");
        if (params.contains("position")) spec.position = require_int(params, "position", where);
        return spec;
    }
    if (name == "noisy_w") return NoisyWSpec{require_double(params, "v", where)};
    if (name == "noisy_ghz") return NoisyGhzSpec{require_double(params, "v", where)};
    bad("unknown builder '" + name + "' (expected ghz, w, dicke, generalized_dicke, biseparable, noisy_w, noisy_ghz)");
}

State state_from_json(const Json& j) {
    if (!j.is_object()) bad("state file: top level must be a JSON object");
    if (j.contains("builder")) {
        if (!j["builder"].is_string()) bad("state file: 'builder' must be a string");
        const Json params = j.contains("params") ? j["params"] : Json::object();
        return build_state(builder_from_json(j["builder"].get<std::string>(), params));
    }
    if (j.contains("amps")) {
        const int n = require_int(j, "n", "state file");
        const Json& amps = j["amps"];
        if (!amps.is_array()) bad("state file: 'amps' must be an array");
        if (n < 1 || n > kMaxQubits) bad("state file: n = " + std::to_string(n) + " outside 1..12");
        if (amps.size() != (std::size_t{1} << n)) {
            bad("state file: 'amps' has " + std::to_string(amps.size()) + " entries, expected 2^n = " +
                std::to_string(std::size_t{1} << n));
        }
        std::vector<Complex> values;
        values.reserve(amps.size());
        for (std::size_t k = 0; k < amps.size(); ++k) values.push_back(complex_from_json(amps[k], "state file amps"));
        return PureState(std::move(values));
    }
    if (j.contains("entries")) {
        const int dim = require_int(j, "dim", "state file");
        const Json& entries = j["entries"];
        if (!entries.is_array()) bad("state file: 'entries' must be an array");
        if (dim < 2 || dim > (1 << kMaxQubits)) bad("state file: dim = " + std::to_string(dim) + " out of range");
        const auto d = static_cast<std::size_t>(dim);
        if (entries.size() != d * d) {
            bad("state file: 'entries' has " + std::to_string(entries.size()) + " values, expected dim^2 = " +
                std::to_string(d * d));
        }
        std::vector<Complex> values;
        values.reserve(entries.size());
        for (const auto& e : entries) values.push_back(complex_from_json(e, "state file entries"));
        return DensityMatrix(CMatrix(d, d, std::move(values)));
    }
    bad("state file: expected 'amps', 'entries' or 'builder'");
}

Json state_to_json(const State& state) {
    if (const auto* psi = std::get_if<PureState>(&state)) {
        Json amps = Json::array();
        for (const auto& z : psi->amplitudes()) amps.push_back(complex_to_json(z));
        return {{"n", psi->num_qubits()}, {"amps", std::move(amps)}};
    }
    const auto& rho = std::get<DensityMatrix>(state);
    Json entries = Json::array();
    for (const auto& z : rho.matrix().data()) entries.push_back(complex_to_json(z));
    return {{"dim", rho.dim()}, {"entries", std::move(entries)}};
}

SpinChainSpec spin_chain_from_json(const Json& j) {
    const std::string where = "spin chain file";
    if (!j.is_object()) bad(where + ": top level must be a JSON object");
    SpinChainSpec spec;
    spec.sites = j.contains("N") ? require_int(j, "N", where) : 5;
    spec.coupling = j.contains("J") ? require_double(j, "J", where) : 1.0;
    spec.field = j.contains("h") ? require_double(j, "h", where) : 1.0;
    if (j.contains("extra_terms")) {
        if (!j["extra_terms"].is_array()) bad(where + ": 'extra_terms' must be an array");
        for (const auto& t : j["extra_terms"]) {
            const Json& p = require(t, "pauli", where + " term");
            if (!p.is_string()) bad(where + ": term 'pauli' must be a string");
            spec.extra_terms.push_back({require_double(t, "coefficient", where + " term"), p.get<std::string>()});
        }
    }
    validate(spec);
    return spec;
}

Json spin_chain_to_json(const SpinChainSpec& spec) {
    Json terms = Json::array();
    for (const auto& t : spec.extra_terms) terms.push_back({{"coefficient", t.coefficient}, {"pauli", t.paulis}});
    return {{"N", spec.sites}, {"J", spec.coupling}, {"h", spec.field}, {"extra_terms", std::move(terms)}};
}

Json emps_record(const std::string& state_id, const State& state) {
    const auto v = emps_vector(state);
    const auto polygon = polygon_check(v);
    Json record;
    record["state_id"] = state_id;
    record["units"] = "E";
    record["n"] = v.size();
    record["pure"] = std::holds_alternative<PureState>(state);
    record["emps"] = doubles(v.values());
    record["total"] = total_emps(v);
    record["eta"] = v.size() >= 3 ? Json(eta_indicator(v)) : Json(nullptr);
    Json poly = {{"satisfied", polygon.satisfied}, {"worst_slack", polygon.worst_slack}};
    poly["violating_index"] = polygon.violating_index ? Json(*polygon.violating_index) : Json(nullptr);
    record["polygon"] = std::move(poly);
    record["total_bound"] = {{"satisfied", satisfies_total_bound(v)}, {"slack", total_bound_slack(v)}};
    return record;
}

Json classification_record(const std::string& state_id, const ClassLabel& label) {
    Json evidence = Json::array();
    for (const auto& e : label.evidence) {
        evidence.push_back({{"facet", e.facet}, {"value", e.value}, {"threshold", e.threshold}, {"slack", e.slack}});
    }
    Json record;
    record["state"] = state_id;
    record["units"] = "E";
    record["emps"] = doubles(label.emps.values());
    record["total"] = label.total;
    record["eta"] = label.eta;
    record["verdict"] = describe(label);
    record["verdict_code"] = verdict_name(label.verdict);
    record["genuinely_entangled"] = label.genuinely_entangled;
    record["cut"] = label.cut ? Json(*label.cut) : Json(nullptr);
    record["evidence"] = std::move(evidence);
    return record;
}

Json polytope_record(const EmpsVector& v) {
    Json record;
    record["units"] = "E";
    record["emps"] = doubles(v.values());
    for (auto [name, cls] : {std::pair{"ghz", PolytopeClass::Ghz}, std::pair{"w", PolytopeClass::W}}) {
        const auto m = polytope_membership_3q(v, cls);
        Json facets = Json::array();
        for (const auto& f : m.facets) facets.push_back({{"facet", f.facet}, {"slack", f.slack}});
        record[name] = {{"member", m.member}, {"facets", std::move(facets)}};
    }
    return record;
}

Json noisy_record(const std::string& state_id, const NoisyReport& report) {
    Json record;
    record["state"] = state_id;
    record["units"] = "E";
    record["family"] = report.family == NoisyFamily::W ? "noisy_w" : "noisy_ghz";
    record["v"] = report.v;
    record["matches_family"] = report.matches_family;
    record["emps"] = doubles(report.emps.values());
    record["total"] = report.total;
    record["predicted_total"] = report.predicted_total;
    record["w_bound"] = report.w_bound;
    record["below_w_bound"] = report.below_w_bound;
    record["in_entangled_range"] = report.in_entangled_range;
    return record;
}

Json ground_state_record(const std::string& label, const SpinChainSpec& spec, const GroundStateResult& ground) {
    Json record;
    record["hamiltonian"] = label;
    record["spec"] = spin_chain_to_json(spec);
    record["units"] = "E";
    record["ground_energy"] = ground.energy;
    record["gap"] = ground.gap;
    record["degenerate"] = ground.degenerate;
    if (spec.sites >= 3) {
        const auto v = emps_vector(ground.state);
        record["emps"] = doubles(v.values());
        record["eta_over_E"] = eta_indicator(v);
        record["entropy_criterion"] = entropy_criterion(ground.state);
    }
    return record;
}

std::string orbit_csv(const std::vector<EmpsVector>& samples) {
    std::ostringstream os;
    const int n = samples.empty() ? 0 : samples.front().size();
    for (int i = 1; i <= n; ++i) os << (i > 1 ? "," : "") << 'e' << i;
    os << '\n';
    for (const auto& v : samples) {
        for (int i = 0; i < v.size(); ++i) os << (i > 0 ? "," : "") << format_double(v.values()[i]);
        os << '\n';
    }
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "parameter,ground_energy,gap,eta_over_E,entropy_criterion,degenerate\n";
    for (const auto& r : rows) {
        os << format_double(r.parameter) << ',' << format_double(r.ground_energy) << ',' << format_double(r.gap)
           << ',' << format_double(r.eta) << ',' << format_double(r.entropy) << ',' << (r.degenerate ? "true" : "false")
           << '\n';
    }
    return os.str();
}

Json sweep_json(const std::string& parameter, const std::vector<SweepRow>& rows) {
    Json arr = Json::array();
    for (const auto& r : rows) {
        arr.push_back({{"parameter", r.parameter},
                       {"ground_energy", r.ground_energy},
                       {"gap", r.gap},
                       {"eta_over_E", r.eta},
                       {"entropy_criterion", r.entropy},
                       {"degenerate", r.degenerate}});
    }
    return {{"parameter", parameter}, {"units", "E"}, {"rows", std::move(arr)}};
}

}  // namespace empskit
