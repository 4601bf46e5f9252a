#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "empskit/classify.hpp"
#include "empskit/cli.hpp"
#include "empskit/error.hpp"
#include "empskit/serialize.hpp"

using namespace empskit;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "empskit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    const auto dir = fs::temp_directory_path() / "empskit_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream(path) << text;
    return path;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("state JSON round trip preserves EMPS bit for bit") {
    Rng rng(51);
    for (int n = 1; n <= 5; ++n) {
        const State psi = random_pure_state(n, rng);
        const State back = state_from_json(Json::parse(state_to_json(psi).dump()));
        const auto a = emps_vector(psi).values();
        const auto b = emps_vector(back).values();
        CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    }
    const State rho = random_density_matrix(3, rng);
    const State back = state_from_json(Json::parse(state_to_json(rho).dump()));
    REQUIRE(std::holds_alternative<DensityMatrix>(back));
    const auto a = emps_vector(rho).values();
    const auto b = emps_vector(back).values();
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST_CASE("state file parsing") {
    const auto bell = state_from_json(Json::parse(R"({"n": 2, "amps": [0.7071067811865476, 0, 0, [0.7071067811865476, 0]]})"));
    CHECK(std::abs(emps(std::get<PureState>(bell), 1) - 0.5) < 1e-12);

    const auto built = state_from_json(Json::parse(R"({"builder": "w", "params": {"coeffs": [0.5, 0.25, 0.25]}})"));
    CHECK(std::abs(emps(std::get<PureState>(built), 1) - 0.5) < 1e-12);

    const auto mixed = state_from_json(Json::parse(R"({"dim": 2, "entries": [0.5, 0, 0, 0.5]})"));
    CHECK(std::holds_alternative<DensityMatrix>(mixed));

    CHECK_THROWS_WITH_AS(state_from_json(Json::parse(R"({"n": 1, "amps": [1, 1]})")), doctest::Contains("normalization"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(state_from_json(Json::parse(R"({"n": 2, "amps": [1, 0]})")), doctest::Contains("2^n"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(state_from_json(Json::parse(R"({"dim": 2, "entries": [0.5, 0.1, 0.2, 0.5]})")),
                         doctest::Contains("ermitian"), ValidationError);
    CHECK_THROWS_WITH_AS(state_from_json(Json::parse(R"({"builder": "cluster"})")), doctest::Contains("unknown builder"),
                         ValidationError);
    CHECK_THROWS_WITH_AS(state_from_json(Json::parse(R"({"builder": "ghz", "params": {"n": 3}})")),
                         doctest::Contains("theta"), ValidationError);
    CHECK_THROWS_AS(state_from_json(Json::parse("[1, 2]")), ValidationError);
}

TEST_CASE("spin-chain JSON") {
    const auto spec = long_range_chain(0.5, 2.0);
    const auto back = spin_chain_from_json(spin_chain_to_json(spec));
    CHECK(back.sites == 5);
    CHECK(back.coupling == 0.5);
    CHECK(back.field == 2.0);
    REQUIRE(back.extra_terms.size() == 3);
    CHECK(back.extra_terms[1].paulis == "XIXXX");
    CHECK_THROWS_AS(spin_chain_from_json(Json::parse(R"({"N": 3, "extra_terms": [{"coefficient": 1, "pauli": "XX"}]})")),
                    ValidationError);
}

TEST_CASE("CSV formats") {
    CHECK(sweep_csv({}) == "parameter,ground_energy,gap,eta_over_E,entropy_criterion,degenerate\n");
    const auto csv = orbit_csv({EmpsVector({0.0, 0.25, 0.5})});
    CHECK(csv == "e1,e2,e3\n0,0.25,0.5\n");
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("cli: emps on the GHZ builder") {
    const auto r = run_cli({"emps", "--builder", "ghz", "--n", "3", "--theta", "0.7853981634"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["units"] == "E");
    for (const auto& e : j["emps"]) CHECK(std::abs(e.get<double>() - 0.5) < 1e-9);
    CHECK(std::abs(j["total"].get<double>() - 1.5) < 1e-9);
}

TEST_CASE("cli: classify a W state") {
    const auto r = run_cli({"classify", "--builder", "w", "--coeffs", "0.34,0.33,0.33"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["verdict"] == "W-or-GHZ region, genuinely entangled");
    CHECK(std::abs(j["eta"].get<double>() - 0.32) < 1e-9);
}

TEST_CASE("cli: noisy classification infers the family from the builder") {
    const auto r = run_cli({"classify", "--builder", "noisy_w", "--v", "0.3"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(std::abs(j["total"].get<double>() - 1.15) < 1e-9);
    CHECK(j["matches_family"] == true);
}

TEST_CASE("cli: validation failures exit with code 2") {
    const auto unnormalized = write_file("unnormalized.json", R"({"n": 1, "amps": [1, 1]})");
    auto r = run_cli({"emps", "--state", unnormalized.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("normalization") != std::string::npos);

    const auto non_hermitian = write_file("non_hermitian.json", R"({"dim": 2, "entries": [0.5, 1, 0, 0.5]})");
    r = run_cli({"emps", "--state", non_hermitian.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("ermitian") != std::string::npos);

    const auto malformed = write_file("malformed.json", "{\"n\": 1, ");
    CHECK(run_cli({"emps", "--state", malformed.string()}).code == 2);
    CHECK(run_cli({"emps", "--state", (scratch_dir() / "missing.json").string()}).code == 2);
    CHECK(run_cli({"emps", "--builder", "ghz", "--n", "3", "--theta", "2"}).code == 2);
    CHECK(run_cli({"orbit", "--builder", "dicke", "--n", "3", "--l", "1", "--samples", "0"}).code == 2);
    CHECK(run_cli({"classify", "--builder", "dicke", "--n", "3", "--l", "1", "--format", "xml"}).code == 2);
    CHECK(run_cli({"ising", "--hamiltonian", "h2", "--N", "4"}).code == 2);
    CHECK(run_cli({"frobnicate"}).code == 2);
}

TEST_CASE("cli: classify on more than three qubits reports values without a verdict") {
    const auto r = run_cli({"classify", "--builder", "dicke", "--n", "4", "--l", "2"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["verdict"].is_null());
    CHECK(std::abs(j["total"].get<double>() - 2.0) < 1e-9);
}

TEST_CASE("cli: polytope on explicit values") {
    const auto r = run_cli({"polytope", "--emps", "0.5,0.5,0.5"});
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["ghz"]["member"] == true);
    CHECK(j["w"]["member"] == false);
}

TEST_CASE("cli: seeded orbit runs are reproducible") {
    const auto a = scratch_dir() / "orbit_a.csv";
    const auto b = scratch_dir() / "orbit_b.csv";
    const std::vector<std::string> base = {"orbit", "--builder", "ghz", "--n", "3", "--theta", "0.5", "--samples", "50"};
    auto args = base;
    args.insert(args.end(), {"--seed", "7", "-o", a.string()});
    REQUIRE(run_cli(args).code == 0);
    args = base;
    args.insert(args.end(), {"--seed", "7", "-o", b.string()});
    REQUIRE(run_cli(args).code == 0);
    const auto text = read_file(a);
    CHECK(text == read_file(b));
    CHECK(text.rfind("e1,e2,e3\n", 0) == 0);

    auto other = run_cli({"orbit", "--builder", "ghz", "--n", "3", "--theta", "0.5", "--samples", "50", "--seed", "8"});
    CHECK(other.out != text);

    ::setenv("EMPSKIT_SEED", "7", 1);
    const auto from_env = run_cli(base);
    ::unsetenv("EMPSKIT_SEED");
    CHECK(from_env.out == text);

    const auto seeded_default = run_cli({"orbit", "--builder", "ghz", "--n", "3", "--theta", "0.5", "--samples", "50", "--seed", "42"});
    CHECK(run_cli(base).out == seeded_default.out);
}

TEST_CASE("cli: saved states reproduce the EMPS output") {
    const auto saved = scratch_dir() / "saved_state.json";
    const auto first = run_cli({"emps", "--builder", "biseparable", "--alpha", "0.6", "--beta", "0.8", "--position", "2",
                                "--save-state", saved.string()});
    REQUIRE(first.code == 0);
    const auto second = run_cli({"emps", "--state", saved.string()});
    REQUIRE(second.code == 0);
    auto a = Json::parse(first.out);
    auto b = Json::parse(second.out);
    CHECK(a["emps"] == b["emps"]);
    CHECK(a["total"] == b["total"]);
}

TEST_CASE("cli: ising and sweep") {
    auto r = run_cli({"ising", "--hamiltonian", "h1"});
    REQUIRE(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(std::abs(j["ground_energy"].get<double>() - -3.5) < 1e-9);

    const auto spec = write_file("h2_spec.json", spin_chain_to_json(long_range_chain()).dump());
    r = run_cli({"ising", "--spec", spec.string()});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    CHECK(j["eta_over_E"].get<double>() > 1e-6);

    r = run_cli({"sweep", "--hamiltonian", "h2", "--param", "h", "--values", "0.5,1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("parameter,ground_energy,gap,eta_over_E,entropy_criterion,degenerate\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

    r = run_cli({"sweep", "--hamiltonian", "h1", "--from", "0", "--to", "1", "--steps", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    j = Json::parse(r.out);
    REQUIRE(j["rows"].size() == 3);
    CHECK(j["rows"][0]["degenerate"] == true);
    CHECK(j["rows"][2]["parameter"] == 1.0);
}
