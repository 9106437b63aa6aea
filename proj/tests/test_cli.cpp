#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>
#include <string>

#include <json.hpp>

#include "helpers.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string("ECG_COLOR=0 ") + ECG_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string fx(const std::string& name) { return ecgtest::fixture_path(name); }

} // namespace

TEST_CASE("analyze produces the documented json report") {
    auto r = run_cli("analyze " + fx("counterexample.ecg") + " --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["graph"] == "counterexample");
    CHECK(j["coloring_number"] == 2);
    CHECK(j["row_finite"] == true);
    CHECK(j["simplicity_necessary"]["pass"].is_boolean());
    CHECK(j["exactness"]["verdict"] == "unknown");
    CHECK(j["nuclearity"]["verdict"] == "unknown");
    CHECK(j["k_theory"]["k0"].contains("rank"));
    CHECK(j["k_theory"]["vertex_classes"].size() == 3);

    // key order is pinned
    std::vector<std::string> keys;
    auto oj = nlohmann::ordered_json::parse(r.out);
    for (auto it = oj.begin(); it != oj.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"graph", "coloring_number", "row_finite",
                                           "simplicity_necessary", "exactness", "nuclearity",
                                           "k_theory"});
}

TEST_CASE("analyze reports non-exactness with a witness") {
    auto r = run_cli("analyze " + fx("two_loops_bicolor.ecg") + " --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["exactness"]["verdict"] == "not_exact");
    CHECK(j["exactness"]["witness"]["vertices"][0] == "v");
}

TEST_CASE("analyze is byte-deterministic and exits 2 on bad input") {
    auto a = run_cli("analyze " + fx("o2_o4.ecg") + " --json");
    auto b = run_cli("analyze " + fx("o2_o4.ecg") + " --json");
    CHECK(a.out == b.out);
    CHECK(run_cli("analyze " + fx("bad/malformed.ecg")).exit_code == 2);
    CHECK(run_cli("analyze " + fx("nonexistent.ecg")).exit_code == 2);
}

TEST_CASE("batch analyze sorts by file name") {
    auto r = run_cli("analyze " + std::string(ECG_FIXTURE_DIR) + " --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    std::vector<std::string> names;
    for (const auto& item : j) names.push_back(item["graph"]);
    CHECK(std::is_sorted(names.begin(), names.end()));
    CHECK(names.size() >= 15);
}

TEST_CASE("ktheory subcommand") {
    auto r = run_cli("ktheory " + fx("o2_o4.ecg") + " --json");
    CHECK(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["k_theory"]["k0"]["rank"] == 0);
    CHECK(j["k_theory"]["k0"]["torsion"].empty());
    CHECK(j["k_theory"]["k1"]["rank"] == 1);

    auto m3 = run_cli("ktheory " + fx("m3_product.ecg"));
    CHECK(m3.exit_code == 0);
    CHECK(m3.out.find("K0: Z\n") != std::string::npos);
    CHECK(m3.out.find("K1: 0\n") != std::string::npos);

    auto l2 = run_cli("ktheory " + fx("l2.ecg"));
    CHECK(l2.out.find("K0: 0") != std::string::npos);
    CHECK(l2.out.find("K1: 0") != std::string::npos);
}

TEST_CASE("color-number subcommand") {
    auto r = run_cli("color-number " + fx("counterexample.ecg"));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2\n");
    auto j = run_cli("color-number " + fx("gn3.ecg") + " --json");
    CHECK(nlohmann::json::parse(j.out)["coloring_number"] == 3);
}

TEST_CASE("free-product subcommand emits canonical text") {
    auto r = run_cli("free-product " + fx("m3_left.ecg") + " " + fx("m3_right.ecg") +
                     " --share v1,v2,v3");
    CHECK(r.exit_code == 0);
    auto parsed = ecg::io::parse_graph(r.out);
    REQUIRE(parsed.ok());
    CHECK(*parsed.graph == ecgtest::fixture("m3_product.ecg"));

    // single input is a canonicalized echo
    auto echo = run_cli("free-product " + fx("l2.ecg") + " --share v");
    CHECK(echo.exit_code == 0);
    CHECK(echo.out == ecg::io::emit_graph(ecgtest::fixture("l2.ecg")));

    // colliding edge ids
    auto bad = run_cli("free-product " + fx("l2.ecg") + " " + fx("l2.ecg") + " --share v");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("verify-hom exit codes") {
    auto ok = run_cli("verify-hom " + fx("o2_o3.ecg") + " " + fx("o2_o2.ecg") + " --map " +
                      fx("phi_m3.hom") + " --inverse " + fx("psi_m3.hom") + " --json");
    CHECK(ok.exit_code == 0);
    auto j = nlohmann::json::parse(ok.out);
    CHECK(j["verification"]["all_hold"] == true);
    CHECK(j["inverse_verification"]["all_hold"] == true);
    CHECK(j["compositions"]["all_hold"] == true);

    auto tau = run_cli("verify-hom " + fx("counterexample.ecg") + " " + fx("h2v.ecg") +
                       " --map " + fx("tau.hom") + " --json");
    CHECK(tau.exit_code == 1);
    auto tj = nlohmann::json::parse(tau.out);
    CHECK(tj["verification"]["all_hold"] == false);

    // a map file with a missing assignment is an input error
    auto broken = run_cli("verify-hom " + fx("l2.ecg") + " --map " + fx("identity_l2.hom"));
    CHECK(broken.exit_code == 0); // identity verifies
}

TEST_CASE("verify-hom resolves graphs by name from the supplied files") {
    auto r = run_cli("verify-hom " + fx("g3_rev.ecg") + " " + fx("three_colored_pair.ecg") +
                     " --map " + fx("rev_family.hom"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all relations hold") != std::string::npos);
}

TEST_CASE("verify-hom exits 2 when the map file is incomplete") {
    // write a map that misses an edge assignment
    std::string path = "/tmp/ecg_partial_map.hom";
    {
        std::ofstream out(path);
        out << "hom partial: l2 -> l2 { vertex v => p(v); edge a => S(a); }\n";
    }
    auto r = run_cli("verify-hom " + fx("l2.ecg") + " --map " + path);
    CHECK(r.exit_code == 2);
}
