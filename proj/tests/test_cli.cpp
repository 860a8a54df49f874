#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qhj/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qhj");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = qhj::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qhj_test_" + name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("spectrum of the oscillator") {
    const auto r = run_cli({"spectrum", "--family", "harmonic", "--omega", "1", "--levels", "4",
                            "--method", "qhj,closed", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["levels"].size() == 4);
    for (const auto& row : doc["levels"]) {
        const double n = row["n"].get<double>();
        CHECK(std::abs(row["e_qhj"].get<double>() - (n + 0.5)) <= 1e-10);
        CHECK(row["e_closed"].get<double>() == n + 0.5);
        CHECK(row["e_oracle"].is_null());
    }
}

TEST_CASE("verify Eckart") {
    const auto r = run_cli({"verify", "--family", "eckart", "--A", "1", "--B", "4", "--alpha", "1",
                            "--levels", "5", "--format", "json"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["summary"]["verified"] == 2);
    CHECK(doc["summary"]["failed"] == 0);
    CHECK(doc["summary"]["beyond_max_level"] == 3);
    for (const auto& row : doc["levels"]) CHECK(row["verified"] == true);
    for (const auto& n : doc["notices"]) CHECK(n["code"] == "no_bound_state");
}

TEST_CASE("residues of Scarf II") {
    const auto r = run_cli({"residues", "--family", "scarf2", "--A", "2", "--B", "1", "--alpha", "1",
                            "--energy", "0", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc.size() == 4);
    const double s = std::sqrt(2.0);
    int matched = 0;
    for (const auto& rec : doc) {
        CHECK(rec["candidates"].size() == 2);
        const auto g = rec["gamma"];
        const double gr = g[0].get<double>(), gi = g[1].get<double>();
        if (rec["location"] == "infinity") {
            matched += std::abs(gr + 2 * s) < 1e-12 && std::abs(gi) < 1e-12;
            continue;
        }
        const double im = rec["location"][1].get<double>();
        if (im > 0.5) matched += std::abs(gr + 2 * s) < 1e-12 && std::abs(gi - s) < 1e-12;
        else if (im < -0.5) matched += std::abs(gr + 2 * s) < 1e-12 && std::abs(gi + s) < 1e-12;
        else matched += std::abs(gr - 2 * s) < 1e-12 && std::abs(gi) < 1e-12;
    }
    CHECK(matched == 4);
}

TEST_CASE("csv layout") {
    const auto r = run_cli({"spectrum", "--family", "eckart", "--A", "1", "--B", "4", "--alpha", "1",
                            "--levels", "2", "--method", "qhj,swkb", "--format", "csv"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "n,e_qhj,e_closed,e_oracle,e_wkb,e_swkb,j_residual");
    CHECK(ls[1].rfind("0,", 0) == 0);
    CHECK(ls[1].find(",,,") != std::string::npos);
}

TEST_CASE("wkb-compare reports SWKB defects") {
    const auto r = run_cli({"wkb-compare", "--family", "rosen-morse1", "--A", "1.5", "--B", "0.5",
                            "--alpha", "1", "--levels", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["levels"].size() == 3);
    for (const auto& row : doc["levels"]) {
        CHECK(std::abs(row["swkb_defect"].get<double>()) <= 1e-6);
        CHECK(std::abs(row["e_swkb"].get<double>() - row["e_closed"].get<double>()) <= 1e-6);
    }
}

TEST_CASE("sweep emits one block per value") {
    const auto r = run_cli({"sweep", "--family", "eckart", "--A", "1", "--alpha", "1", "--param", "B",
                            "--from", "2", "--to", "4", "--steps", "3", "--levels", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["blocks"].size() == 3);
    CHECK(doc["blocks"][1]["value"] == 3.0);
    // B = 2: only the ground state is bound
    CHECK(doc["blocks"][0]["levels"].size() == 1);
    CHECK(doc["blocks"][2]["levels"].size() == 2);
}

TEST_CASE("sweep across an invalid region records the error per block") {
    const auto r = run_cli({"sweep", "--family", "eckart", "--A", "1", "--alpha", "1", "--param", "B",
                            "--from", "0.5", "--to", "4", "--steps", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["blocks"][0]["error"]["code"] == "invalid_parameter");
    CHECK(doc["blocks"][1].contains("levels"));
}

TEST_CASE("exit codes and error records") {
    auto r = run_cli({"spectrum", "--family", "harmonic", "--omega", "-1"});
    CHECK(r.code == 1);
    auto err = json::parse(r.err);
    CHECK(err["code"] == "invalid_parameter");
    CHECK(err.contains("context"));

    r = run_cli({"spectrum", "--family", "morse"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["code"] == "unknown_family");

    r = run_cli({"spectrum", "--family", "harmonic", "--omega", "1", "--method", "magic"});
    CHECK(r.code == 1);

    r = run_cli({"spectrum", "--bogus"});
    CHECK(r.code == 1);

    r = run_cli({"spectrum", "--family", "harmonic", "--omega", "1", "--output", "/nonexistent/dir/x.json"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err)["code"] == "io");
}

TEST_CASE("output is deterministic") {
    const std::vector<std::string> args = {"spectrum", "--family", "scarf1", "--A", "1.5", "--B", "0.5",
                                           "--alpha", "1", "--levels", "3", "--format", "json"};
    CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("config file with flag overrides") {
    qhj::cli::RunDescriptor d;
    d.command = qhj::cli::Command::Spectrum;
    d.family = "harmonic";
    d.params = {{"omega", 1.0}};
    d.levels = 2;
    d.format = qhj::cli::Format::Json;
    const auto path = temp_file("config.json");
    std::ofstream(path) << qhj::cli::descriptor_to_json(d).dump();

    auto r = run_cli({"spectrum", "--config", path.string()});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["levels"].size() == 2);

    r = run_cli({"spectrum", "--config", path.string(), "--omega", "2", "--levels", "3"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["levels"].size() == 3);
    CHECK(std::abs(doc["levels"][1]["e_qhj"].get<double>() - 3.0) <= 1e-10);
    std::filesystem::remove(path);
}

TEST_CASE("descriptor JSON round trip") {
    qhj::cli::RunDescriptor d;
    d.command = qhj::cli::Command::Sweep;
    d.family = "scarf2";
    d.params = {{"A", 2.0}, {"B", 1.0}, {"alpha", 1.0}};
    d.methods = {qhj::cli::Method::Qhj, qhj::cli::Method::Oracle};
    d.sweep = qhj::cli::SweepRange{"A", 1.0, 2.0, 4};
    d.energy = 0.25;
    const auto back = qhj::cli::descriptor_from_json(qhj::cli::descriptor_to_json(d));
    CHECK(qhj::cli::descriptor_to_json(back) == qhj::cli::descriptor_to_json(d));
}

TEST_CASE("output file") {
    const auto path = temp_file("out.csv");
    const auto r = run_cli({"spectrum", "--family", "square-well", "--L", "1", "--levels", "2",
                            "--format", "csv", "--output", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(lines(ss.str()).size() == 3);
    std::filesystem::remove(path);
}

TEST_CASE("list names every family") {
    const auto r = run_cli({"list", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out).size() == 9);
}

}
