#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "mimostab/errors.hpp"
#include "report.hpp"

using namespace mimostab;
using namespace mimostab::cli;
namespace fs = std::filesystem;

namespace {

const char* kExample3Json = R"({
  "name": "loop_gain_2x2", "rows": 2, "cols": 2,
  "entries": [
    [{"num": [0], "den": [1]}, {"num": [1], "den": [1]}],
    [{"num": [-3, 3], "den": [1, 1]}, {"num": [-3], "den": [1]}]
  ]
})";

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "mimostab_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int run_binary(const std::string& args) {
    const char* bin = std::getenv("MIMOSTAB_CLI_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

TEST_CASE("parameter expressions") {
    std::map<std::string, double> params{{"b", 100.0}};
    CHECK(eval_parameter_expression("b", params) == doctest::Approx(100.0));
    CHECK(eval_parameter_expression("-5/b", params) == doctest::Approx(-0.05));
    CHECK(eval_parameter_expression("(b-4)/(b+4)", params) == doctest::Approx(96.0 / 104.0));
    CHECK(eval_parameter_expression("2+b", params) == doctest::Approx(102.0));
    CHECK(eval_parameter_expression(" 1.5 * b - 2 ", params) == doctest::Approx(148.0));
    CHECK_THROWS_AS(eval_parameter_expression("q+1", params), ParseError);
    CHECK_THROWS_AS(eval_parameter_expression("b))", params), ParseError);
    CHECK_THROWS_AS(eval_parameter_expression("1/0", params), ParseError);
}

TEST_CASE("system parsing and validation") {
    const SystemDescription d = parse_system_json(kExample3Json);
    CHECK(d.rows == 2);
    CHECK(d.cols == 2);
    const TransferMatrix p = d.to_transfer_matrix();
    CHECK(p.at(1, 0).num().almost_equal(Polynomial({-3, 3}), 1e-12));

    // parameters substitute before reduction
    const SystemDescription d2 = parse_system_json(R"({
        "name": "param", "rows": 1, "cols": 1,
        "parameters": {"b": 100},
        "entries": [[{"num": ["b", "b"], "den": ["b", 1]}]]
    })");
    // (b + b s)/(s + b) = 100(s+1)/(s+100)
    const TransferMatrix pm = d2.to_transfer_matrix();
    CHECK(pm.at(0, 0).num().almost_equal(Polynomial({100, 100}), 1e-9));

    CHECK_THROWS_AS(parse_system_json("{not json"), ParseError);
    CHECK_THROWS_AS(parse_system_json(R"({"entries": [[{"num": [1], "den": [0]}]]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_system_json(
                        R"({"rows": 2, "cols": 2, "entries": [[{"num": [1], "den": [1]}]]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        parse_system_json(R"({"entries": [[{"num": ["zz"], "den": [1]}]]})"), ParseError);
}

TEST_CASE("round trip: emit then parse reproduces the reduced matrix") {
    SystemDescription d = parse_system_json(kExample3Json);
    const std::string emitted = emit_system_json(d);
    const SystemDescription d2 = parse_system_json(emitted);
    const TransferMatrix a = d.to_transfer_matrix();
    const TransferMatrix b = d2.to_transfer_matrix();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(a.at(i, j).almost_equal(b.at(i, j), 1e-14));
}

TEST_CASE("run_command produces reports and curves") {
    const fs::path dir = temp_dir();
    RunOptions opt;
    opt.grid.base_points = 96;
    opt.json_path = (dir / "report.json").string();
    opt.curves_dir = (dir / "curves").string();
    const SystemDescription sys = parse_system_json(kExample3Json);

    std::ostringstream out;
    CHECK(run_command("stability", {sys}, opt, out) == kOk);
    CHECK(out.str().find("unstable") != std::string::npos);
    auto report = nlohmann::ordered_json::parse(slurp(*opt.json_path));
    CHECK(report.at("verdict").at("status") == "unstable");
    CHECK(report.at("verdict").at("method") == "direct");
    CHECK(std::abs(report.at("verdict").at("witnesses").at(0).at("re").get<double>() - 0.2) < 1e-9);

    std::ostringstream out2;
    CHECK(run_command("nyquist", {sys}, opt, out2) == kOk);
    report = nlohmann::ordered_json::parse(slurp(*opt.json_path));
    CHECK(report.at("winding") == -1);
    // curve CSV exists with the documented header
    const std::string csv = slurp(dir / "curves" / "loop_gain_2x2_det.csv");
    CHECK(csv.rfind("omega,re,im,branch\n", 0) == 0);

    std::ostringstream out3;
    CHECK(run_command("gnc", {sys}, opt, out3) == kOk);
    report = nlohmann::ordered_json::parse(slurp(*opt.json_path));
    CHECK(report.at("merged_curves") == 1);
    CHECK(report.at("oracle_direct") == "unstable");
}

TEST_CASE("paper suite is deterministic") {
    const fs::path dir = temp_dir();
    RunOptions opt;
    opt.grid.base_points = 96;
    opt.json_path = (dir / "suite1.json").string();
    std::ostringstream out1;
    CHECK(run_paper_suite(opt, out1) == kOk);
    opt.json_path = (dir / "suite2.json").string();
    std::ostringstream out2;
    CHECK(run_paper_suite(opt, out2) == kOk);
    CHECK(slurp(dir / "suite1.json") == slurp(dir / "suite2.json"));
    CHECK(out1.str() == out2.str());
}

TEST_CASE("binary exit codes honor the documented mapping") {
    const fs::path dir = temp_dir();

    // 0: healthy corpus run
    CHECK(run_binary("paper-suite") == 0);

    // 2: parse/validation failures
    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{not json";
    CHECK(run_binary("stability " + bad.string()) == 2);
    const fs::path zero_den = dir / "zeroden.json";
    std::ofstream(zero_den) << R"({"entries": [[{"num": [1], "den": [0]}]]})";
    CHECK(run_binary("stability " + zero_den.string()) == 2);

    // 1: analysis error (margins demand a stable nominal loop)
    const fs::path ex3 = dir / "ex3.json";
    std::ofstream(ex3) << kExample3Json;
    CHECK(run_binary("margins " + ex3.string()) == 1);

    // 3: corpus mismatch (corrupt one expectation and point --corpus at it)
    const fs::path corpus = dir / "corpus";
    fs::remove_all(corpus);
    dump_corpus(corpus.string());
    {
        auto doc = nlohmann::ordered_json::parse(slurp(corpus / "pr_constant.json"));
        doc["checks"][0]["expect"]["tier"] = "positive real";
        std::ofstream(corpus / "pr_constant.json") << doc.dump(2);
    }
    CHECK(run_binary("paper-suite --corpus " + corpus.string()) == 3);
}
