#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "semilin/cli.hpp"

using namespace semilin;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("semilin_cli_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("solve on the interval preset") {
    const auto dir = scratch("solve");
    const Run r = cli({"solve", "--preset", "p1-interval", "--out", dir.string(), "--n", "63"});
    CHECK_MESSAGE(r.code == 0, r.out << r.err);
    std::ifstream in(dir / "report.json");
    const auto j = nlohmann::json::parse(in);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"condition_g", "flags", "grid", "meta", "points", "preset"});
    CHECK(j["points"].size() == 4);
    for (const char* f : {"u_minus.csv", "u_plus.csv", "u_star.csv"}) CHECK(std::filesystem::exists(dir / f));
}

TEST_CASE("a wrong k fails the condition flag with exit 1") {
    const auto dir = scratch("badk");
    std::ofstream(dir / "bad.cfg") << "preset = p1-interval\nnonlinearity.k = 3\ngrid.n = 63\n";
    const Run r = cli({"solve", "--config", (dir / "bad.cfg").string(), "--out", (dir / "out").string()});
    CHECK(r.code == 1);
    std::ifstream in(dir / "out" / "report.json");
    const auto j = nlohmann::json::parse(in);
    CHECK(j["condition_g"]["passed"] == false);
    CHECK(j["flags"][0]["name"] == "condition_g");
    CHECK(j["flags"][0]["passed"] == false);
}

TEST_CASE("configuration errors exit 2") {
    const auto dir = scratch("cfgerr");
    std::ofstream(dir / "bad.cfg") << "preset = p1-interval\nsolver.mystery = 1\n";
    CHECK(cli({"solve", "--config", (dir / "bad.cfg").string(), "--out", dir.string()}).code == 2);
    CHECK(cli({"solve", "--preset", "nope", "--out", dir.string()}).code == 2);
    CHECK(cli({"solve", "--preset", "p1-interval"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"eigen"}).code == 2);
    CHECK(cli({"oracle", "--preset", "p2-square"}).code == 2);
}

TEST_CASE("eigen, validate and oracle subcommands") {
    const Run e = cli({"eigen", "--preset", "p2-square"});
    REQUIRE(e.code == 0);
    const auto j = nlohmann::json::parse(e.out);
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double expect[] = {2 * pi2, 5 * pi2, 5 * pi2, 8 * pi2};
    for (int i = 0; i < 4; ++i) CHECK(j["eigenvalues"][i].get<double>() == doctest::Approx(expect[i]));

    CHECK(cli({"validate", "--preset", "p1-interval"}).code == 0);

    const auto dir = scratch("oracle");
    const Run o = cli({"oracle", "--preset", "p1-interval", "--out", dir.string()});
    REQUIRE(o.code == 0);
    const auto oj = nlohmann::json::parse(o.out);
    CHECK(oj["branches"].size() >= 3);
    CHECK(std::filesystem::exists(dir / "branch_0.csv"));
}
