#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "semilin/config.hpp"
#include "semilin/kernels.hpp"
#include "semilin/pipeline.hpp"
#include "semilin/report_io.hpp"
#include "support.hpp"

using namespace semilin;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("semilin_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config(
        "# comment\n"
        "preset = p2-square\n"
        "grid.n = 31   # both axes\n"
        "descent.max_iters = 77\n"
        "tolerance.grad_tol = 1e-9\n");
    CHECK(c.preset == "p2-square");
    CHECK(c.domain_kind == "rectangle");
    CHECK(c.nx == 31);
    CHECK(c.ny == 31);
    CHECK(c.k == 3);
    CHECK(c.descent.max_iters == 77);
    CHECK(c.mountain_pass.grad_tol == 1e-9);
    CHECK(c.analysis.grad_tol == 1e-9);

    const RunConfig custom = parse_config("domain.kind = interval\ndomain.length = 2\nnonlinearity.lambda = 30\n");
    CHECK(custom.preset == "custom");
    CHECK(custom.domain().spacing(0) == doctest::Approx(2.0 / 128));
    CHECK_FALSE(custom.k.has_value());
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("grid.m = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 4\ngrid.n = 5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.n = 4.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nonlinearity.delta = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nonlinearity.lambda = nan\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("domain.kind = disc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("preset = p3\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/semilin.cfg"), ConfigError);
}

TEST_CASE("preset override beats the file") {
    const auto dir = scratch("cfg");
    std::ofstream(dir / "a.cfg") << "preset = p1-interval\ngrid.n = 15\n";
    const RunConfig c = load_config(dir / "a.cfg", std::string("p2-square"));
    CHECK(c.preset == "p2-square");
    CHECK(c.nx == 15);
    CHECK(c.ny == 15);
}

TEST_CASE("CSV round trip is exact") {
    std::mt19937_64 rng(1);
    const auto dir = scratch("csv");
    for (const DomainSpec& g : {DomainSpec::interval(1.0, 37), DomainSpec::rectangle(1.0, 3.0, 9, 13)}) {
        const Field u = testing_support::random_field(g, rng, -1e3, 1e3);
        write_field_csv(dir / "f.csv", u);
        const Field back = read_field_csv(dir / "f.csv", g);
        CHECK(std::memcmp(back.values().data(), u.values().data(), u.size() * sizeof(double)) == 0);
    }
    std::ifstream in(dir / "f.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,u");
    CHECK_THROWS(read_field_csv(dir / "f.csv", DomainSpec::rectangle(1.0, 3.0, 9, 12)));
}

TEST_CASE("CSV layout includes the boundary") {
    const DomainSpec g = DomainSpec::interval(1.0, 3);
    Field u(g, {0.1, 0.2, 0.30000000000000004});
    CHECK(field_csv(u) == "x,u\n0,0\n0.25,0.10000000000000001\n0.5,0.20000000000000001\n"
                          "0.75,0.30000000000000004\n1,0\n");
}

TEST_CASE("report body does not depend on the kernel backend") {
    RunConfig cfg = preset_config("p1-interval");
    override_resolution(cfg, 63);
    const kernels::Backend saved = kernels::active_backend();
    kernels::set_active_backend(kernels::Backend::Scalar);
    const std::string scalar = report_body(run_solve(cfg)).dump();
    kernels::set_active_backend(saved);
    const std::string active = report_body(run_solve(cfg)).dump();
    CHECK(scalar == active);
}
