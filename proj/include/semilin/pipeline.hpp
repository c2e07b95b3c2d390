#pragma once

#include <filesystem>

#include "semilin/analysis.hpp"
#include "semilin/config.hpp"
#include "semilin/report_io.hpp"

namespace semilin {

struct Problem {
    DomainSpec spec;
    Nonlinearity nl;
};

// Builds grid and nonlinearity; construction failures become ConfigError.
Problem build_problem(const RunConfig& cfg);

// validate -> minimize Plus -> minimize Minus -> mountain pass on Full ->
// analysis. Numerical failures end up in the flags. Point files are named
// u_minus.csv, u_plus.csv and u_star.csv.
SolveReport run_solve(const RunConfig& cfg);

// report.json plus one CSV per nontrivial point.
void write_solve(const SolveReport& report, const std::filesystem::path& dir, const RunMeta& meta);

}  // namespace semilin
