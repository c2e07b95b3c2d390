#pragma once

// JSON and CSV serialization. Everything except the "meta" object is a pure
// function of the inputs, so identical runs give identical bytes.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "semilin/analysis.hpp"
#include "semilin/oracle.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {

using Json = nlohmann::ordered_json;

struct RunMeta {
    std::string timestamp;  // ISO 8601, UTC
    double runtime_seconds = 0.0;
    std::string simd_backend;
};

RunMeta current_meta(double runtime_seconds);

Json grid_json(const DomainSpec& spec);
Json validation_json(const ValidationReport& v, const Nonlinearity& nl);
Json eigen_json(const DomainSpec& spec, const std::vector<Eigenpair>& pairs);
Json oracle_json(const SweepResult& sweep, const Nonlinearity& nl, double length);

// Report without the "meta" key.
Json report_body(const SolveReport& report);
Json report_json(const SolveReport& report, const RunMeta& meta);

// Header x,u (1D) or x,y,u (2D); boundary rows included with u = 0; 17
// significant digits so that reading back is exact.
std::string field_csv(const Field& u);
void write_field_csv(const std::filesystem::path& path, const Field& u);
// Throws std::runtime_error on a malformed file or a grid mismatch.
Field read_field_csv(const std::filesystem::path& path, const DomainSpec& spec);

// 1D trajectory with boundary values, same layout as field_csv.
std::string trajectory_csv(const std::vector<double>& values, double length);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace semilin
