#include "semilin/report_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "semilin/kernels.hpp"

namespace semilin {
namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

RunMeta current_meta(double runtime_seconds) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return {buf, runtime_seconds, std::string(kernels::backend_name(kernels::active_backend()))};
}

Json grid_json(const DomainSpec& spec) {
    Json j;
    j["kind"] = spec.dim() == 1 ? "interval" : "rectangle";
    Json lengths = Json::array(), counts = Json::array(), spacing = Json::array();
    for (int a = 0; a < spec.dim(); ++a) {
        lengths.push_back(spec.length(a));
        counts.push_back(spec.count(a));
        spacing.push_back(spec.spacing(a));
    }
    j["lengths"] = lengths;
    j["interior_nodes"] = counts;
    j["spacing"] = spacing;
    return j;
}

Json validation_json(const ValidationReport& v, const Nonlinearity& nl) {
    Json j;
    j["passed"] = v.passed;
    j["nonlinearity"] = nl.name();
    j["a_minus"] = nl.a_minus();
    j["a_plus"] = nl.a_plus();
    j["delta"] = nl.delta();
    j["scale"] = nl.scale();
    j["claimed_k"] = v.claimed_k;
    j["derived_k"] = v.derived_k ? Json(*v.derived_k) : Json(nullptr);
    j["lambda_k"] = v.lambda_k;
    j["lambda_k_plus_1"] = v.lambda_k1;
    j["gprime_at_zero"] = nl.gprime(0.0);
    j["boundary_equality"] = v.boundary_equality;
    j["samples"] = v.samples;
    Json failures = Json::array();
    for (const auto& f : v.failures)
        failures.push_back({{"check", f.check}, {"message", f.message}, {"witness", optional_json(f.witness)}});
    j["failures"] = failures;
    return j;
}

Json eigen_json(const DomainSpec& spec, const std::vector<Eigenpair>& pairs) {
    Json j;
    j["grid"] = grid_json(spec);
    Json values = Json::array(), modes = Json::array();
    for (const auto& p : pairs) {
        values.push_back(p.lambda);
        if (spec.dim() == 1)
            modes.push_back(Json::array({p.mode[0]}));
        else
            modes.push_back(Json::array({p.mode[0], p.mode[1]}));
    }
    j["eigenvalues"] = values;
    j["modes"] = modes;
    return j;
}

Json oracle_json(const SweepResult& sweep, const Nonlinearity& nl, double length) {
    Json j;
    j["nonlinearity"] = nl.name();
    j["length"] = length;
    j["shots"] = sweep.slopes.size();
    const auto blown = std::count_if(sweep.endpoints.begin(), sweep.endpoints.end(),
                                     [](double e) { return std::isnan(e); });
    j["blown_up_shots"] = blown;
    j["sign_changes"] = sweep.brackets.size();
    Json branches = Json::array();
    for (std::size_t i = 0; i < sweep.branches.size(); ++i) {
        const ShotResult& b = sweep.branches[i];
        double lo = 0.0, hi = 0.0;
        for (double v : b.trajectory) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        std::size_t zeros = 0;
        for (std::size_t k = 2; k + 1 < b.trajectory.size(); ++k)
            if ((b.trajectory[k - 1] > 0.0) != (b.trajectory[k] > 0.0)) ++zeros;
        branches.push_back({{"bracket", {sweep.brackets[i].first, sweep.brackets[i].second}},
                            {"slope", b.slope},
                            {"endpoint", b.endpoint},
                            {"converged", b.converged},
                            {"amplitude", b.amplitude},
                            {"min", lo},
                            {"max", hi},
                            {"interior_sign_changes", zeros},
                            {"energy_drift", b.energy_drift},
                            {"file", "branch_" + std::to_string(i) + ".csv"}});
    }
    j["branches"] = branches;
    return j;
}

Json report_body(const SolveReport& r) {
    Json j;
    j["preset"] = r.preset;
    j["grid"] = grid_json(r.spec);

    // The condition_g block carries the nonlinearity it was checked for.
    Json cg;
    cg["passed"] = r.condition_g.passed;
    cg["nonlinearity"] = r.nonlinearity;
    cg["a_minus"] = r.a_minus;
    cg["a_plus"] = r.a_plus;
    cg["delta"] = r.delta;
    cg["scale"] = r.scale;
    cg["claimed_k"] = r.condition_g.claimed_k;
    cg["derived_k"] = r.condition_g.derived_k ? Json(*r.condition_g.derived_k) : Json(nullptr);
    cg["lambda_k"] = r.condition_g.lambda_k;
    cg["lambda_k_plus_1"] = r.condition_g.lambda_k1;
    cg["boundary_equality"] = r.condition_g.boundary_equality;
    cg["samples"] = r.condition_g.samples;
    Json failures = Json::array();
    for (const auto& f : r.condition_g.failures)
        failures.push_back({{"check", f.check}, {"message", f.message}, {"witness", optional_json(f.witness)}});
    cg["failures"] = failures;
    j["condition_g"] = cg;

    Json points = Json::array();
    for (const auto& p : r.points) {
        const Field& u = p.point.u;
        const auto [mn, mx] = std::minmax_element(u.values().begin(), u.values().end());
        Json pj;
        pj["name"] = p.name;
        pj["classification"] = to_string(p.point.classification);
        pj["energy"] = p.point.energy;
        pj["residual"] = p.point.residual;
        pj["morse_index"] = p.point.morse_index ? Json(*p.point.morse_index) : Json(nullptr);
        pj["morse_eigenvalues"] = p.morse.eigenvalues;
        pj["morse_degenerate"] = p.morse.degenerate;
        pj["bounds_ok"] = p.bounds.ok;
        pj["bounds"] = {p.lower_bound, p.upper_bound};
        pj["worst_violation"] = p.bounds.worst_violation;
        pj["sup_norm"] = sup_norm(u);
        pj["min"] = *mn;
        pj["max"] = *mx;
        pj["sign_changing"] = *mn < 0.0 && *mx > 0.0;
        pj["converged"] = p.point.converged;
        pj["iterations"] = p.point.iterations;
        pj["status"] = p.point.status;
        pj["file"] = p.file.empty() ? Json(nullptr) : Json(p.file);
        points.push_back(pj);
    }
    j["points"] = points;

    Json flags = Json::array();
    for (const auto& f : r.flags) {
        Json fj{{"name", f.name}, {"passed", f.passed}, {"note", f.note}};
        if (f.name == "distinct") {
            Json d = Json::object();
            for (const auto& [pair, dist] : r.distances) d[pair] = dist;
            fj["distances"] = d;
        }
        flags.push_back(fj);
    }
    j["flags"] = flags;
    return j;
}

Json report_json(const SolveReport& report, const RunMeta& meta) {
    Json j = report_body(report);
    j["meta"] = {{"timestamp", meta.timestamp},
                 {"runtime_seconds", meta.runtime_seconds},
                 {"simd_backend", meta.simd_backend}};
    return j;
}

std::string field_csv(const Field& u) {
    const DomainSpec& g = u.domain();
    std::string out;
    if (g.dim() == 1) {
        const std::size_t n = g.count(0);
        out = "x,u\n";
        for (std::size_t i = 0; i < n + 2; ++i) {
            const double x = i == n + 1 ? g.length(0) : static_cast<double>(i) * g.spacing(0);
            const double v = i == 0 || i == n + 1 ? 0.0 : u[i - 1];
            out += g17(x) + "," + g17(v) + "\n";
        }
    } else {
        const std::size_t nx = g.count(0), ny = g.count(1);
        out = "x,y,u\n";
        for (std::size_t j = 0; j < ny + 2; ++j) {
            const double y = j == ny + 1 ? g.length(1) : static_cast<double>(j) * g.spacing(1);
            for (std::size_t i = 0; i < nx + 2; ++i) {
                const double x = i == nx + 1 ? g.length(0) : static_cast<double>(i) * g.spacing(0);
                const bool edge = i == 0 || j == 0 || i == nx + 1 || j == ny + 1;
                const double v = edge ? 0.0 : u[(j - 1) * nx + (i - 1)];
                out += g17(x) + "," + g17(y) + "," + g17(v) + "\n";
            }
        }
    }
    return out;
}

void write_field_csv(const std::filesystem::path& path, const Field& u) { write_text(path, field_csv(u)); }

Field read_field_csv(const std::filesystem::path& path, const DomainSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::string line;
    std::getline(in, line);
    const std::size_t columns = spec.dim() == 1 ? 2 : 3;
    if (line != (spec.dim() == 1 ? "x,u" : "x,y,u"))
        throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");

    std::vector<double> all;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const char* p = line.c_str();
        for (std::size_t c = 0; c < columns; ++c) {
            char* end = nullptr;
            const double v = std::strtod(p, &end);
            if (end == p || (c + 1 < columns ? *end != ',' : *end != '\0'))
                throw std::runtime_error(path.string() + ":" + std::to_string(row) + ": malformed row");
            if (c + 1 == columns) all.push_back(v);
            p = end + 1;
        }
    }
    const std::size_t nx = spec.count(0);
    const std::size_t ny = spec.dim() == 1 ? 1 : spec.count(1);
    const std::size_t rows_y = spec.dim() == 1 ? 1 : ny + 2;
    if (all.size() != (nx + 2) * rows_y)
        throw std::runtime_error(path.string() + ": row count does not match " + spec.describe());

    std::vector<double> interior;
    interior.reserve(spec.size());
    if (spec.dim() == 1) {
        interior.assign(all.begin() + 1, all.end() - 1);
    } else {
        for (std::size_t j = 1; j <= ny; ++j)
            for (std::size_t i = 1; i <= nx; ++i) interior.push_back(all[j * (nx + 2) + i]);
    }
    return Field(spec, std::move(interior));
}

std::string trajectory_csv(const std::vector<double>& values, double length) {
    std::string out = "x,u\n";
    const std::size_t last = values.size() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        const double x = i == last ? length : length * static_cast<double>(i) / static_cast<double>(last);
        out += g17(x) + "," + g17(values[i]) + "\n";
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace semilin
