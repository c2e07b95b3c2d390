#include "semilin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace semilin {
namespace {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<Entry> split_lines(const std::string& text, const std::string& origin) {
    std::vector<Entry> out;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line) + ": expected 'key = value'");
        Entry e{trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line};
        if (e.key.empty() || e.value.empty())
            throw ConfigError(origin + ":" + std::to_string(line) + ": empty key or value");
        if (auto [it, fresh] = seen.emplace(e.key, line); !fresh)
            throw ConfigError(origin + ":" + std::to_string(line) + ": '" + e.key +
                              "' already set on line " + std::to_string(it->second));
        out.push_back(std::move(e));
    }
    return out;
}

double to_real(const Entry& e, const std::string& origin) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(origin + ":" + std::to_string(e.line) + ": '" + e.key +
                          "' needs a finite number, got '" + e.value + "'");
    return v;
}

long long to_integer(const Entry& e, const std::string& origin) {
    long long v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ConfigError(origin + ":" + std::to_string(e.line) + ": '" + e.key +
                          "' needs an integer, got '" + e.value + "'");
    return v;
}

RunConfig apply(RunConfig cfg, const std::vector<Entry>& entries, const std::string& origin) {
    std::optional<std::size_t> grid_n;
    for (const Entry& e : entries) {
        auto fail = [&](const std::string& why) {
            return ConfigError(origin + ":" + std::to_string(e.line) + ": '" + e.key + "' " + why);
        };
        auto real = [&] { return to_real(e, origin); };
        auto positive = [&] {
            const double v = real();
            if (!(v > 0.0)) throw fail("must be positive");
            return v;
        };
        auto count = [&](long long min) {
            const long long v = to_integer(e, origin);
            if (v < min) throw fail("must be at least " + std::to_string(min));
            return static_cast<std::size_t>(v);
        };

        const std::map<std::string, std::function<void()>> setters{
            {"preset", [] {}},
            {"domain.kind",
             [&] {
                 if (e.value != "interval" && e.value != "rectangle")
                     throw fail("must be interval or rectangle");
                 cfg.domain_kind = e.value;
             }},
            {"domain.length", [&] { cfg.length_x = positive(); }},
            {"domain.width", [&] { cfg.length_x = positive(); }},
            {"domain.height", [&] { cfg.length_y = positive(); }},
            {"grid.n", [&] { grid_n = count(3); }},
            {"grid.nx", [&] { cfg.nx = count(3); }},
            {"grid.ny", [&] { cfg.ny = count(3); }},
            {"nonlinearity.kind",
             [&] {
                 if (e.value != "power") throw fail("only 'power' is available");
                 cfg.nonlinearity_kind = e.value;
             }},
            {"nonlinearity.lambda", [&] { cfg.lambda = positive(); }},
            {"nonlinearity.power",
             [&] {
                 cfg.power = real();
                 if (!(cfg.power > 1.0)) throw fail("must exceed 1");
             }},
            {"nonlinearity.delta", [&] { cfg.delta = positive(); }},
            {"nonlinearity.k", [&] { cfg.k = static_cast<int>(count(1)); }},
            {"tolerance.grad_tol",
             [&] {
                 const double v = positive();
                 cfg.descent.grad_tol = cfg.mountain_pass.grad_tol = cfg.analysis.grad_tol = v;
             }},
            {"tolerance.poisson_tol",
             [&] { cfg.descent.poisson_tol = cfg.mountain_pass.poisson_tol = positive(); }},
            {"descent.max_iters", [&] { cfg.descent.max_iters = count(1); }},
            {"descent.grad_tol", [&] { cfg.descent.grad_tol = positive(); }},
            {"descent.armijo_c", [&] { cfg.descent.armijo_c = positive(); }},
            {"descent.backtrack_factor", [&] { cfg.descent.backtrack_factor = positive(); }},
            {"descent.initial_step", [&] { cfg.descent.initial_step = positive(); }},
            {"descent.poisson_tol", [&] { cfg.descent.poisson_tol = positive(); }},
            {"mountainpass.segments", [&] { cfg.mountain_pass.segments = count(8); }},
            {"mountainpass.max_iters", [&] { cfg.mountain_pass.max_iters = count(1); }},
            {"mountainpass.grad_tol", [&] { cfg.mountain_pass.grad_tol = positive(); }},
            {"mountainpass.armijo_c", [&] { cfg.mountain_pass.armijo_c = positive(); }},
            {"mountainpass.backtrack_factor",
             [&] { cfg.mountain_pass.backtrack_factor = positive(); }},
            {"mountainpass.initial_step", [&] { cfg.mountain_pass.initial_step = positive(); }},
            {"mountainpass.poisson_tol", [&] { cfg.mountain_pass.poisson_tol = positive(); }},
            {"mountainpass.perturbation", [&] { cfg.mountain_pass.perturbation = positive(); }},
            {"mountainpass.max_restarts", [&] { cfg.mountain_pass.max_restarts = count(0); }},
            {"mountainpass.collapse_tol", [&] { cfg.mountain_pass.collapse_tol = positive(); }},
            {"analysis.grad_tol", [&] { cfg.analysis.grad_tol = positive(); }},
            {"analysis.bounds_tol", [&] { cfg.analysis.bounds_tol = positive(); }},
            {"analysis.distinct_rel", [&] { cfg.analysis.distinct_rel = positive(); }},
            {"analysis.nontrivial_abs", [&] { cfg.analysis.nontrivial_abs = positive(); }},
            {"analysis.morse_tol_rel", [&] { cfg.analysis.morse_tol_rel = positive(); }},
            {"validate.samples", [&] { cfg.validate_samples = count(1); }},
            {"eigen.count", [&] { cfg.eigen_count = count(1); }},
            {"oracle.slope_min", [&] { cfg.oracle.slope_min = real(); }},
            {"oracle.slope_max", [&] { cfg.oracle.slope_max = real(); }},
            {"oracle.resolution", [&] { cfg.oracle.resolution = positive(); }},
            {"oracle.steps", [&] { cfg.oracle.steps = count(1000); }},
            {"output.dir", [&] { cfg.output_dir = e.value; }},
        };
        const auto it = setters.find(e.key);
        if (it == setters.end()) throw fail("is not a known key");
        it->second();
    }
    if (grid_n) {
        cfg.nx = *grid_n;
        if (cfg.domain_kind == "rectangle") cfg.ny = *grid_n;
    }
    if (!(cfg.oracle.slope_max > cfg.oracle.slope_min))
        throw ConfigError(origin + ": oracle.slope_max must exceed oracle.slope_min");
    return cfg;
}

std::optional<std::string> preset_key(const std::vector<Entry>& entries) {
    for (const Entry& e : entries)
        if (e.key == "preset") return e.value;
    return std::nullopt;
}

}  // namespace

DomainSpec RunConfig::domain() const {
    if (domain_kind == "interval") return DomainSpec::interval(length_x, nx);
    return DomainSpec::rectangle(length_x, length_y, nx, ny ? ny : nx);
}

Nonlinearity RunConfig::nonlinearity(const DomainSpec& spec) const {
    Nonlinearity nl = power_preset(spec, lambda, power);
    if (delta) nl = nl.with_delta(*delta);
    if (k) nl = nl.with_k(*k);
    return nl;
}

std::vector<std::string> preset_names() { return {"p1-interval", "p2-square"}; }

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    cfg.preset = name;
    cfg.lambda = 60.0;
    cfg.power = 3.0;
    cfg.delta = 1.0;
    if (name == "p1-interval") {
        cfg.domain_kind = "interval";
        cfg.length_x = 1.0;
        cfg.nx = 127;
        cfg.k = 2;
    } else if (name == "p2-square") {
        cfg.domain_kind = "rectangle";
        cfg.length_x = cfg.length_y = 1.0;
        cfg.nx = cfg.ny = 63;
        cfg.k = 3;
    } else if (name == "custom") {
        return RunConfig{};
    } else {
        throw ConfigError("unknown preset '" + name + "' (p1-interval, p2-square)");
    }
    return cfg;
}

RunConfig parse_config(const std::string& text, RunConfig base, const std::string& origin) {
    const auto entries = split_lines(text, origin);
    if (auto p = preset_key(entries)) base = preset_config(*p);
    return apply(std::move(base), entries, origin);
}

RunConfig load_config(const std::filesystem::path& path,
                      const std::optional<std::string>& preset_override) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    const auto entries = split_lines(text.str(), path.string());
    std::string preset = "custom";
    if (preset_override)
        preset = *preset_override;
    else if (auto p = preset_key(entries))
        preset = *p;
    return apply(preset_config(preset), entries, path.string());
}

void override_resolution(RunConfig& cfg, std::size_t n) {
    if (n < 3) throw ConfigError("--n must be at least 3");
    cfg.nx = n;
    if (cfg.domain_kind == "rectangle") cfg.ny = n;
}

}  // namespace semilin
