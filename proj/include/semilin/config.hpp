#pragma once

// Run configuration: key = value lines, '#' starts a comment, keys carry a
// dotted section prefix. Every key is optional on top of a preset; unknown
// keys are rejected.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semilin/analysis.hpp"
#include "semilin/descent.hpp"
#include "semilin/mountain_pass.hpp"
#include "semilin/nonlinearity.hpp"

namespace semilin {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleOptions {
    double slope_min = -50.0;
    double slope_max = 50.0;
    double resolution = 1e-2;
    std::size_t steps = 1000;
};

struct RunConfig {
    std::string preset = "custom";

    std::string domain_kind = "interval";  // interval | rectangle
    double length_x = 1.0;
    double length_y = 1.0;
    std::size_t nx = 127;
    std::size_t ny = 0;  // rectangle only

    std::string nonlinearity_kind = "power";
    double lambda = 60.0;
    double power = 3.0;
    std::optional<double> delta;  // unset: largest radius found by the preset search
    std::optional<int> k;         // unset: sandwich index of g'(0)

    DescentOptions descent;
    MPOptions mountain_pass;
    AnalysisOptions analysis;
    std::size_t validate_samples = 1000;
    std::size_t eigen_count = 6;
    OracleOptions oracle;
    std::filesystem::path output_dir;

    DomainSpec domain() const;
    Nonlinearity nonlinearity(const DomainSpec& spec) const;
};

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

// Applies the key = value lines of `text` on top of `base`. `origin` names
// the source in error messages.
RunConfig parse_config(const std::string& text, RunConfig base = {},
                       const std::string& origin = "config");

// File contents read through parse_config. A `preset` key inside the file
// selects the base; an explicit `preset_override` wins over it.
RunConfig load_config(const std::filesystem::path& path,
                      const std::optional<std::string>& preset_override = std::nullopt);

// Sets nx (and ny on a rectangle) to n.
void override_resolution(RunConfig& cfg, std::size_t n);

}  // namespace semilin
