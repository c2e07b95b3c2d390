#pragma once

// Post-hoc verification of the computed critical points: a-priori bounds,
// positivity, distinctness, and Morse indices standing in for critical
// groups (for a nondegenerate point C_q is Z exactly in degree = index).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semilin/critical_point.hpp"
#include "semilin/energy.hpp"
#include "semilin/morse.hpp"
#include "semilin/nonlinearity.hpp"

namespace semilin {

struct BoundsCheck {
    bool ok = true;
    double worst_violation = 0.0;  // distance outside [lo - tol, hi + tol] window, 0 if none
    std::optional<std::size_t> worst_index;
    double worst_value = 0.0;
};

BoundsCheck check_bounds(const Field& u, double lower, double upper, double tol);

struct PositivityProfile {
    bool strictly_positive_interior = false;
    // Minimum over boundary-adjacent nodes of value / h: the one-sided inward
    // normal derivative, the boundary value being 0.
    double min_boundary_slope = 0.0;
};

PositivityProfile positivity_profile(const Field& u);

struct AnalysisOptions {
    double grad_tol = 1e-8;         // relative to scale
    double bounds_tol = 1e-9;
    double distinct_rel = 1e-3;     // times the largest amplitude
    double nontrivial_abs = 1e-3;
    double morse_tol_rel = 1e-6;    // times scale
};

struct PointReport {
    std::string name;  // u_minus, u_plus, u_star, zero
    CriticalPoint point;
    MorseResult morse;
    BoundsCheck bounds;
    double lower_bound = 0.0;  // the window checked by `bounds`
    double upper_bound = 0.0;
    std::string file;          // CSV written for this point, empty if none
};

struct Flag {
    std::string name;
    bool passed = false;
    std::string note;
};

struct SolveReport {
    std::string preset;
    DomainSpec spec;
    std::string nonlinearity;
    double a_minus = 0.0, a_plus = 0.0, delta = 0.0, scale = 1.0;
    int k = 0;
    ValidationReport condition_g;
    std::vector<PointReport> points;  // u_minus, u_plus, u_star, zero
    std::vector<Flag> flags;
    std::vector<std::pair<std::string, double>> distances;  // pairwise sup distances
    AnalysisOptions options;

    bool all_passed() const;
    const Flag* flag(const std::string& name) const;
    const PointReport& point(const std::string& name) const;
};

// Runs every check on the three nontrivial candidates plus the trivial
// solution. `full` must be the Full-mode model. Failures are flags, never
// exceptions.
SolveReport assemble_report(const EnergyModel& full, const CriticalPoint& u_minus,
                            const CriticalPoint& u_plus, const CriticalPoint& u_star,
                            const ValidationReport& condition_g, const AnalysisOptions& opts = {},
                            std::string preset = {});

// Recomputes the flags from the fields and Morse results stored in the
// report. A consistent report reproduces its own flags.
std::vector<Flag> compute_flags(const SolveReport& report, const EnergyModel& full);

}  // namespace semilin
