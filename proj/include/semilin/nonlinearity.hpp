#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semilin/grid.hpp"

namespace semilin {

using ScalarFunction = std::function<double(double)>;

enum class TruncationMode { Plus, Minus, Full };

const char* to_string(TruncationMode mode);

// A C^1 nonlinearity g with roots a_minus < 0 < a_plus, the radius delta of
// the eigenvalue sandwich around 0 and the claimed sandwich index k.
//
// Construction only checks the structural constraints (a_minus < 0 < a_plus,
// delta > 0, k >= 1). Whether g actually vanishes at the roots and whether
// the sandwich holds is the job of validate_condition_g, so that near-miss
// inputs can still be examined.
class Nonlinearity {
public:
    Nonlinearity(std::string name, ScalarFunction g, ScalarFunction gprime, double a_minus,
                 double a_plus, double delta, int k);

    const std::string& name() const { return name_; }
    double g(double t) const { return g_(t); }
    double gprime(double t) const { return gprime_(t); }
    double a_minus() const { return a_minus_; }
    double a_plus() const { return a_plus_; }
    double delta() const { return delta_; }
    int k() const { return k_; }

    // max(1, sup |g| over [a_minus, a_plus])
    double scale() const { return scale_; }
    // sup g' over [a_minus, a_plus]
    double sup_gprime() const { return sup_gprime_; }

    Nonlinearity with_delta(double delta) const;
    Nonlinearity with_k(int k) const;

private:
    std::string name_;
    ScalarFunction g_;
    ScalarFunction gprime_;
    double a_minus_;
    double a_plus_;
    double delta_;
    int k_;
    double scale_ = 1.0;
    double sup_gprime_ = 0.0;
};

// Interval on which the truncation keeps g.
std::pair<double, double> support(const Nonlinearity& nl, TruncationMode mode);

// g on the support of the mode, 0 elsewhere.
double truncate(const Nonlinearity& nl, TruncationMode mode, double t);

// Integral of the truncated g from 0 to t; constant outside the support.
double antiderivative(const Nonlinearity& nl, TruncationMode mode, double t);

// Integral over [t, t + dt] of (truncated g(s) - truncated g(t)). This is the
// second-order remainder of the antiderivative, computed without cancellation
// for small dt.
double antiderivative_remainder(const Nonlinearity& nl, TruncationMode mode, double t, double dt);

// max |antiderivative(mode, t)| over the support (sampled).
double max_abs_antiderivative(const Nonlinearity& nl, TruncationMode mode);

struct ConditionFailure {
    std::string check;
    std::string message;
    std::optional<double> witness;
};

struct ValidationReport {
    bool passed = true;
    int claimed_k = 0;
    std::optional<int> derived_k;  // sandwich_index(g'(0)) when defined
    double lambda_k = 0.0;
    double lambda_k1 = 0.0;
    // g'(0) coincides with lambda_k or lambda_{k+1}: the Morse comparison at 0
    // is inconclusive.
    bool boundary_equality = false;
    std::size_t samples = 0;
    std::vector<ConditionFailure> failures;
};

// Checks the sandwich lambda_k <= g(t)/t <= lambda_{k+1} on `samples` points
// of (-delta, delta), the index k against g'(0), g(a_minus) = g(a_plus) = 0,
// g(0) = 0 and k >= 2. Failures are reported, never thrown.
ValidationReport validate_condition_g(const Nonlinearity& nl, const DomainSpec& spec,
                                      std::size_t samples = 1000);

// g(t) = lambda t - f(t) for a superlinear f with f(t)/t -> 0 at 0. Roots are
// found by bisection after doubling the search radius, k from the spectrum
// of `spec` and delta by expansion from 1e-3 while the sandwich holds.
Nonlinearity preset_corollary(const DomainSpec& spec, double lambda, ScalarFunction f,
                              ScalarFunction fprime, std::string name = "corollary");

// lambda t - |t|^(p-1) t, the default presets use p = 3.
Nonlinearity power_preset(const DomainSpec& spec, double lambda, double power = 3.0);

}  // namespace semilin
