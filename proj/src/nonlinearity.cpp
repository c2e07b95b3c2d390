#include "semilin/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "semilin/integrate.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {
namespace {

constexpr int kScanPoints = 4096;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

const char* to_string(TruncationMode mode) {
    switch (mode) {
        case TruncationMode::Plus: return "plus";
        case TruncationMode::Minus: return "minus";
        case TruncationMode::Full: return "full";
    }
    return "?";
}

Nonlinearity::Nonlinearity(std::string name, ScalarFunction g, ScalarFunction gprime,
                           double a_minus, double a_plus, double delta, int k)
    : name_(std::move(name)),
      g_(std::move(g)),
      gprime_(std::move(gprime)),
      a_minus_(a_minus),
      a_plus_(a_plus),
      delta_(delta),
      k_(k) {
    if (!g_ || !gprime_) throw std::invalid_argument("nonlinearity needs g and g'");
    if (!(a_minus_ < 0.0 && 0.0 < a_plus_))
        throw std::invalid_argument("nonlinearity roots must satisfy a_minus < 0 < a_plus");
    if (!(delta_ > 0.0)) throw std::invalid_argument("nonlinearity delta must be positive");
    if (k_ < 1) throw std::invalid_argument("nonlinearity index k must be positive");

    double sup_g = 0.0;
    sup_gprime_ = -INFINITY;
    for (int i = 0; i <= kScanPoints; ++i) {
        const double t = a_minus_ + (a_plus_ - a_minus_) * i / kScanPoints;
        sup_g = std::max(sup_g, std::fabs(g_(t)));
        sup_gprime_ = std::max(sup_gprime_, gprime_(t));
    }
    scale_ = std::max(1.0, sup_g);
}

Nonlinearity Nonlinearity::with_delta(double delta) const {
    return Nonlinearity(name_, g_, gprime_, a_minus_, a_plus_, delta, k_);
}

Nonlinearity Nonlinearity::with_k(int k) const {
    return Nonlinearity(name_, g_, gprime_, a_minus_, a_plus_, delta_, k);
}

std::pair<double, double> support(const Nonlinearity& nl, TruncationMode mode) {
    switch (mode) {
        case TruncationMode::Plus: return {0.0, nl.a_plus()};
        case TruncationMode::Minus: return {nl.a_minus(), 0.0};
        case TruncationMode::Full: return {nl.a_minus(), nl.a_plus()};
    }
    throw std::invalid_argument("unknown truncation mode");
}

double truncate(const Nonlinearity& nl, TruncationMode mode, double t) {
    const auto [lo, hi] = support(nl, mode);
    return (t >= lo && t <= hi) ? nl.g(t) : 0.0;
}

double antiderivative(const Nonlinearity& nl, TruncationMode mode, double t) {
    const auto [lo, hi] = support(nl, mode);
    const double end = std::clamp(t, lo, hi);
    if (end == 0.0) return 0.0;
    const double tol = 1e-12 * std::max(1.0, std::fabs(t)) * nl.scale();
    return integrate_adaptive([&](double s) { return nl.g(s); }, 0.0, end, tol);
}

double antiderivative_remainder(const Nonlinearity& nl, TruncationMode mode, double t, double dt) {
    if (dt == 0.0) return 0.0;
    const double c = truncate(nl, mode, t);
    const auto [s0, s1] = support(nl, mode);
    const double a = dt > 0.0 ? t : t + dt;
    const double b = dt > 0.0 ? t + dt : t;

    double acc = 0.0;
    // Outside the support the integrand is the constant -c.
    const double left_end = std::min(b, s0);
    if (left_end > a) acc -= c * (left_end - a);
    const double right_start = std::max(a, s1);
    if (b > right_start) acc -= c * (b - right_start);
    const double in_lo = std::max(a, s0), in_hi = std::min(b, s1);
    if (in_hi > in_lo) {
        const double tol = 1e-15 * nl.scale() * std::max(1.0, std::fabs(dt)) * (in_hi - in_lo);
        acc += integrate_adaptive([&](double s) { return nl.g(s) - c; }, in_lo, in_hi,
                                  std::max(tol, 1e-300));
    }
    return dt > 0.0 ? acc : -acc;
}

double max_abs_antiderivative(const Nonlinearity& nl, TruncationMode mode) {
    const auto [lo, hi] = support(nl, mode);
    double m = 0.0;
    for (int i = 0; i <= 512; ++i) {
        const double t = lo + (hi - lo) * i / 512;
        m = std::max(m, std::fabs(antiderivative(nl, mode, t)));
    }
    return m;
}

ValidationReport validate_condition_g(const Nonlinearity& nl, const DomainSpec& spec,
                                      std::size_t samples) {
    if (samples < 100) throw std::invalid_argument("validate_condition_g needs >= 100 samples");
    ValidationReport rep;
    rep.claimed_k = nl.k();
    rep.samples = samples;
    auto fail = [&](std::string check, std::string msg, std::optional<double> witness = {}) {
        rep.passed = false;
        rep.failures.push_back({std::move(check), std::move(msg), witness});
    };

    if (nl.k() < 2) fail("k_at_least_2", "k >= 2 required, got k = " + std::to_string(nl.k()));

    const auto lams = eigenvalues(spec, static_cast<std::size_t>(nl.k()) + 1);
    rep.lambda_k = lams[nl.k() - 1];
    rep.lambda_k1 = lams[nl.k()];

    // Sandwich on samples of (-delta, delta).
    const double d = nl.delta();
    std::size_t low_count = 0, high_count = 0;
    std::optional<double> low_witness, high_witness;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = -d + (static_cast<double>(i) + 0.5) * (2.0 * d / samples);
        if (std::fabs(t) < 1e-8) continue;
        const double q = nl.g(t) / t;
        if (q < rep.lambda_k - 1e-9) {
            if (!low_witness) low_witness = t;
            ++low_count;
        }
        if (q > rep.lambda_k1 + 1e-9) {
            if (!high_witness) high_witness = t;
            ++high_count;
        }
    }
    if (low_count)
        fail("sandwich_lower", "g(t)/t < lambda_k = " + fmt(rep.lambda_k) + " at " +
                                   std::to_string(low_count) + " samples",
             low_witness);
    if (high_count)
        fail("sandwich_upper", "g(t)/t > lambda_{k+1} = " + fmt(rep.lambda_k1) + " at " +
                                   std::to_string(high_count) + " samples",
             high_witness);

    const double slope0 = nl.gprime(0.0);
    try {
        rep.derived_k = sandwich_index(spec, slope0);
        if (*rep.derived_k != nl.k())
            fail("sandwich_index", "g'(0) = " + fmt(slope0) + " gives k = " +
                                       std::to_string(*rep.derived_k) + ", claimed k = " +
                                       std::to_string(nl.k()));
    } catch (const std::domain_error&) {
        fail("sandwich_index", "g'(0) = " + fmt(slope0) + " <= lambda_1: k >= 2 impossible");
    }
    auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-9 * std::fabs(y); };
    rep.boundary_equality = close(slope0, rep.lambda_k) || close(slope0, rep.lambda_k1);

    const double root_tol = 1e-12 * nl.scale();
    if (std::fabs(nl.g(nl.a_minus())) > root_tol)
        fail("root_a_minus", "g(a_minus) = " + fmt(nl.g(nl.a_minus())), nl.a_minus());
    if (std::fabs(nl.g(nl.a_plus())) > root_tol)
        fail("root_a_plus", "g(a_plus) = " + fmt(nl.g(nl.a_plus())), nl.a_plus());
    if (nl.g(0.0) != 0.0) fail("g_zero", "g(0) = " + fmt(nl.g(0.0)), 0.0);
    return rep;
}

namespace {

// Bisection to the last representable bracket; returns the end with smaller |g|.
double bisect_root(const ScalarFunction& g, double lo, double hi) {
    double glo = g(lo);
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return std::fabs(g(lo)) <= std::fabs(g(hi)) ? lo : hi;
}

// Root of g on the side `sign` of 0: g has the sign of `sign` near 0 and
// changes sign further out.
double find_root(const ScalarFunction& g, double sign) {
    double t = 1e-3;
    if (!(g(sign * t) * sign > 0.0))
        throw std::domain_error("corollary preset: g(t)/t is not positive near 0");
    while (t <= 1e9) {
        const double next = 2.0 * t;
        if (g(sign * next) * sign <= 0.0) {
            const double r = bisect_root(g, sign * t, sign * next);
            return r;
        }
        t = next;
    }
    throw std::domain_error("corollary preset: no sign change below T = 1e9 (f not superlinear?)");
}

bool sandwich_holds(const ScalarFunction& g, double lk, double lk1, double delta) {
    // Endpoints included: the radius found by bisection must hold on the
    // closed interval, not just between samples.
    constexpr int n = 1000;
    for (int i = 0; i <= n; ++i) {
        const double t = i == n ? delta : -delta + i * (2.0 * delta / n);
        if (std::fabs(t) < 1e-8) continue;
        const double q = g(t) / t;
        if (q < lk - 1e-9 || q > lk1 + 1e-9) return false;
    }
    return true;
}

}  // namespace

Nonlinearity preset_corollary(const DomainSpec& spec, double lambda, ScalarFunction f,
                              ScalarFunction fprime, std::string name) {
    // Collision check first: it is the more specific diagnosis.
    for (double ln : eigenvalues(spec, 64))
        if (std::fabs(lambda - ln) <= 1e-9 * ln)
            throw std::domain_error("eigenvalue collision: lambda = " + fmt(lambda) +
                                    " equals a Dirichlet eigenvalue");
    const auto lams = eigenvalues(spec, 2);
    if (!(lambda > lams[1]))
        throw std::domain_error("corollary preset needs lambda > lambda_2 = " + fmt(lams[1]));

    ScalarFunction g = [lambda, f](double t) { return lambda * t - f(t); };
    ScalarFunction gp = [lambda, fprime](double t) { return lambda - fprime(t); };

    const double a_plus = find_root(g, 1.0);
    const double a_minus = find_root(g, -1.0);
    const int k = sandwich_index(spec, gp(0.0));
    const auto lk = eigenvalues(spec, static_cast<std::size_t>(k) + 1);

    double lo = 1e-3;
    if (!sandwich_holds(g, lk[k - 1], lk[k], lo))
        throw std::domain_error("corollary preset: sandwich fails already at delta = 1e-3");
    double hi = 2.0 * lo;
    while (sandwich_holds(g, lk[k - 1], lk[k], hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) break;
    }
    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (sandwich_holds(g, lk[k - 1], lk[k], mid))
            lo = mid;
        else
            hi = mid;
    }
    return Nonlinearity(std::move(name), std::move(g), std::move(gp), a_minus, a_plus, lo, k);
}

Nonlinearity power_preset(const DomainSpec& spec, double lambda, double power) {
    if (!(power > 2.0)) throw std::invalid_argument("power preset needs p > 2");
    ScalarFunction f = [power](double t) { return std::copysign(std::pow(std::fabs(t), power), t); };
    ScalarFunction fp = [power](double t) { return power * std::pow(std::fabs(t), power - 1.0); };
    if (power == 3.0) {
        f = [](double t) { return t * t * t; };
        fp = [](double t) { return 3.0 * t * t; };
        std::ostringstream os;
        os << "cubic(lambda=" << lambda << ")";
        return preset_corollary(spec, lambda, f, fp, os.str());
    }
    std::ostringstream os;
    os << "power(lambda=" << lambda << ", p=" << power << ")";
    return preset_corollary(spec, lambda, f, fp, os.str());
}

}  // namespace semilin
