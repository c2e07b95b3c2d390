#include "semilin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace semilin {
namespace {

struct Mode {
    double lambda;
    std::array<int, 2> index;
};

double mode_lambda(const DomainSpec& spec, int m, int n) {
    const double pi = std::numbers::pi;
    if (spec.dim() == 1) {
        const double k = m * pi / spec.length(0);
        return k * k;
    }
    const double a = spec.length(0), b = spec.length(1);
    return pi * pi * (double(m) * m / (a * a) + double(n) * n / (b * b));
}

bool nearly_equal(double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max(x, y); }

// The `count` smallest modes in canonical order.
std::vector<Mode> smallest_modes(const DomainSpec& spec, std::size_t count) {
    if (count == 0) throw std::invalid_argument("eigenpair count must be positive");
    std::vector<Mode> modes;
    const int c = static_cast<int>(count);
    if (spec.dim() == 1) {
        for (int m = 1; m <= c; ++m) modes.push_back({mode_lambda(spec, m, 0), {m, 0}});
    } else {
        // Any mode among the `count` smallest has m <= count and n <= count.
        for (int m = 1; m <= c; ++m)
            for (int n = 1; n <= c; ++n) modes.push_back({mode_lambda(spec, m, n), {m, n}});
    }
    std::sort(modes.begin(), modes.end(),
              [](const Mode& x, const Mode& y) { return x.lambda < y.lambda; });
    // Within clusters of equal eigenvalues, order by mode tuple.
    for (std::size_t i = 0; i < modes.size();) {
        std::size_t j = i + 1;
        while (j < modes.size() && nearly_equal(modes[j].lambda, modes[i].lambda)) ++j;
        std::sort(modes.begin() + i, modes.begin() + j,
                  [](const Mode& x, const Mode& y) { return x.index < y.index; });
        i = j;
    }
    modes.resize(count);
    return modes;
}

}  // namespace

std::vector<double> eigenvalues(const DomainSpec& spec, std::size_t count) {
    std::vector<double> out;
    for (const auto& m : smallest_modes(spec, count)) out.push_back(m.lambda);
    return out;
}

std::vector<Eigenpair> eigenpairs(const DomainSpec& spec, std::size_t count) {
    const double pi = std::numbers::pi;
    std::vector<Eigenpair> out;
    std::size_t rank = 1;
    for (const auto& m : smallest_modes(spec, count)) {
        const double kx = m.index[0] * pi / spec.length(0);
        const double ky = spec.dim() == 2 ? m.index[1] * pi / spec.length(1) : 0.0;
        Field phi = Field::sample(spec, [&](double x, double y) {
            return spec.dim() == 1 ? std::sin(kx * x) : std::sin(kx * x) * std::sin(ky * y);
        });
        phi *= 1.0 / l2_norm(phi);
        out.push_back(Eigenpair{rank++, m.lambda, m.index, std::move(phi)});
    }
    return out;
}

int sandwich_index(const DomainSpec& spec, double mu) {
    const double lambda1 = eigenvalues(spec, 1).front();
    if (!(mu > lambda1))
        throw std::domain_error("sandwich index needs mu > lambda_1 (condition requires k >= 2)");
    // Grow the list until it passes mu.
    std::size_t count = 8;
    for (;;) {
        const auto lams = eigenvalues(spec, count);
        if (lams.back() > mu) {
            int k = 0;
            for (double l : lams)
                if (l <= mu * (1.0 + 1e-14)) ++k;
            return k;
        }
        if (count > (1u << 10)) throw std::domain_error("sandwich index: mu too large");
        count *= 2;
    }
}

}  // namespace semilin
