#include "semilin/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "semilin/kernels.hpp"

namespace semilin {

DomainSpec::DomainSpec(Kind kind, std::array<double, 2> lengths, std::array<std::size_t, 2> counts)
    : kind_(kind), lengths_(lengths), counts_(counts) {
    for (int a = 0; a < dim(); ++a) {
        if (!(lengths_[a] > 0.0) || !std::isfinite(lengths_[a]))
            throw std::invalid_argument("domain lengths must be positive and finite");
        if (counts_[a] < 3) throw std::invalid_argument("interior node counts must be at least 3");
    }
}

DomainSpec DomainSpec::interval(double length, std::size_t n) {
    return DomainSpec(Kind::Interval, {length, 0.0}, {n, 1});
}

DomainSpec DomainSpec::rectangle(double width, double height, std::size_t nx, std::size_t ny) {
    return DomainSpec(Kind::Rectangle, {width, height}, {nx, ny});
}

std::size_t DomainSpec::size() const { return dim() == 1 ? counts_[0] : counts_[0] * counts_[1]; }

double DomainSpec::cell_volume() const {
    return dim() == 1 ? spacing(0) : spacing(0) * spacing(1);
}

double DomainSpec::measure() const {
    return dim() == 1 ? lengths_[0] : lengths_[0] * lengths_[1];
}

std::string DomainSpec::describe() const {
    std::ostringstream os;
    if (dim() == 1)
        os << "interval L=" << lengths_[0] << " n=" << counts_[0];
    else
        os << "rectangle " << lengths_[0] << "x" << lengths_[1] << " n=" << counts_[0] << "x"
           << counts_[1];
    return os.str();
}

Field::Field(const DomainSpec& domain) : domain_(domain), values_(domain.size(), 0.0) {}

Field::Field(const DomainSpec& domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
    if (values_.size() != domain_.size())
        throw std::invalid_argument("field length does not match the domain node count");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("field entries must be finite");
}

Field& Field::operator+=(const Field& other) {
    require_same_domain(domain_, other, "field addition");
    kernels::active().axpy(1.0, other.values_.data(), values_.data(), values_.size());
    return *this;
}

Field& Field::operator-=(const Field& other) {
    require_same_domain(domain_, other, "field subtraction");
    kernels::active().axpy(-1.0, other.values_.data(), values_.data(), values_.size());
    return *this;
}

Field& Field::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator-(Field a) {
    for (double& v : a.values()) v = -v;
    return a;
}

void require_same_domain(const DomainSpec& grid, const Field& u, const char* what) {
    if (!(u.domain() == grid))
        throw std::invalid_argument(std::string("domain mismatch in ") + what + ": field on " +
                                    u.domain().describe() + ", expected " + grid.describe());
}

void apply_neg_laplacian(const DomainSpec& grid, std::span<const double> u, std::span<double> out) {
    if (u.size() != grid.size() || out.size() != grid.size())
        throw std::invalid_argument("apply_neg_laplacian: buffer length mismatch");
    const auto& k = kernels::active();
    const double hx = grid.spacing(0);
    if (grid.dim() == 1) {
        k.neg_laplacian_1d(u.data(), out.data(), u.size(), 1.0 / (hx * hx));
    } else {
        const double hy = grid.spacing(1);
        k.neg_laplacian_2d(u.data(), out.data(), grid.count(0), grid.count(1), 1.0 / (hx * hx),
                           1.0 / (hy * hy));
    }
}

Field apply_neg_laplacian(const DomainSpec& grid, const Field& u) {
    require_same_domain(grid, u, "apply_neg_laplacian");
    Field out(grid);
    apply_neg_laplacian(grid, u.values(), out.values());
    return out;
}

double integral(const Field& u) {
    return u.domain().cell_volume() * kernels::sum(u.values());
}

double l2_norm(const Field& u) {
    return std::sqrt(u.domain().cell_volume() * kernels::dot(u.values(), u.values()));
}

double sup_norm(const Field& u) { return kernels::active().max_abs(u.values().data(), u.size()); }

double h1_seminorm(const Field& u) {
    const DomainSpec& g = u.domain();
    const auto v = u.values();
    double acc = 0.0;
    if (g.dim() == 1) {
        const double h = g.spacing(0);
        const std::size_t n = v.size();
        double prev = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double cur = i < n ? v[i] : 0.0;
            const double d = (cur - prev) / h;
            acc += d * d;
            prev = cur;
        }
    } else {
        const std::size_t nx = g.count(0), ny = g.count(1);
        const double hx = g.spacing(0), hy = g.spacing(1);
        for (std::size_t j = 0; j < ny; ++j) {
            double prev = 0.0;
            for (std::size_t i = 0; i <= nx; ++i) {
                const double cur = i < nx ? v[j * nx + i] : 0.0;
                const double d = (cur - prev) / hx;
                acc += d * d;
                prev = cur;
            }
        }
        for (std::size_t i = 0; i < nx; ++i) {
            double prev = 0.0;
            for (std::size_t j = 0; j <= ny; ++j) {
                const double cur = j < ny ? v[j * nx + i] : 0.0;
                const double d = (cur - prev) / hy;
                acc += d * d;
                prev = cur;
            }
        }
    }
    return std::sqrt(g.cell_volume() * acc);
}

double inner(const Field& u, const Field& v) {
    require_same_domain(u.domain(), v, "inner");
    return u.domain().cell_volume() * kernels::dot(u.values(), v.values());
}

double h1_inner(const Field& u, const Field& v) {
    return inner(u, apply_neg_laplacian(u.domain(), v));
}

double quadrature(const DomainSpec& grid, const Field& u, QuadratureKind kind) {
    require_same_domain(grid, u, "quadrature");
    switch (kind) {
        case QuadratureKind::Integral: return integral(u);
        case QuadratureKind::L2Norm: return l2_norm(u);
        case QuadratureKind::SupNorm: return sup_norm(u);
        case QuadratureKind::H1Seminorm: return h1_seminorm(u);
    }
    throw std::invalid_argument("unknown quadrature kind");
}

PoissonNonConvergence::PoissonNonConvergence(std::size_t iterations, double residual)
    : iterations_(iterations), residual_(residual) {
    std::ostringstream os;
    os << "Poisson CG did not converge after " << iterations << " iterations (residual "
       << residual << ")";
    message_ = os.str();
}

PoissonResult solve_poisson_detailed(const DomainSpec& grid, const Field& rhs, double tol,
                                     const Field* guess) {
    require_same_domain(grid, rhs, "solve_poisson");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_poisson: tol must be positive");
    if (guess) require_same_domain(grid, *guess, "solve_poisson guess");

    const auto& k = kernels::active();
    const std::size_t n = grid.size();
    const std::size_t cap = 10 * n;
    const double target = tol * std::max(1.0, sup_norm(rhs));

    Field x = guess ? *guess : Field(grid);
    std::vector<double> r(n), p(n), ap(n);

    auto true_residual = [&] {
        apply_neg_laplacian(grid, x.values(), r);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
        return k.max_abs(r.data(), n);
    };

    double res = true_residual();
    std::size_t it = 0;
    while (res > target) {
        // (Re)start from the true residual.
        p = r;
        double rr = kernels::dot(r, r);
        bool recursive_done = false;
        while (it < cap) {
            apply_neg_laplacian(grid, p, ap);
            const double pap = kernels::dot(p, ap);
            if (!(pap > 0.0)) break;
            const double alpha = rr / pap;
            k.axpy(alpha, p.data(), x.values().data(), n);
            k.axpy(-alpha, ap.data(), r.data(), n);
            ++it;
            if (k.max_abs(r.data(), n) <= target) {
                recursive_done = true;
                break;
            }
            const double rr_new = kernels::dot(r, r);
            k.xpby(r.data(), rr_new / rr, p.data(), n);
            rr = rr_new;
        }
        const double prev = res;
        res = true_residual();
        if (it >= cap || (!recursive_done && res >= prev)) {
            if (res <= target) break;
            throw PoissonNonConvergence(it, res);
        }
    }
    return PoissonResult{std::move(x), it, res};
}

Field solve_poisson(const DomainSpec& grid, const Field& rhs, double tol) {
    return solve_poisson_detailed(grid, rhs, tol).solution;
}

}  // namespace semilin
