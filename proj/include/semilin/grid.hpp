#pragma once

// Uniform interior-node discretization of an interval or a rectangle with
// homogeneous Dirichlet data. Boundary values are never stored.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semilin {

class DomainSpec {
public:
    enum class Kind { Interval, Rectangle };

    static DomainSpec interval(double length, std::size_t n);
    static DomainSpec rectangle(double width, double height, std::size_t nx, std::size_t ny);

    Kind kind() const { return kind_; }
    int dim() const { return kind_ == Kind::Interval ? 1 : 2; }

    double length(int axis) const { return lengths_[axis]; }
    std::size_t count(int axis) const { return counts_[axis]; }

    // h_axis = length_axis / (count_axis + 1)
    double spacing(int axis) const {
        return lengths_[axis] / static_cast<double>(counts_[axis] + 1);
    }

    std::size_t size() const;
    // Quadrature weight of one interior node (h or h_x h_y).
    double cell_volume() const;
    // Measure of the domain.
    double measure() const;

    // Coordinate of interior node `i` along `axis` (0-based interior index).
    double coord(int axis, std::size_t i) const {
        return static_cast<double>(i + 1) * spacing(axis);
    }

    std::string describe() const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    DomainSpec(Kind kind, std::array<double, 2> lengths, std::array<std::size_t, 2> counts);

    Kind kind_;
    std::array<double, 2> lengths_;
    std::array<std::size_t, 2> counts_;
};

// Grid function over the interior nodes, row-major (x fastest) in 2D.
class Field {
public:
    explicit Field(const DomainSpec& domain);
    // Throws if the length does not match or any entry is non-finite.
    Field(const DomainSpec& domain, std::vector<double> values);

    const DomainSpec& domain() const { return domain_; }
    std::size_t size() const { return values_.size(); }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    // Samples f at every interior node. f receives (x, y); y = 0 in 1D.
    template <typename F>
    static Field sample(const DomainSpec& domain, F&& f) {
        Field out(domain);
        if (domain.dim() == 1) {
            for (std::size_t i = 0; i < domain.count(0); ++i)
                out.values_[i] = f(domain.coord(0, i), 0.0);
        } else {
            const std::size_t nx = domain.count(0);
            for (std::size_t j = 0; j < domain.count(1); ++j)
                for (std::size_t i = 0; i < nx; ++i)
                    out.values_[j * nx + i] = f(domain.coord(0, i), domain.coord(1, j));
        }
        return out;
    }

    Field& operator+=(const Field& other);
    Field& operator-=(const Field& other);
    Field& operator*=(double s);

    friend bool operator==(const Field&, const Field&) = default;

private:
    DomainSpec domain_;
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator-(Field a);

// Throws std::invalid_argument when `u` does not live on `grid`.
void require_same_domain(const DomainSpec& grid, const Field& u, const char* what);

// Standard 3-point / 5-point stencil of -Laplacian with zero Dirichlet padding.
Field apply_neg_laplacian(const DomainSpec& grid, const Field& u);
void apply_neg_laplacian(const DomainSpec& grid, std::span<const double> u, std::span<double> out);

enum class QuadratureKind { Integral, L2Norm, SupNorm, H1Seminorm };

double quadrature(const DomainSpec& grid, const Field& u, QuadratureKind kind);

double integral(const Field& u);
double l2_norm(const Field& u);
double sup_norm(const Field& u);
// h^d * sum of squared forward differences, including the one-sided
// differences to the zero boundary.
double h1_seminorm(const Field& u);
// h^d <u, v>
double inner(const Field& u, const Field& v);
// Discrete H^1_0 inner product h^d <u, -Lap v>.
double h1_inner(const Field& u, const Field& v);

struct PoissonResult {
    Field solution;
    std::size_t iterations = 0;
    double residual = 0.0;  // sup norm of -Lap w - rhs
};

class PoissonNonConvergence : public std::exception {
public:
    PoissonNonConvergence(std::size_t iterations, double residual);
    const char* what() const noexcept override { return message_.c_str(); }
    std::size_t iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
    std::string message_;
};

// Conjugate gradients on the stencil. Stops once
// ||-Lap w - rhs||_inf <= tol * max(1, ||rhs||_inf). The iteration cap is
// 10 * (number of nodes). `guess` warm-starts the iteration.
PoissonResult solve_poisson_detailed(const DomainSpec& grid, const Field& rhs, double tol,
                                     const Field* guess = nullptr);
Field solve_poisson(const DomainSpec& grid, const Field& rhs, double tol);

}  // namespace semilin
