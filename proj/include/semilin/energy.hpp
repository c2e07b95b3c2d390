#pragma once

// Discrete energy functionals
//   Phi(u) = 1/2 |u|_{H1}^2 - h^d sum G(u_i)
// with G the antiderivative of the Plus, Minus or Full truncation of g.

#include "semilin/grid.hpp"
#include "semilin/nonlinearity.hpp"

namespace semilin {

class EnergyModel {
public:
    EnergyModel(DomainSpec spec, Nonlinearity nl, TruncationMode mode)
        : spec_(std::move(spec)), nl_(std::move(nl)), mode_(mode) {}

    const DomainSpec& spec() const { return spec_; }
    const Nonlinearity& nl() const { return nl_; }
    TruncationMode mode() const { return mode_; }

    EnergyModel with_mode(TruncationMode mode) const { return EnergyModel(spec_, nl_, mode); }

private:
    DomainSpec spec_;
    Nonlinearity nl_;
    TruncationMode mode_;
};

double phi(const EnergyModel& model, const Field& u);

// Pointwise truncated g(u).
Field truncated_source(const EnergyModel& model, const Field& u);

// -Lap u - g_mode(u). Its zero set is the set of discrete solutions, and
// h^d <grad_residual(u), v> is the directional derivative of phi along v.
Field grad_residual(const EnergyModel& model, const Field& u);

// u - (-Lap)^{-1} g_mode(u): the gradient in the discrete H1_0 metric.
Field grad_preconditioned(const EnergyModel& model, const Field& u, double tol = 1e-10);

// Same, but keeps the Poisson solution so that the next call can warm-start.
struct PreconditionedGradient {
    Field gradient;
    Field poisson_solution;  // (-Lap)^{-1} g_mode(u)
    std::size_t cg_iterations = 0;
};
PreconditionedGradient grad_preconditioned_detailed(const EnergyModel& model, const Field& u,
                                                    double tol, const Field* warm_start);

// phi(u + t d) - phi(u) along a fixed direction, evaluated as
//   t h^d <r, d> + t^2/2 h^d <-Lap d, d> - h^d sum R_i(t)
// with r the residual at u and R_i the second-order antiderivative
// remainders. Avoids the cancellation of differencing two energies, so
// line searches keep working when the gradient is tiny.
class LineProbe {
public:
    LineProbe(const EnergyModel& model, const Field& u, const Field& residual, const Field& direction);

    // Directional derivative of phi at u along d.
    double slope() const { return slope_; }
    double increment(double t) const;

private:
    const EnergyModel* model_;
    const Field* u_;
    const Field* d_;
    double slope_;
    double curvature_;  // h^d <-Lap d, d>
};

}  // namespace semilin
