#include "semilin/energy.hpp"

#include "semilin/kernels.hpp"

namespace semilin {

double phi(const EnergyModel& model, const Field& u) {
    require_same_domain(model.spec(), u, "phi");
    const double h1 = h1_seminorm(u);
    double g_sum = 0.0;
    for (double v : u.values()) g_sum += antiderivative(model.nl(), model.mode(), v);
    return 0.5 * h1 * h1 - model.spec().cell_volume() * g_sum;
}

Field truncated_source(const EnergyModel& model, const Field& u) {
    require_same_domain(model.spec(), u, "truncated_source");
    Field out(model.spec());
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = truncate(model.nl(), model.mode(), u[i]);
    return out;
}

Field grad_residual(const EnergyModel& model, const Field& u) {
    Field r = apply_neg_laplacian(model.spec(), u);
    for (std::size_t i = 0; i < u.size(); ++i) r[i] -= truncate(model.nl(), model.mode(), u[i]);
    return r;
}

PreconditionedGradient grad_preconditioned_detailed(const EnergyModel& model, const Field& u,
                                                    double tol, const Field* warm_start) {
    const Field src = truncated_source(model, u);
    PoissonResult w = solve_poisson_detailed(model.spec(), src, tol, warm_start);
    Field grad = u;
    grad -= w.solution;
    return PreconditionedGradient{std::move(grad), std::move(w.solution), w.iterations};
}

Field grad_preconditioned(const EnergyModel& model, const Field& u, double tol) {
    return grad_preconditioned_detailed(model, u, tol, nullptr).gradient;
}

LineProbe::LineProbe(const EnergyModel& model, const Field& u, const Field& residual,
                     const Field& direction)
    : model_(&model), u_(&u), d_(&direction) {
    require_same_domain(model.spec(), u, "LineProbe");
    require_same_domain(model.spec(), residual, "LineProbe");
    require_same_domain(model.spec(), direction, "LineProbe");
    slope_ = inner(residual, direction);
    curvature_ = h1_inner(direction, direction);
}

double LineProbe::increment(double t) const {
    double rem = 0.0;
    const auto u = u_->values();
    const auto d = d_->values();
    for (std::size_t i = 0; i < u.size(); ++i)
        rem += antiderivative_remainder(model_->nl(), model_->mode(), u[i], t * d[i]);
    return t * slope_ + 0.5 * t * t * curvature_ - model_->spec().cell_volume() * rem;
}

}  // namespace semilin
