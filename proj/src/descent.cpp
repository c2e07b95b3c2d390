#include "semilin/descent.hpp"

#include <optional>
#include <sstream>

namespace semilin {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::PositiveMin: return "PositiveMin";
        case Classification::NegativeMin: return "NegativeMin";
        case Classification::MountainPass: return "MountainPass";
        case Classification::Trivial: return "Trivial";
    }
    return "?";
}

Field initial_guess(const EnergyModel& model, const Eigenpair& phi1) {
    if (phi1.rank != 1) throw std::invalid_argument("initial_guess needs the rank-1 eigenpair");
    if (model.mode() == TruncationMode::Full)
        throw std::invalid_argument("initial_guess is defined for the Plus and Minus energies");
    require_same_domain(model.spec(), phi1.phi, "initial_guess");

    const double s = 0.5 * model.nl().delta() / sup_norm(phi1.phi);
    Field guess = (model.mode() == TruncationMode::Plus ? s : -s) * phi1.phi;
    const double e = phi(model, guess);
    if (!(e < 0.0)) {
        std::ostringstream os;
        os << "initial guess has energy " << e
           << " >= 0: no negative-energy direction (condition (g) violated?)";
        throw InitialGuessError(os.str());
    }
    return guess;
}

CriticalPoint minimize(const EnergyModel& model, const Field& u0, const DescentOptions& opts,
                       DescentTrace* trace) {
    if (model.mode() == TruncationMode::Full)
        throw std::invalid_argument("minimize runs on the Plus or Minus energy");
    require_same_domain(model.spec(), u0, "minimize");

    const double target = opts.grad_tol * model.nl().scale();
    CriticalPoint cp{u0};
    cp.classification = model.mode() == TruncationMode::Plus ? Classification::PositiveMin
                                                             : Classification::NegativeMin;
    Field& u = cp.u;
    std::optional<Field> warm;
    if (trace) trace->energies.push_back(phi(model, u));

    for (std::size_t it = 0;; ++it) {
        const Field r = grad_residual(model, u);
        cp.residual = sup_norm(r);
        cp.iterations = it;
        if (cp.residual <= target) {
            cp.converged = true;
            cp.status = "converged";
            break;
        }
        if (it >= opts.max_iters) {
            cp.status = "max_iters exhausted";
            break;
        }

        PreconditionedGradient pg =
            grad_preconditioned_detailed(model, u, opts.poisson_tol, warm ? &*warm : nullptr);
        warm = std::move(pg.poisson_solution);
        Field d = -std::move(pg.gradient);

        const LineProbe probe(model, u, r, d);
        const double slope = probe.slope();
        if (!(slope < 0.0)) {
            cp.status = "preconditioned gradient is not a descent direction";
            break;
        }
        double t = opts.initial_step;
        double inc = probe.increment(t);
        while (inc > opts.armijo_c * t * slope) {
            t *= opts.backtrack_factor;
            if (t < opts.min_step) break;
            inc = probe.increment(t);
        }
        if (t < opts.min_step) {
            cp.status = "line search failure: step underflow";
            break;
        }
        d *= t;
        u += d;
        if (trace) {
            trace->increments.push_back(inc);
            trace->steps.push_back(t);
            trace->slopes.push_back(slope);
            trace->energies.push_back(phi(model, u));
        }
    }
    cp.energy = phi(model, u);
    return cp;
}

}  // namespace semilin
