#include "semilin/mountain_pass.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "semilin/morse.hpp"
#include "semilin/spectrum.hpp"

namespace semilin {
namespace {

std::size_t argmax_interior(const PathState& path) {
    std::size_t best = 1;
    for (std::size_t i = 2; i + 1 < path.nodes.size(); ++i)
        if (path.energies[i] > path.energies[best]) best = i;
    return best;
}

Field along(const Field& base, double sigma, const Field& dir) {
    Field out = dir;
    out *= sigma;
    out += base;
    return out;
}

// Moves `u` to the energy maximum on the line u + sigma * dir, |sigma| <= 1/2.
// Leaves u unchanged when phi is not concave enough along dir to have an
// interior maximum there.
void maximize_on_chord(const EnergyModel& model, Field& u, const Field& dir) {
    auto slope = [&](double sigma) { return inner(grad_residual(model, along(u, sigma, dir)), dir); };
    const double s0 = slope(0.0);
    if (s0 == 0.0) return;
    const double sign = s0 > 0.0 ? 1.0 : -1.0;

    double a = 0.0, fa = s0;
    double b = 0.0, fb = s0;
    for (double step = 1.0 / 64.0; step <= 0.5; step *= 2.0) {
        b = sign * step;
        fb = slope(b);
        if ((fb > 0.0) != (fa > 0.0)) break;
        a = b;
        fa = fb;
    }
    if ((fb > 0.0) == (fa > 0.0)) return;

    // Illinois regula falsi on the directional derivative.
    int side = 0;
    double c = a;
    for (int it = 0; it < 100; ++it) {
        c = (a * fb - b * fa) / (fb - fa);
        const double fc = slope(c);
        if (std::fabs(fc) <= 1e-9 * std::fabs(s0) || std::fabs(b - a) <= 1e-15) break;
        if ((fc > 0.0) == (fb > 0.0)) {
            b = c;
            fb = fc;
            if (side == -1) fa *= 0.5;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == 1) fb *= 0.5;
            side = 1;
        }
    }
    u = along(u, c, dir);
}

CriticalPoint run_once(const EnergyModel& model, const CriticalPoint& u_minus,
                       const CriticalPoint& u_plus, const MPOptions& opts, double amplitude,
                       MPTrace* trace) {
    const double target = opts.grad_tol * model.nl().scale();
    PathState path = initial_path(model, u_minus.u, u_plus.u, opts.segments, amplitude);
    equidistribute(model, path, 0);

    std::optional<Field> warm;
    std::size_t warm_index = 0;
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        const std::size_t j = argmax_interior(path);
        path.max_index = j;
        Field& node = path.nodes[j];

        const double d_start = h1_seminorm(node - path.nodes.front());
        const double d_end = h1_seminorm(node - path.nodes.back());
        if (std::min(d_start, d_end) < opts.collapse_tol) {
            std::ostringstream os;
            os << "path collapse: maximum within " << std::min(d_start, d_end)
               << " of an endpoint (minimizers not separated by a mountain range)";
            throw MountainPassError(os.str());
        }

        maximize_on_chord(model, node, path.nodes[j + 1] - path.nodes[j - 1]);
        path.energies[j] = phi(model, node);

        const Field r = grad_residual(model, node);
        const double res = sup_norm(r);
        if (trace) {
            trace->max_energies.push_back(path.energies[j]);
            trace->residuals.push_back(res);
        }
        if (res <= target) {
            CriticalPoint cp{node};
            cp.energy = path.energies[j];
            cp.residual = res;
            cp.classification = Classification::MountainPass;
            cp.converged = true;
            cp.iterations = it;
            cp.status = "converged";
            return cp;
        }

        if (warm && warm_index != j) warm.reset();
        PreconditionedGradient pg =
            grad_preconditioned_detailed(model, node, opts.poisson_tol, warm ? &*warm : nullptr);
        warm = std::move(pg.poisson_solution);
        warm_index = j;
        Field d = -std::move(pg.gradient);

        const LineProbe probe(model, node, r, d);
        const double slope = probe.slope();
        if (!(slope < 0.0)) throw MountainPassError("mountain pass: no descent direction");
        double t = opts.initial_step;
        while (probe.increment(t) > opts.armijo_c * t * slope) {
            t *= opts.backtrack_factor;
            if (t < 1e-16) throw MountainPassError("mountain pass: line search failure");
        }
        d *= t;
        node += d;
        path.energies[j] = phi(model, node);
        if (trace) trace->stepped.push_back(path.energies[j]);
        equidistribute(model, path, j);
    }
    std::ostringstream os;
    os << "mountain pass: iteration cap " << opts.max_iters << " reached";
    throw MountainPassError(os.str());
}

}  // namespace

PathState initial_path(const EnergyModel& model, const Field& u_minus, const Field& u_plus,
                       std::size_t segments, double amplitude) {
    if (segments < 8) throw std::invalid_argument("mountain pass needs at least 8 path segments");
    require_same_domain(model.spec(), u_minus, "initial_path");
    require_same_domain(model.spec(), u_plus, "initial_path");

    Field bump = eigenpairs(model.spec(), 2)[1].phi;
    bump *= amplitude / sup_norm(bump);

    PathState path;
    for (std::size_t i = 0; i <= segments; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(segments);
        Field node = (1.0 - tau) * u_minus;
        node += tau * u_plus;
        if (i > 0 && i < segments) node += (4.0 * tau * (1.0 - tau)) * bump;
        path.energies.push_back(phi(model, node));
        path.nodes.push_back(std::move(node));
    }
    path.max_index = argmax_interior(path);
    return path;
}

void equidistribute(const EnergyModel& model, PathState& path, std::size_t pinned) {
    const std::size_t last = path.nodes.size() - 1;
    auto respace = [&](std::size_t lo, std::size_t hi) {
        if (hi - lo < 2) return;
        std::vector<double> arc(hi - lo + 1, 0.0);
        for (std::size_t i = lo + 1; i <= hi; ++i)
            arc[i - lo] = arc[i - lo - 1] + h1_seminorm(path.nodes[i] - path.nodes[i - 1]);
        const double total = arc.back();
        if (!(total > 0.0)) return;
        std::vector<Field> fresh;
        std::size_t seg = 0;
        for (std::size_t i = lo + 1; i < hi; ++i) {
            const double s = total * static_cast<double>(i - lo) / static_cast<double>(hi - lo);
            while (seg + 1 < arc.size() - 1 && arc[seg + 1] < s) ++seg;
            const double len = arc[seg + 1] - arc[seg];
            const double w = len > 0.0 ? (s - arc[seg]) / len : 0.0;
            Field node = (1.0 - w) * path.nodes[lo + seg];
            node += w * path.nodes[lo + seg + 1];
            fresh.push_back(std::move(node));
        }
        for (std::size_t i = lo + 1; i < hi; ++i) {
            path.nodes[i] = std::move(fresh[i - lo - 1]);
            path.energies[i] = phi(model, path.nodes[i]);
        }
    };
    if (pinned == 0 || pinned >= last) {
        respace(0, last);
    } else {
        respace(0, pinned);
        respace(pinned, last);
    }
}

CriticalPoint find_mountain_pass(const EnergyModel& model, const CriticalPoint& u_minus,
                                 const CriticalPoint& u_plus, const MPOptions& opts,
                                 MPTrace* trace) {
    if (model.mode() != TruncationMode::Full)
        throw std::invalid_argument("mountain pass runs on the Full energy");
    const double target = opts.grad_tol * model.nl().scale();
    if (!u_minus.converged || !u_plus.converged || u_minus.residual > target ||
        u_plus.residual > target)
        throw std::invalid_argument("mountain pass endpoints must be converged critical points");
    if (!(phi(model, u_minus.u) < 0.0 && phi(model, u_plus.u) < 0.0))
        throw std::invalid_argument("mountain pass endpoints must have negative energy");

    double amplitude = opts.perturbation * model.nl().delta();
    for (std::size_t attempt = 0;; ++attempt) {
        CriticalPoint cp = run_once(model, u_minus, u_plus, opts, amplitude, trace);
        const bool trivial = sup_norm(cp.u) <= 1e-6;
        if (!trivial || attempt >= opts.max_restarts || morse_index(model, cp.u) < 2) return cp;
        // Converged onto the trivial solution: push harder off the symmetric path.
        amplitude *= 2.0;
        if (trace) ++trace->restarts;
    }
}

}  // namespace semilin
