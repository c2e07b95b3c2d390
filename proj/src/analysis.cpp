#include "semilin/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace semilin {

BoundsCheck check_bounds(const Field& u, double lower, double upper, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("check_bounds: tol must be positive");
    BoundsCheck out;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double v = u[i];
        const double excess = std::max(lower - v, v - upper);
        if (excess > tol) {
            out.ok = false;
            if (excess > out.worst_violation) {
                out.worst_violation = excess;
                out.worst_index = i;
                out.worst_value = v;
            }
        }
    }
    return out;
}

PositivityProfile positivity_profile(const Field& u) {
    const DomainSpec& g = u.domain();
    PositivityProfile p;
    p.strictly_positive_interior = std::all_of(u.values().begin(), u.values().end(),
                                               [](double v) { return v > 0.0; });
    double slope = INFINITY;
    if (g.dim() == 1) {
        const double h = g.spacing(0);
        slope = std::min(u[0], u[u.size() - 1]) / h;
    } else {
        const std::size_t nx = g.count(0), ny = g.count(1);
        const double hx = g.spacing(0), hy = g.spacing(1);
        for (std::size_t j = 0; j < ny; ++j)
            slope = std::min({slope, u[j * nx] / hx, u[j * nx + nx - 1] / hx});
        for (std::size_t i = 0; i < nx; ++i)
            slope = std::min({slope, u[i] / hy, u[(ny - 1) * nx + i] / hy});
    }
    p.min_boundary_slope = slope;
    return p;
}

bool SolveReport::all_passed() const {
    return std::all_of(flags.begin(), flags.end(), [](const Flag& f) { return f.passed; });
}

const Flag* SolveReport::flag(const std::string& name) const {
    for (const auto& f : flags)
        if (f.name == name) return &f;
    return nullptr;
}

const PointReport& SolveReport::point(const std::string& name) const {
    for (const auto& p : points)
        if (p.name == name) return p;
    throw std::out_of_range("no point named " + name);
}

namespace {

std::string str(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::vector<Flag> compute_flags(const SolveReport& report, const EnergyModel& full) {
    const auto& opts = report.options;
    const Nonlinearity& nl = full.nl();
    const double scale = nl.scale();
    const PointReport& um = report.point("u_minus");
    const PointReport& up = report.point("u_plus");
    const PointReport& us = report.point("u_star");
    const PointReport& zero = report.point("zero");
    const std::vector<const PointReport*> nontrivial{&um, &up, &us};

    std::vector<Flag> flags;
    auto add = [&](std::string name, bool ok, std::string note = {}) {
        flags.push_back({std::move(name), ok, std::move(note)});
    };

    add("condition_g", report.condition_g.passed,
        report.condition_g.passed ? "" : report.condition_g.failures.front().message);

    {
        bool ok = true;
        std::string note;
        for (const auto* p : nontrivial) {
            const double res = sup_norm(grad_residual(full, p->point.u));
            if (!p->point.converged || res > opts.grad_tol * scale) {
                ok = false;
                note += p->name + " residual " + str(res) + "; ";
            }
        }
        add("converged", ok, note);
    }
    {
        bool ok = true;
        for (const auto* p : nontrivial) ok = ok && sup_norm(p->point.u) > opts.nontrivial_abs;
        add("nontrivial", ok);
    }
    {
        bool ok = true;
        std::string note;
        for (const auto* p : nontrivial) {
            const BoundsCheck b = check_bounds(p->point.u, p->lower_bound, p->upper_bound, opts.bounds_tol);
            if (!b.ok) {
                ok = false;
                note += p->name + " exceeds bounds by " + str(b.worst_violation) + "; ";
            }
        }
        add("bounds", ok, note);
    }
    {
        // Where the bounds hold the truncation is inactive and the Full
        // residual is the residual of the untruncated problem.
        double worst = 0.0;
        for (const auto* p : nontrivial)
            for (double v : p->point.u.values())
                worst = std::max(worst, std::fabs(nl.g(v) - truncate(nl, TruncationMode::Full, v)));
        add("classical_solution", worst <= 1e-12 * scale,
            worst > 0.0 ? "max |g - g_full| = " + str(worst) : "");
    }
    {
        const PositivityProfile pp = positivity_profile(up.point.u);
        const PositivityProfile pm = positivity_profile(-um.point.u);
        const bool ok = pp.strictly_positive_interior && pp.min_boundary_slope > 0.0 &&
                        pm.strictly_positive_interior && pm.min_boundary_slope > 0.0;
        add("positivity", ok,
            "u_plus slope " + str(pp.min_boundary_slope) + ", -u_minus slope " +
                str(pm.min_boundary_slope));
    }
    const double e_minus = phi(full, um.point.u);
    const double e_plus = phi(full, up.point.u);
    const double e_star = phi(full, us.point.u);
    add("negative_minima", e_minus < 0.0 && e_plus < 0.0);
    add("mountain_pass_level", e_star > std::max(e_minus, e_plus));

    {
        double amp = 0.0;
        for (const auto* p : nontrivial) amp = std::max(amp, sup_norm(p->point.u));
        const std::vector<const PointReport*> all{&zero, &um, &up, &us};
        bool ok = true;
        std::string note;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j) {
                const double d = sup_norm(all[i]->point.u - all[j]->point.u);
                if (!(d > opts.distinct_rel * amp)) {
                    ok = false;
                    note += all[i]->name + "=" + all[j]->name + "; ";
                }
            }
        add("distinct", ok, note);
    }

    add("minimizer_index",
        um.morse.index == 0 && up.morse.index == 0 && !um.morse.degenerate && !up.morse.degenerate,
        "indices " + std::to_string(um.morse.index) + ", " + std::to_string(up.morse.index));

    const int k = nl.k();
    {
        const bool ok = us.morse.degenerate ? (us.morse.index >= 1 && us.morse.index != k)
                                            : us.morse.index == 1;
        add("mountain_pass_index", ok,
            "index " + std::to_string(us.morse.index) + (us.morse.degenerate ? " (degenerate)" : ""));
    }

    if (report.condition_g.boundary_equality) {
        add("trivial_index", false, "inconclusive: g'(0) equals an eigenvalue");
    } else {
        add("trivial_index", zero.morse.index == k && !zero.morse.degenerate,
            "index " + std::to_string(zero.morse.index) + ", k = " + std::to_string(k));
    }

    if (k < 2) {
        add("morse_comparison", false, "refused: k >= 2 required");
    } else if (report.condition_g.boundary_equality) {
        add("morse_comparison", false, "inconclusive: g'(0) equals an eigenvalue");
    } else {
        add("morse_comparison", us.morse.index != zero.morse.index,
            "index(u_star) = " + std::to_string(us.morse.index) +
                ", index(0) = " + std::to_string(zero.morse.index));
    }
    return flags;
}

SolveReport assemble_report(const EnergyModel& full, const CriticalPoint& u_minus,
                            const CriticalPoint& u_plus, const CriticalPoint& u_star,
                            const ValidationReport& condition_g, const AnalysisOptions& opts,
                            std::string preset) {
    if (full.mode() != TruncationMode::Full)
        throw std::invalid_argument("assemble_report needs the Full energy model");
    const Nonlinearity& nl = full.nl();
    SolveReport rep{std::move(preset), full.spec()};
    rep.nonlinearity = nl.name();
    rep.a_minus = nl.a_minus();
    rep.a_plus = nl.a_plus();
    rep.delta = nl.delta();
    rep.scale = nl.scale();
    rep.k = nl.k();
    rep.condition_g = condition_g;
    rep.options = opts;

    CriticalPoint zero{Field(full.spec())};
    zero.classification = Classification::Trivial;
    zero.converged = true;
    zero.status = "exact";
    zero.residual = sup_norm(grad_residual(full, zero.u));

    const std::size_t num_eigs = static_cast<std::size_t>(std::max(nl.k(), 1)) + 2;
    const double morse_tol = opts.morse_tol_rel * nl.scale();
    auto add_point = [&](std::string name, const CriticalPoint& cp, double lo, double hi) {
        PointReport pr{std::move(name), cp};
        pr.point.energy = phi(full, cp.u);
        pr.point.residual = sup_norm(grad_residual(full, cp.u));
        pr.morse = morse_analysis(full, cp.u, num_eigs, morse_tol);
        pr.point.morse_index = pr.morse.index;
        pr.lower_bound = lo;
        pr.upper_bound = hi;
        pr.bounds = check_bounds(cp.u, lo, hi, opts.bounds_tol);
        rep.points.push_back(std::move(pr));
    };
    add_point("u_minus", u_minus, nl.a_minus(), 0.0);
    add_point("u_plus", u_plus, 0.0, nl.a_plus());
    add_point("u_star", u_star, nl.a_minus(), nl.a_plus());
    add_point("zero", zero, nl.a_minus(), nl.a_plus());

    for (std::size_t i = 0; i < rep.points.size(); ++i)
        for (std::size_t j = i + 1; j < rep.points.size(); ++j)
            rep.distances.emplace_back(rep.points[i].name + ":" + rep.points[j].name,
                                       sup_norm(rep.points[i].point.u - rep.points[j].point.u));

    rep.flags = compute_flags(rep, full);
    return rep;
}

}  // namespace semilin
