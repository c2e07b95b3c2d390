#include "semilin/morse.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "semilin/kernels.hpp"

namespace semilin {
namespace {

using Vec = std::vector<double>;

// Deterministic start vectors, identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    double uniform() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

struct ShiftedOperator {
    const DomainSpec& spec;
    Vec potential;  // -g'(u) - shift
    void apply(std::span<const double> v, std::span<double> out) const {
        apply_neg_laplacian(spec, v, out);
        kernels::active().add_product(potential.data(), v.data(), out.data(), v.size());
    }
};

// CG for the SPD shifted operator; relative 2-norm tolerance.
void solve_spd(const ShiftedOperator& op, const Vec& b, Vec& x, double rel_tol) {
    const auto& k = kernels::active();
    const std::size_t n = b.size();
    Vec r(n), p(n), ap(n);
    op.apply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double bnorm = std::sqrt(kernels::dot(b, b));
    const double target = rel_tol * bnorm;
    double rr = kernels::dot(r, r);
    p = r;
    for (std::size_t it = 0; it < 20 * n + 100 && std::sqrt(rr) > target; ++it) {
        op.apply(p, ap);
        const double alpha = rr / kernels::dot(p, ap);
        k.axpy(alpha, p.data(), x.data(), n);
        k.axpy(-alpha, ap.data(), r.data(), n);
        const double rr_new = kernels::dot(r, r);
        k.xpby(r.data(), rr_new / rr, p.data(), n);
        rr = rr_new;
    }
    if (std::sqrt(rr) > 10.0 * target) throw MorseError("Morse index: inner CG did not converge");
}

// Modified Gram-Schmidt, applied twice.
void orthonormalize(std::vector<Vec>& basis) {
    const auto& k = kernels::active();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j)
                k.axpy(-kernels::dot(basis[i], basis[j]), basis[j].data(), basis[i].data(),
                       basis[i].size());
            const double nrm = std::sqrt(kernels::dot(basis[i], basis[i]));
            if (!(nrm > 0.0)) throw MorseError("Morse index: subspace collapsed");
            for (double& v : basis[i]) v /= nrm;
        }
    }
}

MorseResult subspace_iteration(const EnergyModel& model, const Field& u, std::size_t num_eigs,
                               double tol) {
    const DomainSpec& spec = model.spec();
    const std::size_t n = spec.size();
    const std::size_t block = std::min(num_eigs + 2, n);
    num_eigs = std::min(num_eigs, n);

    const double shift = -model.nl().sup_gprime() - 1.0;
    ShiftedOperator shifted{spec, Vec(n)};
    Vec minus_gprime(n);
    for (std::size_t i = 0; i < n; ++i) {
        minus_gprime[i] = -model.nl().gprime(u[i]);
        shifted.potential[i] = minus_gprime[i] - shift;
    }
    auto apply_h = [&](const Vec& v, Vec& out) {
        apply_neg_laplacian(spec, v, out);
        kernels::active().add_product(minus_gprime.data(), v.data(), out.data(), n);
    };

    // Rough operator norm for the residual test.
    double op_norm = 0.0;
    for (int a = 0; a < spec.dim(); ++a) op_norm += 4.0 / (spec.spacing(a) * spec.spacing(a));
    op_norm += std::fabs(shift) + 1.0;
    const double res_tol = 1e-10 * op_norm;

    SplitMix64 rng(0x5eed1234abcdULL);
    std::vector<Vec> v(block, Vec(n));
    for (auto& col : v)
        for (double& x : col) x = rng.uniform() - 0.5;
    orthonormalize(v);

    std::vector<Vec> hv(block, Vec(n));
    MorseResult out;
    out.tol = tol;
    constexpr std::size_t kMaxIters = 2000;
    for (std::size_t it = 1; it <= kMaxIters; ++it) {
        std::vector<Vec> w(block, Vec(n));
        for (std::size_t i = 0; i < block; ++i) {
            w[i] = v[i];  // warm start; exact for an eigenvector up to scaling
            solve_spd(shifted, v[i], w[i], 1e-12);
        }
        orthonormalize(w);
        for (std::size_t i = 0; i < block; ++i) apply_h(w[i], hv[i]);

        Eigen::MatrixXd t(block, block);
        for (std::size_t i = 0; i < block; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double a = 0.5 * (kernels::dot(w[i], hv[j]) + kernels::dot(w[j], hv[i]));
                t(i, j) = a;
                t(j, i) = a;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
        const Eigen::VectorXd theta = eig.eigenvalues();
        const Eigen::MatrixXd q = eig.eigenvectors();

        std::vector<Vec> hv_new(block, Vec(n, 0.0));
        for (std::size_t i = 0; i < block; ++i) {
            std::fill(v[i].begin(), v[i].end(), 0.0);
            for (std::size_t j = 0; j < block; ++j) {
                kernels::active().axpy(q(j, i), w[j].data(), v[i].data(), n);
                kernels::active().axpy(q(j, i), hv[j].data(), hv_new[i].data(), n);
            }
        }

        bool done = true;
        for (std::size_t i = 0; i < num_eigs && done; ++i) {
            double r2 = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                const double r = hv_new[i][p] - theta(i) * v[i][p];
                r2 += r * r;
            }
            done = std::sqrt(r2) <= res_tol;
        }
        if (done) {
            out.iterations = it;
            for (std::size_t i = 0; i < num_eigs; ++i) out.eigenvalues.push_back(theta(i));
            for (double th : out.eigenvalues) {
                if (th < -tol) ++out.index;
                if (std::fabs(th) <= tol) out.degenerate = true;
            }
            return out;
        }
    }
    std::ostringstream os;
    os << "Morse index: subspace iteration did not converge in " << kMaxIters << " iterations";
    throw MorseError(os.str());
}

}  // namespace

MorseResult morse_analysis(const EnergyModel& model, const Field& u, std::size_t num_eigs,
                           double tol) {
    require_same_domain(model.spec(), u, "morse_index");
    if (num_eigs == 0) throw std::invalid_argument("morse_index needs num_eigs >= 1");
    if (!(tol > 0.0)) tol = 1e-6 * model.nl().scale();
    for (;;) {
        MorseResult r = subspace_iteration(model, u, num_eigs, tol);
        if (r.eigenvalues.back() >= -tol || num_eigs >= model.spec().size()) return r;
        num_eigs *= 2;
    }
}

int morse_index(const EnergyModel& model, const Field& u, std::size_t num_eigs, double tol) {
    return morse_analysis(model, u, num_eigs, tol).index;
}

}  // namespace semilin
