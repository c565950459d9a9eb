#ifndef PIBELL_DIM_BOUNDS_HPP
#define PIBELL_DIM_BOUNDS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "local_term.hpp"
#include "nelder_mead.hpp"
#include "su3_algebra.hpp"

namespace pibell::dim {

// Minimum eigenvalue of the single-particle operator beta.
template <int Dim>
double local_beta(const BasicPovm<Dim>& m0, const BasicPovm<Dim>& m1) {
    require_povm(m0, "measurement 0");
    require_povm(m1, "measurement 1");
    if (m0.dim() != m1.dim()) throw InputError("local_beta: measurements act on different dimensions");
    return min_eigenvalue<Dim>(local_beta_operator<Dim>({m0, m1}));
}

template <int Dim>
double local_beta(const PovmPair<Dim>& p) {
    return local_beta(p[0], p[1]);
}

// Orthonormal (tr G_i G_j = 2 delta_ij) traceless Hermitian basis of size N^2 - 1.
inline std::vector<OpX> traceless_hermitian_basis(int N) {
    std::vector<OpX> g;
    const cplx i = I_unit;
    for (int j = 0; j < N; ++j)
        for (int k = j + 1; k < N; ++k) {
            OpX s = OpX::Zero(N, N), a = OpX::Zero(N, N);
            s(j, k) = s(k, j) = 1.0;
            a(j, k) = -i;
            a(k, j) = i;
            g.push_back(s);
            g.push_back(a);
        }
    for (int l = 1; l < N; ++l) {
        OpX m = OpX::Zero(N, N);
        for (int j = 0; j < l; ++j) m(j, j) = 1.0;
        m(l, l) = -static_cast<double>(l);
        g.push_back(m / std::sqrt(l * (l + 1) / 2.0));
    }
    return g;
}

// Three-outcome POVMs on C^d obtained by compressing a projective measurement
// on C^3 (x) C^d:  pi_a = P U (|a><a| (x) I_d) U^dag P,  U = exp(-i theta.G),
// with P the projector onto the first d coordinates.
class NaimarkParametrization {
public:
    explicit NaimarkParametrization(int d) : d_(d), N_(3 * d), gens_(traceless_hermitian_basis(3 * d)) {
        if (d < 1) throw InputError("NaimarkParametrization: d must be >= 1");
    }

    int d() const { return d_; }
    const std::vector<OpX>& generators() const { return gens_; }
    int params_per_measurement() const { return static_cast<int>(gens_.size()); }
    int param_count() const { return 2 * params_per_measurement(); }

    PovmX povm(const Eigen::Ref<const Eigen::VectorXd>& theta) const {
        // same as sum_k theta_k G_k, filled entrywise
        OpX h = OpX::Zero(N_, N_);
        Eigen::Index k = 0;
        for (int j = 0; j < N_; ++j)
            for (int l = j + 1; l < N_; ++l, k += 2) {
                h(j, l) = cplx(theta(k), -theta(k + 1));
                h(l, j) = std::conj(h(j, l));
            }
        for (int l = 1; l < N_; ++l, ++k) {
            const double w = theta(k) / std::sqrt(l * (l + 1) / 2.0);
            for (int j = 0; j < l; ++j) h(j, j) += w;
            h(l, l) -= l * w;
        }
        Eigen::SelfAdjointEigenSolver<OpX> es(h);
        const Eigen::VectorXcd phase = (-I_unit * es.eigenvalues().cast<cplx>()).array().exp();
        const OpX u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
        const auto top = u.topRows(d_);
        PovmX p;
        for (int a = 0; a < 3; ++a) {
            const auto block = top.middleCols(a * d_, d_);
            p[static_cast<std::size_t>(a)] = block * block.adjoint();
        }
        return p;
    }

    PovmPair<Eigen::Dynamic> povms(const Eigen::VectorXd& theta) const {
        const int k = params_per_measurement();
        return {povm(theta.head(k)), povm(theta.tail(k))};
    }

    // <0| beta |0>
    double objective(const Eigen::VectorXd& theta) const {
        return local_beta_operator<Eigen::Dynamic>(povms(theta))(0, 0).real();
    }

private:
    int d_, N_;
    std::vector<OpX> gens_;
};

// Clips negative eigenvalues and renormalises so the elements sum to I.
inline PovmX cleanup_povm(const PovmX& p) {
    const Eigen::Index d = p.dim();
    PovmX q;
    OpX sum = OpX::Zero(d, d);
    for (std::size_t a = 0; a < 3; ++a) {
        const OpX h = (p[a] + p[a].adjoint()) / 2.0;
        Eigen::SelfAdjointEigenSolver<OpX> es(h);
        const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        q[a] = es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
        sum += q[a];
    }
    Eigen::SelfAdjointEigenSolver<OpX> es(sum);
    const Eigen::VectorXd inv = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    const OpX s = es.eigenvectors() * inv.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    for (std::size_t a = 0; a < 3; ++a) {
        q[a] = s * q[a] * s;
        q[a] = (q[a] + q[a].adjoint()) / 2.0;
    }
    return q;
}

struct VariationalOptions {
    int runs_per_chain = 10;      // first run plus polishing reruns from the best point
    double polish_gain = 1e-10;   // stop polishing a chain once a rerun gains less
    NelderMeadOptions nm{};
};

struct VariationalResult {
    int d = 0;
    double bound = 0.0;
    PovmPair<Eigen::Dynamic> povms;
    int restarts_used = 0;  // simplex runs
    int chains = 0;         // random starting points
    std::vector<std::pair<int, double>> best_history;  // (run index, running best)
    double cleanup_delta = 0.0;  // objective change caused by cleanup
    std::uint64_t seed = 0;
    std::string generator_basis = "generalized Gell-Mann, tr(GiGj)=2dij";
    long evaluations = 0;
};

// Independent RNG stream per (seed, index).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t raw[2];
    seq.generate(raw, raw + 2);
    return (static_cast<std::uint64_t>(raw[0]) << 32) | raw[1];
}

// Multistart simplex search for beta_d. `restarts` is the total number of
// simplex runs; they are grouped into chains of options.runs_per_chain runs,
// each chain starting from a random point derived from (seed, chain index).
inline VariationalResult variational_bound(int d, int restarts, std::uint64_t seed,
                                           const VariationalOptions& opt = {}) {
    if (d != 2 && d != 3) throw InputError("variational_bound: d must be 2 or 3");
    if (restarts < 1) throw InputError("variational_bound: restarts must be >= 1");
    const NaimarkParametrization param(d);
    const int per = std::max(1, opt.runs_per_chain);
    const int chains = (restarts + per - 1) / per;

    struct Chain {
        Eigen::VectorXd x;
        double value = 0.0;
        std::vector<double> run_values;
        long evaluations = 0;
    };
    std::vector<Chain> out(static_cast<std::size_t>(chains));
    parallel_for(out.size(), [&](std::size_t c) {
        std::mt19937_64 rng(stream_seed(seed, c));
        std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
        Eigen::VectorXd x(param.param_count());
        for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = u(rng);
        const int runs = std::min(per, restarts - static_cast<int>(c) * per);
        auto f = [&](const Eigen::VectorXd& t) { return param.objective(t); };
        Chain& ch = out[c];
        double prev = f(x);
        for (int r = 0; r < runs; ++r) {
            NelderMeadResult res = nelder_mead(f, x, opt.nm);
            ch.evaluations += res.evaluations;
            const double gain = prev - res.value;
            if (res.value < prev) x = res.x, prev = res.value;
            ch.run_values.push_back(prev);
            if (r > 0 && gain < opt.polish_gain) break;
        }
        ch.x = x;
        ch.value = prev;
    });

    VariationalResult r;
    r.d = d;
    r.seed = seed;
    r.chains = chains;
    std::size_t best = 0;
    double running = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < out.size(); ++c) {
        r.evaluations += out[c].evaluations;
        for (double v : out[c].run_values) {
            running = std::min(running, v);
            r.best_history.emplace_back(r.restarts_used++, running);
        }
        if (out[c].value < out[best].value) best = c;
    }
    const auto raw = param.povms(out[best].x);
    r.povms = {cleanup_povm(raw[0]), cleanup_povm(raw[1])};
    const double before = out[best].value;
    r.bound = local_beta_operator<Eigen::Dynamic>(r.povms)(0, 0).real();
    r.cleanup_delta = r.bound - before;
    return r;
}

struct BetaInfinityCheck {
    double analytic = -0.5;
    double empirical_min = 0.0;
    std::size_t samples = 0;
    bool floor_holds = false;  // empirical >= -1/2 - 1e-9
    bool chain_holds = false;  // <beta> >= <A(A-1)+B(B-1)> >= f(<A>,<B>) for every sample
    double worst_chain_gap = 0.0;
};

inline double beta_infinity_f(double u, double v) { return u * (u - 1.0) + v * (v - 1.0); }

template <class Rng>
OpX haar_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> g;
    OpX z(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<OpX> qr(z);
    OpX q = qr.householderQ();
    const OpX r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
    return q;
}

// Random projective three-outcome measurement: rotated computational basis
// vectors grouped at random into outcomes.
template <class Rng>
PovmX random_projective_povm(int dim, Rng& rng) {
    const OpX u = haar_unitary(dim, rng);
    std::uniform_int_distribution<int> pick(0, 2);
    PovmX p;
    for (auto& e : p.elements) e = OpX::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const auto v = u.col(k);
        p[static_cast<std::size_t>(pick(rng))] += v * v.adjoint();
    }
    return p;
}

inline BetaInfinityCheck beta_infinity_check(std::size_t samples, std::uint64_t seed) {
    if (samples < 1) throw InputError("beta_infinity_check: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_dim(3, 6);
    std::normal_distribution<double> g;
    BetaInfinityCheck out;
    out.samples = samples;
    out.empirical_min = std::numeric_limits<double>::infinity();
    out.chain_holds = true;
    for (std::size_t s = 0; s < samples; ++s) {
        const int dim = pick_dim(rng);
        const PovmPair<Eigen::Dynamic> p{random_projective_povm(dim, rng), random_projective_povm(dim, rng)};
        Eigen::VectorXcd psi(dim);
        for (int k = 0; k < dim; ++k) psi(k) = cplx(g(rng), g(rng));
        psi.normalize();
        const OpX beta = local_beta_operator<Eigen::Dynamic>(p);
        const OpX A = element(p, 0, 0) + element(p, 1, 1);
        const OpX B = element(p, 0, 1) + element(p, 1, 0);
        const OpX id = OpX::Identity(dim, dim);
        auto ev = [&](const OpX& o) { return psi.dot(o * psi).real(); };
        const double b = ev(beta);
        const double mid = ev(A * (A - id) + B * (B - id));
        const double low = beta_infinity_f(ev(A), ev(B));
        out.empirical_min = std::min(out.empirical_min, b);
        const double gap = std::min(b - mid, mid - low);
        out.worst_chain_gap = s == 0 ? gap : std::min(out.worst_chain_gap, gap);
        if (gap < -1e-12) out.chain_holds = false;
    }
    out.floor_holds = out.empirical_min >= out.analytic - 1e-9;
    return out;
}

inline double hp_bound(int d, double n) {
    if (!(n >= 1.0)) throw InputError("hp_bound: n must be >= 1");
    if (d == 2) return -n / 4.0 + (std::sqrt(3.0 * n + 1.0) - 1.0) / 2.0;
    if (d == 3) return -n / 2.0 - 1.25 + std::sqrt(1.5 * n + 9.0 / 16.0) + std::sqrt(n / 2.0 + 0.25);
    throw InputError("hp_bound: d must be 2 or 3");
}

// Bound obeyed when fewer than n_prime parties exceed dimension d.
inline double dimension_threshold(int n, int n_prime, double beta_d, double beta_inf) {
    if (n < 1 || n_prime < 1 || n_prime > n)
        throw InputError("dimension_threshold: need 1 <= n_prime <= n");
    return (n + 1 - n_prime) * beta_d + (n_prime - 1) * beta_inf;
}

}  // namespace pibell::dim

#endif
