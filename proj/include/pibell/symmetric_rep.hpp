#ifndef PIBELL_SYMMETRIC_REP_HPP
#define PIBELL_SYMMETRIC_REP_HPP

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "eigensolver.hpp"
#include "local_term.hpp"
#include "su3_algebra.hpp"
#include "witness_data.hpp"

namespace pibell::sym {

struct PartitionIndex {
    int mu0 = 0, mu1 = 0, mu2 = 0;

    int operator[](int level) const { return level == 0 ? mu0 : (level == 1 ? mu1 : mu2); }
    int n() const { return mu0 + mu1 + mu2; }
    auto operator<=>(const PartitionIndex&) const = default;
};

// Qutrit Dicke basis, ordered lexicographically descending in (mu0, mu1):
// (n,0,0), (n-1,1,0), (n-1,0,1), (n-2,2,0), ...
class DickeBasis {
public:
    explicit DickeBasis(int n) : n_(n) {
        if (n < 1) throw InputError("DickeBasis: n must be >= 1, got " + std::to_string(n));
        states_.reserve(static_cast<std::size_t>(dimension(n)));
        for (int k = 0; k <= n; ++k)
            for (int mu1 = k; mu1 >= 0; --mu1) states_.push_back({n - k, mu1, k - mu1});
    }

    static std::shared_ptr<const DickeBasis> make(int n) { return std::make_shared<const DickeBasis>(n); }
    static Eigen::Index dimension(int n) { return static_cast<Eigen::Index>(n + 1) * (n + 2) / 2; }

    int n() const { return n_; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(states_.size()); }
    const PartitionIndex& state(Eigen::Index i) const { return states_.at(static_cast<std::size_t>(i)); }
    const std::vector<PartitionIndex>& states() const { return states_; }

    bool contains(const PartitionIndex& p) const {
        return p.mu0 >= 0 && p.mu1 >= 0 && p.mu2 >= 0 && p.n() == n_;
    }

    Eigen::Index index_of(const PartitionIndex& p) const {
        if (!contains(p)) throw InputError("DickeBasis: partition does not sum to n");
        const Eigen::Index k = n_ - p.mu0;
        return k * (k + 1) / 2 + (k - p.mu1);
    }

private:
    int n_;
    std::vector<PartitionIndex> states_;
};

using BasisPtr = std::shared_ptr<const DickeBasis>;
using SparseOp = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

class SymState {
public:
    SymState(BasisPtr basis, Vec amplitudes) : basis_(std::move(basis)), amp_(std::move(amplitudes)) {
        if (amp_.size() != basis_->dim()) throw InputError("SymState: amplitude length does not match basis");
    }

    static SymState basis_state(BasisPtr basis, const PartitionIndex& p) {
        Vec v = Vec::Zero(basis->dim());
        v(basis->index_of(p)) = 1.0;
        return SymState(std::move(basis), std::move(v));
    }

    const DickeBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const Vec& amplitudes() const { return amp_; }
    double norm() const { return amp_.norm(); }
    SymState normalized() const { return SymState(basis_, amp_ / amp_.norm()); }

private:
    BasisPtr basis_;
    Vec amp_;
};

// Permutation-invariant operator restricted to the symmetric subspace.
class SymOperator {
public:
    SymOperator(BasisPtr basis, SparseOp m) : basis_(std::move(basis)), m_(std::move(m)) {
        if (m_.rows() != basis_->dim() || m_.cols() != basis_->dim())
            throw InputError("SymOperator: matrix shape does not match basis");
        m_.makeCompressed();
    }

    static SymOperator zero(BasisPtr basis) {
        const auto d = basis->dim();
        return SymOperator(std::move(basis), SparseOp(d, d));
    }
    static SymOperator identity(BasisPtr basis) {
        const auto d = basis->dim();
        SparseOp m(d, d);
        m.setIdentity();
        return SymOperator(std::move(basis), std::move(m));
    }

    const DickeBasis& basis() const { return *basis_; }
    const BasisPtr& basis_ptr() const { return basis_; }
    const SparseOp& matrix() const { return m_; }
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(m_); }
    Eigen::Index dim() const { return m_.rows(); }

    Vec apply(const Vec& v) const { return m_ * v; }

    cplx expectation(const SymState& s) const {
        same_basis(s.basis_ptr());
        return s.amplitudes().dot(m_ * s.amplitudes());
    }

    SymOperator adjoint() const { return SymOperator(basis_, SparseOp(m_.adjoint())); }

    bool is_hermitian(double tol = 1e-10) const {
        SparseOp diff = m_ - SparseOp(m_.adjoint());
        for (int k = 0; k < diff.outerSize(); ++k)
            for (SparseOp::InnerIterator it(diff, k); it; ++it)
                if (std::abs(it.value()) > tol) return false;
        return true;
    }

    // max column sum of |entries|; bounds the spectral norm from above
    double norm_bound() const {
        double best = 0.0;
        for (int k = 0; k < m_.outerSize(); ++k) {
            double s = 0.0;
            for (SparseOp::InnerIterator it(m_, k); it; ++it) s += std::abs(it.value());
            best = std::max(best, s);
        }
        return best;
    }

    SymOperator operator+(const SymOperator& o) const { return {basis_, combine(o, m_ + o.m_)}; }
    SymOperator operator-(const SymOperator& o) const { return {basis_, combine(o, m_ - o.m_)}; }
    SymOperator operator*(const SymOperator& o) const { return {basis_, combine(o, (m_ * o.m_).pruned())}; }
    SymOperator operator*(cplx a) const { return {basis_, SparseOp(m_ * a)}; }
    SymOperator operator*(double a) const { return {basis_, SparseOp(m_ * cplx(a))}; }
    friend SymOperator operator*(double a, const SymOperator& o) { return o * a; }
    friend SymOperator operator*(cplx a, const SymOperator& o) { return o * a; }
    SymOperator& operator+=(const SymOperator& o) { return *this = *this + o; }
    SymOperator squared() const { return *this * *this; }

private:
    void same_basis(const BasisPtr& other) const {
        if (other->n() != basis_->n()) throw InputError("SymOperator: operands live on different bases");
    }
    SparseOp combine(const SymOperator& o, SparseOp r) const {
        same_basis(o.basis_);
        return r;
    }

    BasisPtr basis_;
    SparseOp m_;
};

// Sum over particles of o(i), restricted to the symmetric subspace.
inline SymOperator collective_operator(const Eigen::Ref<const OpX>& o, const BasisPtr& basis) {
    if (o.rows() != 3 || o.cols() != 3) throw InputError("collective_operator: single-particle operator must be 3x3");
    const DickeBasis& b = *basis;
    std::vector<Eigen::Triplet<cplx>> trips;
    trips.reserve(static_cast<std::size_t>(b.dim()) * 9);
    for (Eigen::Index col = 0; col < b.dim(); ++col) {
        const PartitionIndex mu = b.state(col);
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
                const cplx w = o(a, c);
                if (w == cplx(0.0) || mu[c] == 0) continue;
                if (a == c) {
                    trips.emplace_back(col, col, w * static_cast<double>(mu[a]));
                    continue;
                }
                std::array<int, 3> nu{mu.mu0, mu.mu1, mu.mu2};
                nu[static_cast<std::size_t>(a)] += 1;
                nu[static_cast<std::size_t>(c)] -= 1;
                const Eigen::Index row = b.index_of({nu[0], nu[1], nu[2]});
                trips.emplace_back(row, col, w * std::sqrt(static_cast<double>(mu[c]) * (mu[a] + 1)));
            }
    }
    SparseOp m(b.dim(), b.dim());
    m.setFromTriplets(trips.begin(), trips.end());
    return SymOperator(basis, std::move(m));
}

// T0 + T1^2 + T2^2 with T_a the collective version of t_a.
inline SymOperator bell_operator_from_t(const Op3& t0, const Op3& t1, const Op3& t2, const BasisPtr& basis) {
    for (const Op3* t : {&t0, &t1, &t2})
        if (!is_hermitian(*t, 1e-10)) throw InputError("bell_operator_from_t: t operators must be Hermitian");
    const SymOperator T1 = collective_operator(t1, basis);
    const SymOperator T2 = collective_operator(t2, basis);
    return collective_operator(t0, basis) + T1.squared() + T2.squared();
}

inline SymOperator bell_operator_from_t(const TSet<3>& t, const BasisPtr& basis) {
    return bell_operator_from_t(t.t0, t.t1, t.t2, basis);
}

// (P00 - P11)^2 + (P01 - P10)^2 + sum_i beta(i)
inline SymOperator bell_operator_from_povms(const Povm& m0, const Povm& m1, const BasisPtr& basis) {
    require_povm(m0, "measurement 0");
    require_povm(m1, "measurement 1");
    return bell_operator_from_t(t_set_from_povms<3>({m0, m1}), basis);
}

inline SymOperator bell_operator_from_povms(const PovmPair<3>& p, const BasisPtr& basis) {
    return bell_operator_from_povms(p[0], p[1], basis);
}

struct EigenPair {
    double value = 0.0;
    SymState state;
    double residual = 0.0;
    bool dense = false;
};

inline EigenPair min_eigenpair(const SymOperator& op, const EigenOptions& opt = {}) {
    if (!op.is_hermitian()) throw InputError("min_eigenpair: operator is not Hermitian");
    LowestEigen r = lowest_eigenpair(op.matrix(), opt);
    return {r.value, SymState(op.basis_ptr(), std::move(r.vector)), r.residual, r.dense};
}

inline double min_eigenvalue(const SymOperator& op, const EigenOptions& opt = {}) {
    return min_eigenpair(op, opt).value;
}

struct Overlap {
    PartitionIndex mu;
    double magnitude = 0.0;
};

inline std::vector<Overlap> dicke_overlaps(const SymState& s) {
    if (std::abs(s.norm() - 1.0) > 1e-8) throw InputError("dicke_overlaps: state is not normalised");
    std::vector<Overlap> out;
    out.reserve(static_cast<std::size_t>(s.basis().dim()));
    for (Eigen::Index i = 0; i < s.basis().dim(); ++i) out.push_back({s.basis().state(i), std::abs(s.amplitudes()(i))});
    return out;
}

// Real Gaussian in (mu0 - n/3, mu1 - n/3) with inverse covariance
// (1/s) [[1, 1/2], [1/2, 1]].
inline SymState gaussian_ansatz(const BasisPtr& basis, double s) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InputError("gaussian_ansatz: width must be positive and finite");
    const double c = basis->n() / 3.0;
    std::vector<double> e(static_cast<std::size_t>(basis->dim()));
    double top = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < basis->dim(); ++i) {
        const auto& mu = basis->state(i);
        const double d0 = mu.mu0 - c, d1 = mu.mu1 - c;
        e[static_cast<std::size_t>(i)] = -(d0 * d0 + d0 * d1 + d1 * d1) / (2.0 * s);
        top = std::max(top, e[static_cast<std::size_t>(i)]);
    }
    Vec v(basis->dim());
    for (Eigen::Index i = 0; i < basis->dim(); ++i) v(i) = std::exp(e[static_cast<std::size_t>(i)] - top);
    return SymState(basis, v / v.norm());
}

inline SymState gaussian_ansatz(int n, double s) { return gaussian_ansatz(DickeBasis::make(n), s); }

struct AnsatzFit {
    double s = 0.0;
    double fidelity = 0.0;
};

inline double fidelity(const SymState& a, const SymState& b) {
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

// Best width on a log grid, then golden-section refinement.
inline AnsatzFit fit_gaussian_ansatz(const SymState& target, double s_lo = 0.05, double s_hi = 50.0, int grid = 200) {
    auto f = [&](double s) { return fidelity(gaussian_ansatz(target.basis_ptr(), s), target); };
    AnsatzFit best{s_lo, -1.0};
    const double ratio = std::pow(s_hi / s_lo, 1.0 / (grid - 1));
    double s = s_lo;
    for (int k = 0; k < grid; ++k, s *= ratio) {
        const double v = f(s);
        if (v > best.fidelity) best = {s, v};
    }
    double lo = best.s / ratio, hi = best.s * ratio;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 60; ++it) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        if (f(a) > f(b)) hi = b;
        else lo = a;
    }
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (v > best.fidelity) best = {mid, v};
    return best;
}

// Collective operators used by the type-1 witness, built once per basis.
struct Type1Observables {
    SymOperator sx2, y_op, qyy;

    explicit Type1Observables(const BasisPtr& basis)
        : sx2(collective_operator(su3::spin1(su3::Axis::x), basis).squared()),
          y_op(make_y(basis)),
          qyy(collective_operator(su3::quadrupole(su3::Pair::yy), basis)) {}

    // 3 Qzz + Qxx - 8 Qxy^2 - 2n
    static SymOperator make_y(const BasisPtr& basis) {
        using su3::Pair;
        const SymOperator qxy = collective_operator(su3::quadrupole(Pair::xy), basis);
        return collective_operator(3.0 * su3::quadrupole(Pair::zz) + su3::quadrupole(Pair::xx), basis) -
               8.0 * qxy.squared() - SymOperator::identity(basis) * (2.0 * basis->n());
    }

    WitnessData extract(const SymState& s) const {
        const double n = s.basis().n();
        return {sx2.expectation(s).real() / n, y_op.expectation(s).real() / n, qyy.expectation(s).real() / n,
                WitnessContext::type1};
    }
};

inline WitnessData extract_type1_data(const SymState& s) { return Type1Observables(s.basis_ptr()).extract(s); }

}  // namespace pibell::sym

#endif
