#ifndef PIBELL_EIGENSOLVER_HPP
#define PIBELL_EIGENSOLVER_HPP

#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "common.hpp"

namespace pibell {

struct EigenOptions {
    // Matrices up to this dimension go to the dense solver.
    Eigen::Index dense_limit = 400;
    // Convergence: ||A v - lambda v|| <= tol * ||A||.
    double tol = 1e-11;
    int krylov_dim = 120;
    int max_restarts = 400;
};

struct LowestEigen {
    double value = 0.0;
    Eigen::VectorXcd vector;
    double residual = 0.0;
    bool dense = false;
    bool converged = false;
    int restarts = 0;
};

namespace detail {

inline double column_norm_bound(const Eigen::SparseMatrix<cplx>& a) {
    double best = 0.0;
    for (int k = 0; k < a.outerSize(); ++k) {
        double s = 0.0;
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(a, k); it; ++it) s += std::abs(it.value());
        best = std::max(best, s);
    }
    return best;
}

// Fixes the global phase so the largest-magnitude entry is real positive.
inline void fix_phase(Eigen::VectorXcd& v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (std::abs(v(k)) > 0) v *= std::conj(v(k)) / std::abs(v(k));
}

}  // namespace detail

inline LowestEigen dense_lowest(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    LowestEigen r;
    r.value = es.eigenvalues()(0);
    r.vector = es.eigenvectors().col(0);
    detail::fix_phase(r.vector);
    r.residual = (a * r.vector - r.value * r.vector).norm();
    r.dense = true;
    r.converged = true;
    return r;
}

// Restarted Lanczos with full reorthogonalisation. Each cycle builds a Krylov
// space from the current Ritz vector plus the previous search direction.
inline LowestEigen lanczos_lowest(const Eigen::SparseMatrix<cplx>& a, const EigenOptions& opt) {
    const Eigen::Index n = a.rows();
    const double scale = std::max(detail::column_norm_bound(a), 1e-300);
    const int m = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, n));

    // deterministic start vector with support everywhere
    Eigen::VectorXcd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = cplx(1.0 + 0.37 * std::sin(1.3 * static_cast<double>(i) + 0.5), 0.0);
    x.normalize();

    LowestEigen r;
    Eigen::MatrixXcd V(n, m);
    for (int cycle = 0; cycle <= opt.max_restarts; ++cycle) {
        Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
        V.col(0) = x;
        int used = m;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXcd w = a * V.col(j);
            alpha(j) = V.col(j).dot(w).real();
            for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
            if (j + 1 == m) break;
            beta(j) = w.norm();
            if (beta(j) <= 1e-13 * scale) {
                used = j + 1;
                break;
            }
            V.col(j + 1) = w / beta(j);
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(alpha.head(used), beta.head(std::max(used - 1, 0)));
        r.value = tri.eigenvalues()(0);
        x = V.leftCols(used) * tri.eigenvectors().col(0).cast<cplx>();
        x.normalize();
        r.residual = (a * x - r.value * x).norm();
        r.restarts = cycle;
        if (r.residual <= opt.tol * scale) {
            r.converged = true;
            break;
        }
    }
    detail::fix_phase(x);
    r.vector = x;
    return r;
}

inline LowestEigen lowest_eigenpair(const Eigen::SparseMatrix<cplx>& a, const EigenOptions& opt = {}) {
    if (a.rows() != a.cols()) throw InputError("lowest_eigenpair: matrix is not square");
    if (a.rows() <= opt.dense_limit) return dense_lowest(Eigen::MatrixXcd(a));
    LowestEigen r = lanczos_lowest(a, opt);
    if (!r.converged)
        throw std::runtime_error("Lanczos did not converge: residual " + std::to_string(r.residual));
    return r;
}

}  // namespace pibell

#endif
