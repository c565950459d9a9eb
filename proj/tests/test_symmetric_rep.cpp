#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <pibell/pibell.hpp>

#include "oracles.hpp"

using namespace pibell;
using namespace pibell::sym;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST_CASE("Dicke basis ordering and indexing") {
    const auto b = DickeBasis::make(3);
    CHECK(b->dim() == 10);
    CHECK(b->state(0) == PartitionIndex{3, 0, 0});
    CHECK(b->state(1) == PartitionIndex{2, 1, 0});
    CHECK(b->state(2) == PartitionIndex{2, 0, 1});
    CHECK(b->state(3) == PartitionIndex{1, 2, 0});
    CHECK(b->state(9) == PartitionIndex{0, 0, 3});
    for (int n : {1, 2, 7, 20}) {
        const DickeBasis basis(n);
        CHECK(basis.dim() == DickeBasis::dimension(n));
        CHECK(basis.dim() == (n + 1) * (n + 2) / 2);
        for (Eigen::Index k = 0; k < basis.dim(); ++k) CHECK(basis.index_of(basis.state(k)) == k);
    }
    CHECK_THROWS_AS(DickeBasis(0), InputError);
    CHECK_THROWS_AS(b->index_of({1, 1, 0}), InputError);
    CHECK_FALSE(b->contains({4, -1, 0}));
}

TEST_CASE("symmetriser columns are orthonormal") {
    for (int n = 1; n <= 4; ++n) {
        const auto b = DickeBasis::make(n);
        const Eigen::MatrixXcd v = oracle::symmetric_isometry(*b);
        CHECK(max_abs(v.adjoint() * v - Eigen::MatrixXcd::Identity(b->dim(), b->dim())) < 1e-12);
    }
}

TEST_CASE("collective operators match the full tensor-product space") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 5; ++n) {
        const auto b = DickeBasis::make(n);
        const Eigen::MatrixXcd v = oracle::symmetric_isometry(*b);
        for (int rep = 0; rep < 3; ++rep) {
            const Op3 o = oracle::random_hermitian(rng);
            const Eigen::MatrixXcd full = oracle::full_collective(o, n);
            const SymOperator sym = collective_operator(o, b);
            CHECK(max_abs(v.adjoint() * full * v - sym.dense()) < 1e-10);
            // the symmetric subspace is invariant
            CHECK(max_abs(full * v - v * sym.dense()) < 1e-10);
        }
        for (int a = 0; a < 8; ++a) {
            const Eigen::MatrixXcd full = oracle::full_collective(su3::gell_mann(a), n);
            CHECK(max_abs(v.adjoint() * full * v - collective_operator(su3::gell_mann(a), b).dense()) < 1e-10);
        }
    }
}

TEST_CASE("collective map is a Lie algebra homomorphism") {
    std::mt19937_64 rng(9);
    const auto b = DickeBasis::make(6);
    for (int rep = 0; rep < 5; ++rep) {
        const Op3 x = oracle::random_hermitian(rng), y = oracle::random_hermitian(rng);
        const SymOperator X = collective_operator(x, b), Y = collective_operator(y, b);
        const Eigen::MatrixXcd lhs = (X * Y - Y * X).dense();
        const Eigen::MatrixXcd rhs = collective_operator(su3::commutator(x, y), b).dense();
        CHECK(max_abs(lhs - rhs) < 1e-10);
    }
    // identity maps to n
    CHECK(max_abs(collective_operator(Op3::Identity(), b).dense() - 6.0 * Eigen::MatrixXcd::Identity(b->dim(), b->dim())) < 1e-14);
}

TEST_CASE("collective operator rejects wrong shapes") {
    const auto b = DickeBasis::make(2);
    CHECK_THROWS_AS(collective_operator(OpX::Identity(2, 2), b), InputError);
    CHECK_THROWS_AS(SymState(b, Vec::Zero(3)), InputError);
    CHECK_THROWS_AS(SymOperator(b, SparseOp(3, 3)), InputError);
}

TEST_CASE("symmetric Bell operator equals the full-space correlator sum") {
    std::mt19937_64 rng(13);
    for (int n = 2; n <= 5; ++n) {
        const auto b = DickeBasis::make(n);
        const Eigen::MatrixXcd v = oracle::symmetric_isometry(*b);
        std::vector<PovmPair<3>> settings{su3::qutrit_optimal_settings(), su3::qubit_optimal_settings(),
                                          su3::pseudospin_settings(0.4), su3::type1_settings(0.9)};
        settings.push_back({oracle::random_povm(rng), oracle::random_povm(rng)});
        for (const auto& p : settings) {
            const Eigen::MatrixXcd full = oracle::full_bell_operator(p, n);
            const SymOperator B = bell_operator_from_povms(p, b);
            CHECK(max_abs(v.adjoint() * full * v - B.dense()) < 1e-9);
            CHECK(max_abs(full * v - v * B.dense()) < 1e-9);
        }
    }
}

TEST_CASE("Bell operator reproduces Born-rule statistics of product states") {
    std::mt19937_64 rng(17);
    for (int n : {2, 3, 6, 11}) {
        const auto b = DickeBasis::make(n);
        for (int rep = 0; rep < 5; ++rep) {
            const PovmPair<3> p{oracle::random_povm(rng), oracle::random_povm(rng)};
            const Eigen::Vector3cd phi = oracle::random_qutrit(rng);
            const SymState psi(b, oracle::product_state_in_dicke(phi, *b));
            CHECK(psi.norm() == Catch::Approx(1.0).epsilon(1e-12));
            const double q = bell_operator_from_povms(p, b).expectation(psi).real();
            CHECK(q == Catch::Approx(oracle::born_rule_bell_value(p, phi, n)).epsilon(1e-10).margin(1e-10));
        }
    }
}

TEST_CASE("closed-form t-sets give the same spectra as the POVM settings") {
    for (int n : {2, 5, 12}) {
        const auto b = DickeBasis::make(n);
        const Eigen::VectorXd a = oracle::sorted_eigenvalues(bell_operator_from_t(qutrit_t_set(), b).dense());
        const Eigen::VectorXd c =
            oracle::sorted_eigenvalues(bell_operator_from_povms(su3::qutrit_optimal_settings(), b).dense());
        CHECK((a - c).cwiseAbs().maxCoeff() < 1e-9);
        const Eigen::VectorXd d = oracle::sorted_eigenvalues(bell_operator_from_t(qubit_t_set(), b).dense());
        const Eigen::VectorXd e =
            oracle::sorted_eigenvalues(bell_operator_from_povms(su3::qubit_optimal_settings(), b).dense());
        CHECK((d - e).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("t-set from POVMs matches the operator built from POVMs") {
    std::mt19937_64 rng(19);
    const auto b = DickeBasis::make(4);
    const PovmPair<3> p{oracle::random_povm(rng), oracle::random_povm(rng)};
    const auto t = t_set_from_povms(p);
    CHECK(max_abs(bell_operator_from_t(t, b).dense() - bell_operator_from_povms(p, b).dense()) < 1e-12);
    CHECK_THROWS_AS(bell_operator_from_t(Op3(su3::unit(0, 1)), t.t1, t.t2, b), InputError);
    Povm bad = p[0];
    bad[0] *= 3.0;
    CHECK_THROWS_AS(bell_operator_from_povms(bad, p[1], b), InputError);
}

TEST_CASE("projective local term reduces to anticommutators") {
    const auto p = su3::qutrit_optimal_settings();
    const Op3 beta = local_beta_operator<3>(p);
    const Op3 a = p[0][0] + p[1][1];
    const Op3 bb = p[0][1] + p[1][0];
    const Op3 expect = a - (p[0][0] - p[1][1]) * (p[0][0] - p[1][1]) + bb - (p[0][1] - p[1][0]) * (p[0][1] - p[1][0]);
    CHECK(max_abs(beta - expect) < 1e-15);
    // projectors: (P - Q)^2 = P + Q - {P, Q}
    const Op3 anti = su3::anticommutator(p[0][0], p[1][1]) + su3::anticommutator(p[0][1], p[1][0]);
    CHECK(max_abs(beta - anti) < 1e-14);
}

TEST_CASE("lowest eigenpair of simple operators") {
    const auto b = DickeBasis::make(4);
    const EigenPair e = min_eigenpair(SymOperator::identity(b));
    CHECK(e.value == Catch::Approx(1.0));
    CHECK(e.state.norm() == Catch::Approx(1.0));
    const SymOperator sz = collective_operator(su3::spin1(su3::Axis::z), b);
    const EigenPair m = min_eigenpair(sz);
    CHECK(m.value == Catch::Approx(-4.0));
    CHECK(std::abs(m.state.amplitudes()(b->index_of({0, 0, 4}))) == Catch::Approx(1.0));
    const SymOperator nh(b, SparseOp(collective_operator(su3::unit(0, 1), b).matrix()));
    CHECK_THROWS_AS(min_eigenpair(nh), InputError);
}

TEST_CASE("Lanczos agrees with the dense solver") {
    for (int n : {12, 25}) {
        const auto b = DickeBasis::make(n);
        const SymOperator B = bell_operator_from_t(qutrit_t_set(), b);
        EigenOptions dense_opt;
        dense_opt.dense_limit = 100000;
        EigenOptions lanczos_opt;
        lanczos_opt.dense_limit = 0;
        const EigenPair d = min_eigenpair(B, dense_opt);
        const EigenPair l = min_eigenpair(B, lanczos_opt);
        CHECK(d.dense);
        CHECK_FALSE(l.dense);
        CHECK(l.value == Catch::Approx(d.value).epsilon(1e-10).margin(1e-9));
        CHECK(l.residual <= 1e-9 * B.norm_bound());
        CHECK(std::abs(d.state.amplitudes().dot(l.state.amplitudes())) == Catch::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("Bell operators are bounded below by the HP estimate trend") {
    // ground energy per particle decreases with n for the qutrit settings
    double prev = 1e9;
    for (int n : {10, 20, 40}) {
        const double v = min_eigenvalue(bell_operator_from_t(qutrit_t_set(), DickeBasis::make(n))) / n;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("overlaps and Gaussian ansatz") {
    const auto b = DickeBasis::make(9);
    const SymState g = gaussian_ansatz(b, 2.0);
    CHECK(g.norm() == Catch::Approx(1.0));
    const auto ov = dicke_overlaps(g);
    CHECK(ov.size() == static_cast<std::size_t>(b->dim()));
    double total = 0.0;
    for (const auto& o : ov) total += o.magnitude * o.magnitude;
    CHECK(total == Catch::Approx(1.0));
    // ansatz is invariant under any relabelling of the three levels when n divisible by 3
    for (Eigen::Index k = 0; k < b->dim(); ++k) {
        const PartitionIndex mu = b->state(k);
        const double a = g.amplitudes()(k).real();
        CHECK(a == Catch::Approx(g.amplitudes()(b->index_of({mu.mu1, mu.mu0, mu.mu2})).real()));
        CHECK(a == Catch::Approx(g.amplitudes()(b->index_of({mu.mu2, mu.mu1, mu.mu0})).real()));
    }
    const AnsatzFit fit = fit_gaussian_ansatz(g);
    CHECK(fit.s == Catch::Approx(2.0).epsilon(1e-4));
    CHECK(fit.fidelity == Catch::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(gaussian_ansatz(b, 0.0), InputError);
    CHECK_THROWS_AS(dicke_overlaps(SymState(b, Vec::Ones(b->dim()))), InputError);
}

TEST_CASE("type-1 observables agree with the full space") {
    std::mt19937_64 rng(23);
    const int n = 4;
    const auto b = DickeBasis::make(n);
    const Eigen::MatrixXcd v = oracle::symmetric_isometry(*b);
    Vec amp(b->dim());
    std::normal_distribution<double> g;
    for (Eigen::Index k = 0; k < amp.size(); ++k) amp(k) = cplx(g(rng), g(rng));
    const SymState s = SymState(b, amp).normalized();
    const Eigen::VectorXcd full_state = v * s.amplitudes();
    using su3::Pair;
    const Eigen::MatrixXcd sx = oracle::full_collective(su3::spin1(su3::Axis::x), n);
    const Eigen::MatrixXcd qxy = oracle::full_collective(su3::quadrupole(Pair::xy), n);
    const Eigen::MatrixXcd y_full = 3.0 * oracle::full_collective(su3::quadrupole(Pair::zz), n) +
                                    oracle::full_collective(su3::quadrupole(Pair::xx), n) - 8.0 * qxy * qxy -
                                    2.0 * n * Eigen::MatrixXcd::Identity(v.rows(), v.rows());
    auto ev = [&](const Eigen::MatrixXcd& m) { return full_state.dot(m * full_state).real() / n; };
    const WitnessData d = extract_type1_data(s);
    CHECK(d.context == WitnessContext::type1);
    CHECK(d.x == Catch::Approx(ev(sx * sx)).margin(1e-10));
    CHECK(d.y == Catch::Approx(ev(y_full)).margin(1e-10));
    CHECK(d.z == Catch::Approx(ev(oracle::full_collective(su3::quadrupole(Pair::yy), n))).margin(1e-10));
}
