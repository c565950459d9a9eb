#ifndef PIBELL_BEC_DYNAMICS_HPP
#define PIBELL_BEC_DYNAMICS_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "symmetric_rep.hpp"
#include "witnesses.hpp"

namespace pibell::bec {

using sym::BasisPtr;
using sym::SymOperator;
using sym::SymState;

struct SpinMixParams {
    int n = 30;
    double c = -1.0;
    double g = 0.2;
    std::vector<double> times;
};

inline std::vector<double> uniform_times(double t_max = 10.0, int steps = 400) {
    if (steps < 1) throw InputError("uniform_times: need at least one time point");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InputError("uniform_times: t_max must be finite and >= 0");
    std::vector<double> t(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) t[static_cast<std::size_t>(k)] = steps == 1 ? 0.0 : t_max * k / (steps - 1);
    return t;
}

inline void validate(const SpinMixParams& p) {
    if (p.n < 2) throw InputError("SpinMixParams: n must be >= 2");
    if (!std::isfinite(p.c) || !std::isfinite(p.g)) throw InputError("SpinMixParams: c and g must be finite");
    for (std::size_t k = 0; k < p.times.size(); ++k) {
        if (!std::isfinite(p.times[k]) || p.times[k] < 0.0) throw InputError("SpinMixParams: times must be >= 0");
        if (k > 0 && p.times[k] < p.times[k - 1]) throw InputError("SpinMixParams: times must be sorted");
    }
}

// (c / 2n) S^2 + g Qzz
inline SymOperator spin1_hamiltonian(const SpinMixParams& p, const BasisPtr& basis) {
    validate(p);
    using su3::Axis;
    SymOperator s2 = SymOperator::zero(basis);
    for (Axis a : {Axis::x, Axis::y, Axis::z}) s2 += sym::collective_operator(su3::spin1(a), basis).squared();
    return s2 * (p.c / (2.0 * p.n)) + sym::collective_operator(su3::quadrupole(su3::Pair::zz), basis) * p.g;
}

inline SymOperator spin1_hamiltonian(const SpinMixParams& p) {
    return spin1_hamiltonian(p, sym::DickeBasis::make(p.n));
}

// All particles in the s_z = 0 level.
inline SymState polar_state(const BasisPtr& basis) {
    return SymState::basis_state(basis, {0, basis->n(), 0});
}

// exp(-i t H) through one dense eigendecomposition, reused for every t.
class Propagator {
public:
    explicit Propagator(const SymOperator& h) : basis_(h.basis_ptr()) {
        if (!h.is_hermitian()) throw InputError("Propagator: Hamiltonian is not Hermitian");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.dense());
        energies_ = es.eigenvalues();
        vectors_ = es.eigenvectors();
    }

    SymState evolve(const SymState& psi, double t) const {
        const Eigen::VectorXcd coef = vectors_.adjoint() * psi.amplitudes();
        return SymState(basis_, vectors_ * phases(t).cwiseProduct(coef));
    }

    const Eigen::VectorXd& energies() const { return energies_; }

private:
    Eigen::VectorXcd phases(double t) const {
        Eigen::VectorXcd ph(energies_.size());
        for (Eigen::Index k = 0; k < ph.size(); ++k) ph(k) = std::exp(-I_unit * (energies_(k) * t));
        return ph;
    }

    BasisPtr basis_;
    Eigen::VectorXd energies_;
    Eigen::MatrixXcd vectors_;
};

inline SymState evolve(const SymState& psi, const SymOperator& h, double t) { return Propagator(h).evolve(psi, t); }

struct PseudospinSample {
    WitnessData data;
    double r = 0.0;
    double lambda_min_c = 0.0;
    double n_psi = 0.0;
};

// Collective operators of the type-2 triad {Sx, 2 Qyz, Qzz - Qyy}.
class PseudospinObservables {
public:
    explicit PseudospinObservables(const BasisPtr& basis)
        : basis_(basis),
          sx_(sym::collective_operator(su3::spin1(su3::Axis::x), basis)),
          qyz_(sym::collective_operator(su3::quadrupole(su3::Pair::yz), basis)),
          sx2_(sx_.squared()),
          qyz2_(qyz_.squared()),
          cross_(sx_ * qyz_ + qyz_ * sx_),
          polarisation_(sym::collective_operator(su3::quadrupole(su3::Pair::zz) - su3::quadrupole(su3::Pair::yy), basis)),
          n_psi_(sym::collective_operator(n_psi_single(), basis)) {}

    // projector onto (|+1> - |-1>)/sqrt2, equal to (qzz + qyy - qxx)/2
    static Op3 n_psi_single() {
        using su3::Pair;
        return (su3::quadrupole(Pair::zz) + su3::quadrupole(Pair::yy) - su3::quadrupole(Pair::xx)) / 2.0;
    }

    PseudospinSample extract(const SymState& s) const {
        const double n = basis_->n();
        auto ev = [&](const SymOperator& o) { return o.expectation(s).real(); };
        const double c11 = ev(sx2_), c22 = 4.0 * ev(qyz2_), c12 = ev(cross_);
        // smaller eigenvalue of [[c11, c12], [c12, c22]]
        const double mean = 0.5 * (c11 + c22), half = 0.5 * (c11 - c22);
        const double lam = std::max(0.0, mean - std::hypot(half, c12));
        PseudospinSample out;
        out.r = ev(polarisation_);
        out.n_psi = ev(n_psi_);
        out.lambda_min_c = lam;
        const double inside = n - out.n_psi;
        if (!(inside > 1e-12 * n))
            throw DomainError("extract_pseudospin_data: pseudospin subspace is empty");
        out.data = {lam / inside, std::abs(out.r) / inside, inside / n, WitnessContext::pseudospin};
        return out;
    }

    Eigen::Matrix2d covariance(const SymState& s) const {
        Eigen::Matrix2d c;
        c(0, 0) = sx2_.expectation(s).real();
        c(1, 1) = 4.0 * qyz2_.expectation(s).real();
        c(0, 1) = c(1, 0) = cross_.expectation(s).real();
        return c;
    }

private:
    BasisPtr basis_;
    SymOperator sx_, qyz_, sx2_, qyz2_, cross_, polarisation_, n_psi_;
};

inline PseudospinSample extract_pseudospin_data(const SymState& s) {
    return PseudospinObservables(s.basis_ptr()).extract(s);
}

struct TrajectoryRecord {
    double t = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
    double r = 0.0;
    double lambda_min_c = 0.0;
    double xi_inv2 = 0.0;
    double theta_opt = 0.0;
    double bell_value = 0.0;      // min over theta of <B>/n
    double wineland_value = 0.0;
    bool closed_form_angle = false;
    double energy = 0.0;
    double norm = 1.0;
};

inline std::vector<TrajectoryRecord> run_trajectory(const SpinMixParams& p) {
    validate(p);
    const BasisPtr basis = sym::DickeBasis::make(p.n);
    const SymOperator h = spin1_hamiltonian(p, basis);
    const Propagator prop(h);
    const PseudospinObservables obs(basis);
    const SymState psi0 = polar_state(basis);

    std::vector<TrajectoryRecord> out(p.times.size());
    parallel_for(out.size(), [&](std::size_t k) {
        const SymState psi = prop.evolve(psi0, p.times[k]);
        const PseudospinSample s = obs.extract(psi);
        const witness::AngleMinimum best = witness::pseudospin_bell_minimum(s.data);
        TrajectoryRecord& r = out[k];
        r.t = p.times[k];
        r.x = s.data.x;
        r.y = s.data.y;
        r.z = s.data.z;
        r.r = s.r;
        r.lambda_min_c = s.lambda_min_c;
        r.xi_inv2 = witness::squeezing_parameter(s.r, s.lambda_min_c, p.n);
        r.theta_opt = best.theta;
        r.bell_value = best.value;
        r.closed_form_angle = best.stationary;
        r.wineland_value = witness::wineland_witness(s.data);
        r.energy = h.expectation(psi).real();
        r.norm = psi.norm();
    });
    return out;
}

// First time the series drops below -tol. The returned time is the zero
// crossing interpolated linearly inside the bracketing grid interval.
inline std::optional<double> first_violation_time(const std::vector<double>& t, const std::vector<double>& v,
                                                  double tol = 1e-9) {
    if (t.size() != v.size()) throw InputError("first_violation_time: size mismatch");
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(v[k] < -tol)) continue;
        if (k == 0) return t[0];
        const double a = v[k - 1], b = v[k];
        if (a <= 0.0) return t[k - 1];
        return t[k - 1] + (t[k] - t[k - 1]) * a / (a - b);
    }
    return std::nullopt;
}

}  // namespace pibell::bec

#endif
