#ifndef PIBELL_LOCAL_TERM_HPP
#define PIBELL_LOCAL_TERM_HPP

#include "su3_algebra.hpp"

namespace pibell {

// Element pi_{a|x} of the pair (measurement x, outcome a).
template <int Dim>
const OpN<Dim>& element(const PovmPair<Dim>& p, int a, int x) {
    return p[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)];
}

// Single-particle operator
//   pi00 + pi11 - (pi00 - pi11)^2 + pi01 + pi10 - (pi01 - pi10)^2
// where pi_ax is outcome a of measurement x.
template <int Dim>
OpN<Dim> local_beta_operator(const PovmPair<Dim>& p) {
    const OpN<Dim> d1 = element(p, 0, 0) - element(p, 1, 1);
    const OpN<Dim> d2 = element(p, 0, 1) - element(p, 1, 0);
    return element(p, 0, 0) + element(p, 1, 1) - d1 * d1 + element(p, 0, 1) + element(p, 1, 0) - d2 * d2;
}

// The three single-particle operators (t0, t1, t2) whose collective versions
// give the Bell operator as T0 + T1^2 + T2^2.
template <int Dim>
struct TSet {
    OpN<Dim> t0, t1, t2;
};

template <int Dim>
TSet<Dim> t_set_from_povms(const PovmPair<Dim>& p) {
    return {local_beta_operator(p), element(p, 0, 0) - element(p, 1, 1), element(p, 0, 1) - element(p, 1, 0)};
}

// Closed-form t-sets. Their basis differs from the one used by
// su3::qubit_optimal_settings / qutrit_optimal_settings by a unitary, so the
// resulting Bell operators agree in spectrum rather than entrywise.
inline TSet<3> qubit_t_set() {
    using su3::unit;
    return {-0.25 * unit(0, 0) + 0.75 * unit(1, 1) + 2.0 * unit(2, 2),
            (su3::sqrt3 / 2.0) * (unit(0, 1) + unit(1, 0)), Op3::Zero()};
}

inline TSet<3> qutrit_t_set() {
    using su3::unit;
    return {-0.5 * unit(0, 0) + 1.0 * unit(1, 1) + 0.5 * unit(2, 2), unit(0, 1) + unit(1, 0),
            (unit(0, 2) + unit(2, 0)) / su3::sqrt2};
}

}  // namespace pibell

#endif
