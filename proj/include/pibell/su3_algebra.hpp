#ifndef PIBELL_SU3_ALGEBRA_HPP
#define PIBELL_SU3_ALGEBRA_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "common.hpp"

namespace pibell {

template <int Dim>
using OpN = Eigen::Matrix<cplx, Dim, Dim>;
using Op3 = OpN<3>;
using OpX = OpN<Eigen::Dynamic>;

// Three-outcome measurement on a Dim-level system.
template <int Dim>
struct BasicPovm {
    std::array<OpN<Dim>, 3> elements;

    const OpN<Dim>& operator[](std::size_t a) const { return elements[a]; }
    OpN<Dim>& operator[](std::size_t a) { return elements[a]; }
    Eigen::Index dim() const { return elements[0].rows(); }
};

using Povm = BasicPovm<3>;
using PovmX = BasicPovm<Eigen::Dynamic>;

template <int Dim>
using PovmPair = std::array<BasicPovm<Dim>, 2>;

template <int Dim>
double min_eigenvalue(const OpN<Dim>& op) {
    Eigen::SelfAdjointEigenSolver<OpN<Dim>> es(op, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Empty string when p is a valid POVM, otherwise the first violation found.
template <int Dim>
std::string povm_violation(const BasicPovm<Dim>& p, double tol = 1e-10) {
    const Eigen::Index d = p.dim();
    OpN<Dim> sum = OpN<Dim>::Zero(d, d);
    for (std::size_t a = 0; a < 3; ++a) {
        const auto& e = p[a];
        if (e.rows() != d || e.cols() != d) return "element " + std::to_string(a) + " has wrong shape";
        if (!is_hermitian(e, tol)) return "element " + std::to_string(a) + " is not Hermitian";
        if (min_eigenvalue<Dim>(e) < -tol) return "element " + std::to_string(a) + " is not positive semidefinite";
        sum += e;
    }
    if ((sum - OpN<Dim>::Identity(d, d)).cwiseAbs().maxCoeff() > tol) return "elements do not sum to identity";
    return {};
}

template <int Dim>
bool is_valid_povm(const BasicPovm<Dim>& p, double tol = 1e-10) {
    return povm_violation(p, tol).empty();
}

template <int Dim>
void require_povm(const BasicPovm<Dim>& p, const char* name = "povm") {
    std::string why = povm_violation(p);
    if (!why.empty()) throw InputError(std::string(name) + ": " + why);
}

template <int Dim>
OpN<Dim> projector(const Eigen::Matrix<cplx, Dim, 1>& v) {
    return v * v.adjoint() / v.squaredNorm();
}

namespace su3 {

inline constexpr double sqrt2 = std::numbers::sqrt2;
inline constexpr double sqrt3 = std::numbers::sqrt3;

// |a><b|
inline Op3 unit(int a, int b) {
    Op3 m = Op3::Zero();
    m(a, b) = 1.0;
    return m;
}

inline Op3 gell_mann(int index) {
    const cplx i = I_unit;
    switch (index) {
        case 0: return unit(0, 1) + unit(1, 0);
        case 1: return -i * unit(0, 1) + i * unit(1, 0);
        case 2: return unit(0, 0) - unit(1, 1);
        case 3: return unit(0, 2) + unit(2, 0);
        case 4: return -i * unit(0, 2) + i * unit(2, 0);
        case 5: return unit(1, 2) + unit(2, 1);
        case 6: return -i * unit(1, 2) + i * unit(2, 1);
        case 7: return (unit(0, 0) + unit(1, 1) - 2.0 * unit(2, 2)) / sqrt3;
        default: throw InputError("gell_mann: index must be in 0..7, got " + std::to_string(index));
    }
}

enum class Axis { x, y, z };
enum class Pair { yz, xz, xy, xx, yy, zz };

inline Axis parse_axis(std::string_view s) {
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    throw InputError("unknown spin axis '" + std::string(s) + "'");
}

inline Pair parse_pair(std::string_view s) {
    if (s == "yz") return Pair::yz;
    if (s == "xz") return Pair::xz;
    if (s == "xy") return Pair::xy;
    if (s == "xx") return Pair::xx;
    if (s == "yy") return Pair::yy;
    if (s == "zz") return Pair::zz;
    throw InputError("unknown quadrupole pair '" + std::string(s) + "'");
}

// Basis order |m=+1>, |m=0>, |m=-1>.
inline Op3 spin1(Axis axis) {
    const cplx i = I_unit;
    Op3 m;
    switch (axis) {
        case Axis::x:
            m << 0, 1, 0,
                 1, 0, 1,
                 0, 1, 0;
            return m / sqrt2;
        case Axis::y:
            m << 0, -1, 0,
                 1, 0, -1,
                 0, 1, 0;
            return m * i / sqrt2;
        case Axis::z:
            return unit(0, 0) - unit(2, 2);
    }
    throw InputError("spin1: bad axis");
}

inline Op3 quadrupole(Pair pair) {
    const cplx i = I_unit;
    Op3 m;
    switch (pair) {
        case Pair::yz:
            m << 0, -i, 0,
                 i, 0, i,
                 0, -i, 0;
            return m / (2.0 * sqrt2);
        case Pair::xz:
            m << 0, 1, 0,
                 1, 0, -1,
                 0, -1, 0;
            return m / (2.0 * sqrt2);
        case Pair::xy:
            m << 0, 0, -i,
                 0, 0, 0,
                 i, 0, 0;
            return m / 2.0;
        case Pair::xx:
            m << 1, 0, 1,
                 0, 2, 0,
                 1, 0, 1;
            return m / 2.0;
        case Pair::yy:
            m << 1, 0, -1,
                 0, 2, 0,
                 -1, 0, 1;
            return m / 2.0;
        case Pair::zz:
            return unit(0, 0) + unit(2, 2);
    }
    throw InputError("quadrupole: bad pair");
}

inline Op3 commutator(const Op3& a, const Op3& b) { return a * b - b * a; }
inline Op3 anticommutator(const Op3& a, const Op3& b) { return a * b + b * a; }

// Measurement 0 uses outcomes (+, o, -), measurement 1 uses (o, -, +),
// with m0,1 = cos(theta) l0 +- sin(theta) l1 acting on levels {0,1}.
inline PovmPair<3> pseudospin_settings(double theta) {
    const Op3 p01 = unit(0, 0) + unit(1, 1);
    const Op3 p2 = unit(2, 2);
    const double c = std::cos(theta), s = std::sin(theta);
    const Op3 m0 = c * gell_mann(0) + s * gell_mann(1);
    const Op3 m1 = c * gell_mann(0) - s * gell_mann(1);
    Povm a{{(p01 + m0) / 2.0, p2, (p01 - m0) / 2.0}};
    Povm b{{p2, (p01 - m1) / 2.0, (p01 + m1) / 2.0}};
    return {a, b};
}

inline Povm type1_povm(const Op3& m) {
    const Op3 m2 = m * m;
    return Povm{{(m2 + m) / 2.0, (m2 - m) / 2.0, Op3::Identity() - m2}};
}

// Both settings in the s_x, s_y plane at angles +-theta from s_x.
inline PovmPair<3> type1_settings(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Op3 sx = spin1(Axis::x), sy = spin1(Axis::y);
    return {type1_povm(c * sx + s * sy), type1_povm(c * sx - s * sy)};
}

inline Povm computational_povm() {
    return Povm{{unit(0, 0), unit(1, 1), unit(2, 2)}};
}

inline PovmPair<3> qutrit_optimal_settings() {
    using V = Eigen::Vector3cd;
    const V v0(0.5, 0.5, 1.0 / sqrt2);
    const V v1(0.5, 0.5, -1.0 / sqrt2);
    const V v2(1.0 / sqrt2, -1.0 / sqrt2, 0.0);
    return {computational_povm(), Povm{{projector<3>(v0), projector<3>(v1), projector<3>(v2)}}};
}

// Qubit optimum living on span{|0>,|2>}. The unused level |1> is given to
// outcome 1 of measurement 0 and outcome 0 of measurement 1, which costs
// a local penalty of 2 and keeps both triples complete.
inline PovmPair<3> qubit_optimal_settings() {
    using V = Eigen::Vector3cd;
    const V u1(0.5, 0.0, sqrt3 / 2.0);
    const V u2(sqrt3 / 2.0, 0.0, -0.5);
    Povm a{{unit(0, 0), unit(1, 1), unit(2, 2)}};
    Povm b{{unit(1, 1), projector<3>(u1), projector<3>(u2)}};
    return {a, b};
}

// Same optimum as a pair of genuine qubit POVMs, basis (|0>, |2>).
inline PovmPair<Eigen::Dynamic> qubit_optimal_settings_2d() {
    using V = Eigen::Vector2cd;
    OpX z = OpX::Zero(2, 2);
    OpX e0 = z, e1 = z;
    e0(0, 0) = 1.0;
    e1(1, 1) = 1.0;
    const V u1(0.5, sqrt3 / 2.0);
    const V u2(sqrt3 / 2.0, -0.5);
    OpX p1 = u1 * u1.adjoint();
    OpX p2 = u2 * u2.adjoint();
    PovmX a{{e0, z, e1}};
    PovmX b{{z, p1, p2}};
    return {a, b};
}

}  // namespace su3
}  // namespace pibell

#endif
