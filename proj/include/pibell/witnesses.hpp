#ifndef PIBELL_WITNESSES_HPP
#define PIBELL_WITNESSES_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "common.hpp"
#include "witness_data.hpp"

namespace pibell::witness {

namespace detail {

inline std::string describe(const WitnessData& d) {
    std::ostringstream os;
    os.precision(17);
    os << "(x=" << d.x << ", y=" << d.y << ", z=" << d.z << ")";
    return os.str();
}

inline void require_context(const WitnessData& d, WitnessContext c, const char* fn) {
    if (d.context != c) throw InputError(std::string(fn) + ": data has the wrong context");
}

}  // namespace detail

// 2x + sqrt((z-2)^2/z^2 - y^2) + 2/z - 3; negative means Bell correlations.
inline double pseudospin_witness(const WitnessData& d) {
    detail::require_context(d, WitnessContext::pseudospin, "pseudospin_witness");
    if (!(d.z > 0.0)) throw DomainError("pseudospin_witness: z must be positive for " + detail::describe(d));
    const double q = (d.z - 2.0) / d.z;
    const double rad = q * q - d.y * d.y;
    if (rad < 0.0) throw DomainError("pseudospin_witness: negative radicand for " + detail::describe(d));
    return 2.0 * d.x + std::sqrt(rad) + 2.0 / d.z - 3.0;
}

// 1/z - y^2/x; negative means the squeezing parameter exceeds 1.
inline double wineland_witness(const WitnessData& d) {
    detail::require_context(d, WitnessContext::pseudospin, "wineland_witness");
    if (!(d.z > 0.0)) throw DomainError("wineland_witness: z must be positive for " + detail::describe(d));
    if (d.x < 0.0) throw DomainError("wineland_witness: x must be non-negative for " + detail::describe(d));
    if (d.x == 0.0) return d.y == 0.0 ? 1.0 / d.z : -std::numeric_limits<double>::infinity();
    return 1.0 / d.z - d.y * d.y / d.x;
}

// r^2 / (n lambda_min(C)).
inline double squeezing_parameter(double r, double lambda_min_c, double n) {
    if (!(n > 0.0)) throw InputError("squeezing_parameter: n must be positive");
    if (r == 0.0) return 0.0;
    if (lambda_min_c <= 0.0) return std::numeric_limits<double>::infinity();
    return r * r / (n * lambda_min_c);
}

// Same quantity from witness data: y^2 z / x.
inline double squeezing_parameter(const WitnessData& d) {
    if (d.y == 0.0) return 0.0;
    if (d.x <= 0.0) return std::numeric_limits<double>::infinity();
    return d.y * d.y * d.z / d.x;
}

// <B(theta)>/n = z [cos^2 x + sin y + sin^2] + 2 (1 - z)
inline double pseudospin_bell_value(double theta, const WitnessData& d) {
    const double c = std::cos(theta), s = std::sin(theta);
    return d.z * (c * c * d.x + s * d.y + s * s) + 2.0 * (1.0 - d.z);
}

// Stationary point sin(theta) = y / (2 (x - 1)). It is the minimum only for
// x < 1, which is therefore required.
inline double pseudospin_optimal_angle(double x, double y) {
    if (!(x < 1.0)) throw DomainError("pseudospin_optimal_angle: need x < 1, got x=" + std::to_string(x));
    const double s = y / (2.0 * (x - 1.0));
    if (std::abs(s) > 1.0)
        throw DomainError("pseudospin_optimal_angle: |sin(theta)| = " + std::to_string(std::abs(s)) + " > 1");
    return std::asin(s);
}

struct AngleMinimum {
    double theta = 0.0;
    double value = 0.0;
    bool stationary = false;  // true when the closed-form angle applied
};

// Exact minimum over theta. In sin(theta) = s the bracket is x + s y + s^2 (1 - x),
// so the minimum over s in [-1, 1] is at the stationary point or an end.
inline AngleMinimum pseudospin_bell_minimum(const WitnessData& d) {
    try {
        const double th = pseudospin_optimal_angle(d.x, d.y);
        return {th, pseudospin_bell_value(th, d), true};
    } catch (const DomainError&) {
    }
    const double h = std::numbers::pi / 2.0;
    const double lo = pseudospin_bell_value(-h, d), hi = pseudospin_bell_value(h, d);
    return lo <= hi ? AngleMinimum{-h, lo, false} : AngleMinimum{h, hi, false};
}

// <B(theta)>/n = 2 c^2 x - s^2 c^2 y + s^2 (1 + s^2) z with c = cos, s = sin.
inline double type1_bell_value(double theta, const WitnessData& d) {
    const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
    return 2.0 * c2 * d.x - s2 * c2 * d.y + s2 * (1.0 + s2) * d.z;
}

// sin^2(theta*) = (2x + y - z) / (2 (y + z))
inline double type1_optimal_sin2(const WitnessData& d) {
    if (!(d.y + d.z > 0.0)) throw DomainError("type1: need y + z > 0 for " + detail::describe(d));
    return (2.0 * d.x + d.y - d.z) / (2.0 * (d.y + d.z));
}

inline double type1_optimal_angle(double x, double y, double z) {
    const double s2 = type1_optimal_sin2({x, y, z, WitnessContext::type1});
    if (s2 < 0.0 || s2 > 1.0)
        throw DomainError("type1_optimal_angle: sin^2(theta) = " + std::to_string(s2) + " outside [0, 1]");
    return std::asin(std::sqrt(s2));
}

// sqrt((y + z)(2x - beta)) - x - (y - z)/2; negative means the minimum over
// theta of <B>/n lies below beta.
inline double type1_witness(const WitnessData& d, double beta) {
    detail::require_context(d, WitnessContext::type1, "type1_witness");
    if (!(d.y + d.z > 0.0)) throw DomainError("type1_witness: need y + z > 0 for " + detail::describe(d));
    const double rad = (d.y + d.z) * (2.0 * d.x - beta);
    if (rad < 0.0) throw DomainError("type1_witness: negative radicand for " + detail::describe(d));
    return std::sqrt(rad) - d.x - (d.y - d.z) / 2.0;
}

// Minimum over theta of type1_bell_value recovered from the witness value:
//   min = beta + W (2R + A) / (2 (y + z)),  R = sqrt((y + z)(2x - beta)), A = 2x + y - z.
inline double type1_bell_minimum_from_witness(const WitnessData& d, double beta) {
    const double w = type1_witness(d, beta);
    const double r = std::sqrt((d.y + d.z) * (2.0 * d.x - beta));
    const double a = 2.0 * d.x + d.y - d.z;
    return beta + w * (2.0 * r + a) / (2.0 * (d.y + d.z));
}

}  // namespace pibell::witness

#endif
