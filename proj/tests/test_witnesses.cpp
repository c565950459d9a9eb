#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include <pibell/pibell.hpp>

#include "oracles.hpp"

using namespace pibell;
using namespace pibell::witness;

namespace {

constexpr double pi = std::numbers::pi;

WitnessData ps(double x, double y, double z) { return {x, y, z, WitnessContext::pseudospin}; }
WitnessData t1(double x, double y, double z) { return {x, y, z, WitnessContext::type1}; }

// minimum of f over a fine grid of [lo, hi], refined by ternary search around the best node
template <class F>
double grid_min(F f, double lo, double hi, int nodes = 20001) {
    double best = f(lo), arg = lo;
    const double h = (hi - lo) / (nodes - 1);
    for (int k = 1; k < nodes; ++k) {
        const double t = lo + k * h, v = f(t);
        if (v < best) best = v, arg = t;
    }
    double a = std::max(lo, arg - h), b = std::min(hi, arg + h);
    for (int it = 0; it < 200; ++it) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (f(m1) < f(m2)) b = m2;
        else a = m1;
    }
    return std::min(best, f(0.5 * (a + b)));
}

}  // namespace

TEST_CASE("pseudospin witness examples") {
    CHECK(pseudospin_witness(ps(1, 1, 1)) == Catch::Approx(1.0));
    CHECK(pseudospin_witness(ps(0, 1, 1)) == Catch::Approx(-1.0));
    CHECK(pseudospin_witness(ps(0.5, 0.5, 0.5)) == Catch::Approx(2.0 + std::sqrt(8.75)));
    // unpolarised data never violate
    for (double x = 0.0; x <= 2.0; x += 0.1)
        for (double z = 0.05; z <= 1.0; z += 0.05) CHECK(pseudospin_witness(ps(x, 0.0, z)) >= 0.0);
    CHECK_THROWS_AS(pseudospin_witness(ps(1, 1, 0)), DomainError);
    CHECK_THROWS_AS(pseudospin_witness(ps(1, 2, 1)), DomainError);
    CHECK_THROWS_AS(pseudospin_witness(t1(1, 1, 1)), InputError);
    try {
        pseudospin_witness(ps(0.25, 5.0, 1.0));
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("y=5") != std::string::npos);
    }
}

TEST_CASE("Wineland criterion examples") {
    CHECK(wineland_witness(ps(1, 1, 1)) == Catch::Approx(0.0).margin(1e-15));
    CHECK(wineland_witness(ps(0.5, 1, 1)) == Catch::Approx(-1.0));
    CHECK(wineland_witness(ps(2, 1, 0.5)) == Catch::Approx(1.5));
    CHECK(wineland_witness(ps(0, 0, 0.5)) == Catch::Approx(2.0));
    CHECK(std::isinf(wineland_witness(ps(0, 0.1, 0.5))));
    CHECK_THROWS_AS(wineland_witness(ps(1, 1, 0)), DomainError);
    CHECK_THROWS_AS(wineland_witness(ps(-1, 1, 1)), DomainError);
}

TEST_CASE("squeezing parameter from raw moments and from witness data agree") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int k = 0; k < 200; ++k) {
        const double n = 30.0, z = u(rng), r = u(rng) * n * z, lam = u(rng) * n;
        const double inside = z * n;
        const WitnessData d = ps(lam / inside, r / inside, z);
        CHECK(squeezing_parameter(r, lam, n) == Catch::Approx(squeezing_parameter(d)).epsilon(1e-12));
        // Wineland violated exactly when xi^-2 > 1
        CHECK((wineland_witness(d) < 0) == (squeezing_parameter(d) > 1.0));
    }
    CHECK(squeezing_parameter(30.0, 30.0, 30.0) == Catch::Approx(1.0));
    CHECK(squeezing_parameter(0.0, 0.0, 30.0) == 0.0);
    CHECK(squeezing_parameter(2.0, 0.7, 30.0) == Catch::Approx(4.0 * squeezing_parameter(1.0, 0.7, 30.0)));
    CHECK(std::isinf(squeezing_parameter(1.0, 0.0, 30.0)));
    CHECK_THROWS_AS(squeezing_parameter(1.0, 1.0, 0.0), InputError);
}

TEST_CASE("pseudospin optimal angle matches a grid search") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int stationary = 0;
    for (int k = 0; k < 300; ++k) {
        const WitnessData d = ps(1.5 * u(rng), 3.0 * u(rng), 0.05 + 0.95 * u(rng));
        const AngleMinimum m = pseudospin_bell_minimum(d);
        const double ref = grid_min([&](double t) { return pseudospin_bell_value(t, d); }, -pi / 2.0, pi / 2.0);
        CHECK(m.value == Catch::Approx(ref).margin(1e-8));
        CHECK(pseudospin_bell_value(m.theta, d) == Catch::Approx(m.value).margin(1e-14));
        stationary += m.stationary;
    }
    CHECK(stationary > 0);
    CHECK(pseudospin_optimal_angle(0.5, 0.5) == Catch::Approx(std::asin(-0.5)));
    CHECK_THROWS_AS(pseudospin_optimal_angle(1.0, 0.1), DomainError);
    CHECK_THROWS_AS(pseudospin_optimal_angle(0.9, 1.0), DomainError);
}

TEST_CASE("pseudospin witness sign equals the sign of the optimised Bell value") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0, violating = 0;
    while (checked < 1000) {
        const double z = 0.05 + 0.95 * u(rng), x = u(rng);
        const double y = 2.0 * (1.0 - x) * u(rng);
        const double q = (z - 2.0) / z;
        if (y * y > q * q) continue;
        const WitnessData d = ps(x, y, z);
        const double w = pseudospin_witness(d);
        const double b = pseudospin_bell_minimum(d).value;
        if (std::abs(w) < 1e-9 || std::abs(b) < 1e-9) continue;
        CHECK((w < 0) == (b < 0));
        violating += b < 0;
        ++checked;
    }
    CHECK(violating > 0);
}

TEST_CASE("type-1 value has two equivalent forms") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 500; ++k) {
        const WitnessData d = t1(u(rng), u(rng), u(rng));
        const double th = u(rng);
        const double s2 = std::sin(th) * std::sin(th);
        const double poly = 2.0 * d.x + s2 * (-2.0 * d.x - d.y + d.z) + s2 * s2 * (d.y + d.z);
        CHECK(type1_bell_value(th, d) == Catch::Approx(poly).margin(1e-12));
    }
    CHECK(type1_bell_value(0.0, t1(0.3, 5, 7)) == Catch::Approx(0.6));
    CHECK(type1_bell_value(pi / 2.0, t1(0.3, 5, 7)) == Catch::Approx(14.0));
}

TEST_CASE("type-1 optimal angle matches a grid search") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int used = 0;
    for (int k = 0; k < 400; ++k) {
        const WitnessData d = t1(u(rng), 2.0 * u(rng), u(rng));
        const double s2 = type1_optimal_sin2(d);
        if (s2 < 0.0 || s2 > 1.0) {
            CHECK_THROWS_AS(type1_optimal_angle(d.x, d.y, d.z), DomainError);
            continue;
        }
        const double th = type1_optimal_angle(d.x, d.y, d.z);
        const double ref = grid_min([&](double t) { return type1_bell_value(t, d); }, 0.0, pi / 2.0);
        CHECK(type1_bell_value(th, d) == Catch::Approx(ref).margin(1e-8));
        ++used;
    }
    CHECK(used > 50);
    CHECK_THROWS_AS(type1_optimal_sin2(t1(1, 0, 0)), DomainError);
}

TEST_CASE("type-1 witness identity and sign equivalence") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int checked = 0, violating = 0;
    while (checked < 1000) {
        const WitnessData d = t1(u(rng), 3.0 * u(rng), u(rng));
        const double s2 = type1_optimal_sin2(d);
        if (s2 < 0.0 || s2 > 1.0) continue;
        const double beta = -0.5 * u(rng);
        if (2.0 * d.x - beta < 0.0) continue;
        const double exact = type1_bell_value(std::asin(std::sqrt(s2)), d);
        CHECK(type1_bell_minimum_from_witness(d, beta) == Catch::Approx(exact).margin(1e-10));
        const double w = type1_witness(d, beta);
        if (std::abs(w) < 1e-9) continue;
        CHECK((w < 0) == (exact < beta));
        violating += exact < beta;
        ++checked;
    }
    CHECK(violating > 0);
}

TEST_CASE("type-1 witness is monotone in the bound") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 300; ++k) {
        const WitnessData d = t1(u(rng), 2.0 * u(rng), u(rng));
        CHECK(type1_witness(d, 0.0) <= type1_witness(d, -0.25));
        CHECK(type1_witness(d, -0.25) <= type1_witness(d, -0.5));
    }
}

TEST_CASE("type-1 witness domain") {
    CHECK(type1_witness(t1(0.5, 1.0, 0.5), -0.25) == Catch::Approx(std::sqrt(1.5 * 1.25) - 0.5 - 0.25));
    CHECK_THROWS_AS(type1_witness(t1(0.5, 0.0, 0.0), 0.0), DomainError);
    CHECK_THROWS_AS(type1_witness(t1(0.0, 1.0, 0.0), 0.5), DomainError);
    CHECK_THROWS_AS(type1_witness(ps(0.5, 1.0, 0.5), 0.0), InputError);
}

TEST_CASE("type-1 data reproduce the Bell operator expectation") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    for (int n : {3, 8}) {
        const auto b = sym::DickeBasis::make(n);
        for (int rep = 0; rep < 4; ++rep) {
            sym::Vec amp(b->dim());
            for (Eigen::Index k = 0; k < amp.size(); ++k) amp(k) = cplx(g(rng), g(rng));
            const sym::SymState s = sym::SymState(b, amp).normalized();
            const WitnessData d = sym::extract_type1_data(s);
            for (double th : {0.0, 0.3, pi / 4.0, 1.2}) {
                const double direct = sym::bell_operator_from_povms(su3::type1_settings(th), b).expectation(s).real() / n;
                CHECK(type1_bell_value(th, d) == Catch::Approx(direct).margin(1e-10));
            }
        }
    }
}

TEST_CASE("product states never violate") {
    std::mt19937_64 rng(29);
    const int n = 10;
    const auto b = sym::DickeBasis::make(n);
    for (int rep = 0; rep < 50; ++rep) {
        const sym::SymState s(b, oracle::product_state_in_dicke(oracle::random_qutrit(rng), *b));
        const WitnessData d = sym::extract_type1_data(s);
        const double m = grid_min([&](double t) { return type1_bell_value(t, d); }, 0.0, pi / 2.0, 2001);
        CHECK(m >= -1e-9);
        if (d.y + d.z <= 0.0) continue;
        const double s2 = type1_optimal_sin2(d);
        if (s2 >= 0.0 && s2 <= 1.0) CHECK(type1_witness(d, 0.0) >= -1e-9);
    }
}
