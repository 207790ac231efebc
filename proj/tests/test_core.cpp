#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pii/core.hpp"
#include "pii/integrate.hpp"

using namespace pii;

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

} // namespace

TEST_CASE("pii_rhs values") {
    auto r = pii_rhs(State(0.0, 0.0, 0.7), Direction::PositiveTime);
    CHECK(r[0] == 0.7);
    CHECK(r[1] == 0.0);

    r = pii_rhs(State(1.0, 1.0, 0.0), Direction::PositiveTime);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 3.0);

    r = pii_rhs(State(1.0, 1.0, 0.0), Direction::NegativeTime);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 1.0);
}

TEST_CASE("pii_rhs is odd in (s, v) at fixed t") {
    std::mt19937_64 rng(101);
    for (int i = 0; i < 2000; ++i) {
        const double t = uniform(rng, 0.0, 10.0);
        const double s = uniform(rng, -10.0, 10.0);
        const double v = uniform(rng, -10.0, 10.0);
        for (Direction dir : {Direction::PositiveTime, Direction::NegativeTime}) {
            const auto a = pii_rhs(State(t, s, v), dir);
            const auto b = pii_rhs(State(t, -s, -v), dir);
            CHECK(b[0] == -a[0]);
            CHECK(b[1] == -a[1]);
        }
    }
}

TEST_CASE("reciprocal_rhs values") {
    auto r = reciprocal_rhs(ReciprocalState(1.0, 0.5, -1.0), Direction::PositiveTime);
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(-0.5).epsilon(1e-14));

    for (Direction dir : {Direction::PositiveTime, Direction::NegativeTime}) {
        r = reciprocal_rhs(ReciprocalState(0.0, 1.0, 0.0), dir);
        CHECK(r[0] == 0.0);
        CHECK(r[1] == doctest::Approx(-2.0).epsilon(1e-15));
    }
}

TEST_CASE("reciprocal_rhs matches pii_rhs under s = 1/w") {
    std::mt19937_64 rng(737);
    for (int i = 0; i < 10000; ++i) {
        // |s| log-uniform in [0.1, 10], random sign
        const double mag = std::pow(10.0, uniform(rng, -1.0, 1.0));
        const double s = (rng() & 1) ? mag : -mag;
        const double v = uniform(rng, -10.0, 10.0);
        const double t = uniform(rng, 0.0, 10.0);
        const Direction dir = (rng() & 1) ? Direction::PositiveTime : Direction::NegativeTime;

        const auto direct = pii_rhs(State(t, s, v), dir);
        const double w = 1.0 / s;
        const double u = -v / (s * s);
        const auto rec = reciprocal_rhs(ReciprocalState(t, w, u), dir);

        // Transport the direct rates into reciprocal coordinates:
        // w' = -s'/s^2 and u' = -v'/s^2 + 2 v^2/s^3. Relative error is
        // measured against the terms of the identity.
        const double dw = -direct[0] / (s * s);
        const double term1 = -direct[1] / (s * s);
        const double term2 = 2.0 * v * v / (s * s * s);
        const double du = term1 + term2;
        const double scale = std::max({1.0, std::abs(term1), std::abs(term2)});
        CHECK(std::abs(rec[0] - dw) <= 1e-13 * std::max(1.0, std::abs(dw)));
        CHECK(std::abs(rec[1] - du) <= 1e-13 * scale);
    }
}

TEST_CASE("reciprocal_rhs division floor") {
    const ReciprocalState near_pole(0.0, 1e-13, -1.0);
    CHECK_THROWS_AS(reciprocal_rhs(near_pole, Direction::PositiveTime), DivisionNearZero);
    CHECK_NOTHROW(reciprocal_rhs(near_pole, Direction::PositiveTime, 1e-12, true));
    CHECK_NOTHROW(reciprocal_rhs(near_pole, Direction::PositiveTime, 1e-14));
}

TEST_CASE("airy_rhs values") {
    auto r = airy_rhs(0.0, 1.0, 0.0, 1.0);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);

    r = airy_rhs(2.0, 1.0, 0.0, 1.0);
    CHECK(r[1] == -2.0);

    r = airy_rhs(2.0, 1.0, 0.0, 0.5);
    CHECK(r[1] == -1.0);
}

TEST_CASE("airy_rhs with lambda = 1 is the plain Airy equation") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double t = uniform(rng, 0.0, 30.0);
        const double g = uniform(rng, -2.0, 2.0);
        const double h = uniform(rng, -2.0, 2.0);
        const auto r = airy_rhs(t, g, h, 1.0);
        CHECK(r[0] == h);
        CHECK(r[1] == -(t * g));
    }
}

TEST_CASE("domain type validation") {
    CHECK_THROWS_AS(Sigma(0.0), NonPositiveValue);
    CHECK_THROWS_AS(Sigma(-1.0), NonPositiveValue);
    CHECK_THROWS_AS(Sigma(std::nan("")), NonFiniteValue);
    CHECK(Sigma(0.3).value() == 0.3);

    CHECK_THROWS_AS(State(0.0, std::nan(""), 0.0), NonFiniteValue);
    CHECK_THROWS_AS(State(std::numeric_limits<double>::infinity(), 0.0, 0.0), NonFiniteValue);

    CHECK_THROWS_AS(ReciprocalState(0.0, 0.0, 1.0), DivisionNearZero);
    CHECK_THROWS_AS(ReciprocalState(0.0, std::nan(""), 1.0), NonFiniteValue);

    CHECK_THROWS_AS(AirySpec(0.0, 1.0, 0.0), NonPositiveValue);
    CHECK_THROWS_AS(AirySpec(1.0, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(AirySpec(1.0, 1.0, 0.0, -1.0), PreconditionError);
    CHECK_NOTHROW(AirySpec(0.5, 0.0, 1.0, 2.0));
}

TEST_CASE("negate_solution fixes the zero path and is an involution") {
    SolverConfig cfg;
    Trajectory traj = integrate(Sigma(1.0), Direction::PositiveTime, 1.0, cfg);

    // Hand-built all-zero path: negation is the identity on it.
    Trajectory zero = traj;
    zero.path.times = {0.0, 1.0};
    zero.path.states = {{0.0, 0.0}, {0.0, 0.0}};
    zero.path.segments = {DenseSegment{0.0, 1.0, {}, {}, {}, {}, {}}};
    const Trajectory nz = negate_solution(zero);
    CHECK(nz.path.states[0][0] == 0.0);
    CHECK(nz.path.states[1][1] == 0.0);
    CHECK(nz.sign == -1);

    const Trajectory twice = negate_solution(negate_solution(traj));
    CHECK(twice.sign == traj.sign);
    for (std::size_t i = 0; i < traj.path.states.size(); ++i) {
        CHECK(twice.path.states[i][0] == traj.path.states[i][0]);
        CHECK(twice.path.states[i][1] == traj.path.states[i][1]);
    }
    for (std::size_t i = 0; i < traj.path.segments.size(); ++i) {
        CHECK(twice.path.segments[i].c4[0] == traj.path.segments[i].c4[0]);
        CHECK(twice.path.segments[i].c4[1] == traj.path.segments[i].c4[1]);
    }
}

TEST_CASE("negated trajectory solves the negative-slope problem") {
    SolverConfig cfg;
    const Trajectory traj =
        negate_solution(integrate(Sigma(1.0), Direction::PositiveTime, 1.0, cfg));
    CHECK(traj.slope() == -1.0);

    Rhs rhs = [](double t, const Vec2& y) {
        return pii_rates(t, y[0], y[1], Direction::PositiveTime);
    };
    const Path mirror = integrate_path(rhs, 0.0, {0.0, -1.0}, 1.0, cfg, {}, cfg.switch_magnitude);
    for (int i = 0; i <= 64; ++i) {
        const double t = i / 64.0;
        const Vec2 a = traj.path.eval(t);
        const Vec2 b = mirror.eval(t);
        CHECK(std::abs(a[0] - b[0]) <= 1e-12);
        CHECK(std::abs(a[1] - b[1]) <= 1e-12);
    }
}
