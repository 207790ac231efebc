#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pii/blowup.hpp"
#include "pii/oscillation.hpp"

using namespace pii;

namespace {

// First-kind Airy data at the origin for g'' + t g = 0 (the oscillatory
// orientation): g(0) = Ai(0), g'(0) = -Ai'(0).
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = 0.25881940379280679841;

// Oracle: power-series solution of g'' = -t g in long double. The
// recurrence a_{n+2} = -a_{n-1} / ((n+2)(n+1)) converges everywhere; the
// modest cancellation up to t ~ 4 is well inside long-double headroom.
long double airy_series(long double g0, long double h0, long double t) {
    long double a[240] = {};
    a[0] = g0;
    a[1] = h0;
    a[2] = 0.0L;
    for (int n = 1; n + 2 < 240; ++n) a[n + 2] = -a[n - 1] / ((n + 2.0L) * (n + 1.0L));
    long double sum = 0.0L, tn = 1.0L;
    for (int n = 0; n < 240; ++n) {
        sum += a[n] * tn;
        tn *= t;
    }
    return sum;
}

double series_zero(double g0, double h0, double lo, double hi) {
    long double flo = airy_series(g0, h0, lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double m = 0.5 * (lo + hi);
        const long double fm = airy_series(g0, h0, m);
        if ((flo > 0.0L) == (fm > 0.0L)) {
            lo = m;
            flo = fm;
        } else {
            hi = m;
        }
    }
    return 0.5 * (lo + hi);
}

double rand_u(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

TEST_CASE("zero sequence of an oscillatory transcendent") {
    SolverConfig cfg;
    const ZeroSequence zs = find_zeros(Sigma(0.3), 20.0, cfg);
    CHECK(zs.zeros.size() >= 3);
    CHECK(zs.zeros.front().t == doctest::Approx(2.7838766763).epsilon(1e-8));

    const Trajectory traj = integrate(Sigma(0.3), Direction::NegativeTime, 20.0, cfg);
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        const auto& z = zs.zeros[i];
        if (i > 0) CHECK(z.t > zs.zeros[i - 1].t);
        CHECK(z.hi - z.lo <= cfg.event_tol);
        if (z.lo < z.hi) {
            // Re-certify the sign change independently of the scanner.
            const double slo = evaluate_dense(traj, z.lo).s;
            const double shi = evaluate_dense(traj, z.hi).s;
            CHECK(slo * shi < 0.0);
        }
    }

    // Zero locations are stable under tolerance tightening.
    SolverConfig tight = cfg;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const ZeroSequence zt = find_zeros(Sigma(0.3), 20.0, tight);
    REQUIRE(zt.zeros.size() == zs.zeros.size());
    for (std::size_t i = 0; i < zs.zeros.size(); ++i)
        CHECK(std::abs(zs.zeros[i].t - zt.zeros[i].t) < 1e-8);
}

TEST_CASE("explosive sigma raises BlowUpEncountered") {
    SolverConfig cfg;
    CHECK_THROWS_AS(find_zeros(Sigma(1.0), 40.0, cfg), BlowUpEncountered);
}

TEST_CASE("first-integral conservation") {
    SolverConfig cfg;
    const Trajectory traj = integrate(Sigma(0.3), Direction::NegativeTime, 20.0, cfg);
    const FirstIntegralReport rep = first_integral_residual(traj);
    CHECK(rep.residual_samples.size() >= 200);
    CHECK(rep.residual_samples.front().second == 0.0); // exact at t = 0
    CHECK(rep.max_residual <= 1e-8);

    SolverConfig tight = cfg;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const Trajectory tt = integrate(Sigma(0.3), Direction::NegativeTime, 20.0, tight);
    const FirstIntegralReport rt = first_integral_residual(tt);
    CHECK(rt.max_residual < 0.2 * rep.max_residual);

    // Larger magnitudes amplify roundoff: stop the sigma = 0.8 run as the
    // rise toward blow-up begins.
    std::vector<TrajectoryEvent> stop{{[](const State& st) { return std::abs(st.s) - 5.0; }, 1}};
    const Trajectory rising = integrate(Sigma(0.8), Direction::NegativeTime, 40.0, cfg, stop);
    REQUIRE(rising.terminal().kind == TerminalKind::EventFired);
    CHECK(first_integral_residual(rising).max_residual <= 1e-6);

    const Trajectory pos = integrate(Sigma(1.0), Direction::PositiveTime, 1.0, cfg);
    CHECK_THROWS_AS(first_integral_residual(pos), PreconditionError);
}

TEST_CASE("airy zeros against the power-series oracle") {
    SolverConfig cfg;
    const AirySpec spec(1.0, kAi0, kAip0, 0.0);
    const ZeroSequence zs = airy_zeros(spec, 0.0, 20.0, cfg);
    REQUIRE(zs.zeros.size() >= 5);

    const double oracle_first = series_zero(kAi0, kAip0, 2.0, 3.0);
    CHECK(std::abs(zs.zeros.front().t - oracle_first) < 1e-10);
    CHECK(zs.zeros.front().t == doctest::Approx(2.33810741045977).epsilon(1e-9));

    const double oracle_second = series_zero(kAi0, kAip0, 3.5, 4.5);
    CHECK(std::abs(zs.zeros[1].t - oracle_second) < 1e-10);

    CHECK_THROWS_AS(airy_zeros(spec, 5.0, 4.0, cfg), PreconditionError);
}

TEST_CASE("lambda scaling of airy zeros") {
    SolverConfig cfg;
    for (double lam : {0.5, 2.0}) {
        const double scale = std::pow(lam, -1.0 / 3.0);
        const ZeroSequence a = airy_zeros(AirySpec(lam, 1.0, 0.0, 0.0), 0.0, 20.0, cfg);
        const ZeroSequence b = airy_zeros(AirySpec(1.0, 1.0, 0.0, 0.0), 0.0, 20.0 / scale, cfg);
        const std::size_t n = std::min(a.zeros.size(), b.zeros.size());
        REQUIRE(n >= 10);
        for (std::size_t i = 0; i < n; ++i) {
            const double want = b.zeros[i].t * scale;
            CHECK(std::abs(a.zeros[i].t - want) <= 1e-10 * want);
        }
    }
}

TEST_CASE("independent airy solutions interlace") {
    SolverConfig cfg;
    const ZeroSequence za = airy_zeros(AirySpec(1.0, 1.0, 0.0, 0.0), 0.0, 20.0, cfg);
    const ZeroSequence zb = airy_zeros(AirySpec(1.0, 0.0, 1.0, 0.0), 0.0, 20.0, cfg);
    // Between consecutive zeros of one solution lies exactly one of the other.
    for (std::size_t i = 0; i + 1 < za.zeros.size(); ++i) {
        int inside = 0;
        for (const auto& z : zb.zeros)
            if (z.t > za.zeros[i].t && z.t < za.zeros[i + 1].t) ++inside;
        CHECK(inside == 1);
    }
}

TEST_CASE("zero-gap lower bound via Sturm comparison") {
    SolverConfig cfg;
    const ZeroSequence zs = find_zeros(Sigma(0.3), 40.0, cfg);

    const SturmReport r1 = check_sturm_lower(zs, AirySpec(1.0, kAi0, kAip0, 0.0), cfg);
    CHECK(r1.checked_intervals == static_cast<long>(zs.zeros.size()) - 1);
    CHECK(r1.violations.empty());

    const SturmReport r2 = check_sturm_lower(zs, AirySpec(1.0, 0.0, 1.0, 0.0), cfg);
    CHECK(r2.violations.empty());

    std::mt19937_64 rng(2026);
    for (int k = 0; k < 4; ++k) {
        const double theta = 2.0 * std::numbers::pi * rand_u(rng);
        const SturmReport r =
            check_sturm_lower(zs, AirySpec(1.0, std::cos(theta), std::sin(theta), 0.0), cfg);
        CHECK(r.violations.empty());
    }

    ZeroSequence degenerate;
    degenerate.sigma = 0.3;
    degenerate.t_max = 5.0;
    degenerate.zeros = {{2.78, 2.78, 2.78}};
    const SturmReport rd = check_sturm_lower(degenerate, AirySpec(1.0, kAi0, kAip0, 0.0), cfg);
    CHECK(rd.checked_intervals == 0);
    CHECK(rd.violations.empty());

    CHECK_THROWS_AS(check_sturm_lower(zs, AirySpec(2.0, 1.0, 0.0, 0.0), cfg), PreconditionError);
}

TEST_CASE("zero-gap upper bound via modified comparison") {
    SolverConfig cfg;
    const SturmReport rep = check_sturm_upper(Sigma(0.3), 5.0, 40.0, cfg);
    CHECK(rep.violations.empty());
    CHECK(rep.checked_intervals > 10);
    REQUIRE(rep.lambda.has_value());
    CHECK(*rep.lambda == 1.0 - 2.0 * (*rep.M) / (*rep.T)); // exact by definition
    CHECK(*rep.lambda > 0.0);
    CHECK(*rep.lambda < 1.0);
    CHECK(!rep.M_near_horizon); // sigma = 0.3 peaks in its first arch

    // lambda rises toward 1 as the onset time grows.
    const SturmReport r10 = check_sturm_upper(Sigma(0.3), 10.0, 40.0, cfg);
    const SturmReport r20 = check_sturm_upper(Sigma(0.3), 20.0, 40.0, cfg);
    CHECK(*rep.lambda < *r10.lambda);
    CHECK(*r10.lambda < *r20.lambda);
    CHECK(*r20.lambda < 1.0);

    CHECK_THROWS_AS(check_sturm_upper(Sigma(0.3), 0.1, 40.0, cfg), PreconditionError);
    CHECK_THROWS_AS(check_sturm_upper(Sigma(1.0), 5.0, 40.0, cfg), NotBounded);
    CHECK_THROWS_AS(check_sturm_upper(Sigma(0.3), 39.9, 40.0, cfg), HorizonTooSmall);
}

TEST_CASE("sup of s^2 over dense output") {
    SolverConfig cfg;
    const Trajectory traj = integrate(Sigma(0.3), Direction::NegativeTime, 40.0, cfg);
    const double m = sup_squared(traj);
    CHECK(m > 0.0);

    SolverConfig tight = cfg;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-14;
    const double mt = sup_squared(integrate(Sigma(0.3), Direction::NegativeTime, 40.0, tight));
    CHECK(std::abs(m - mt) < 1e-6);

    // Strictly increasing segment: the maximum sits at the right endpoint.
    const Trajectory rising = integrate(Sigma(1.0), Direction::NegativeTime, 1.5, cfg);
    const double s_end = rising.path.states.back()[0];
    CHECK(sup_squared(rising) == s_end * s_end);

    Trajectory zero = rising;
    zero.path.times = {0.0, 1.0};
    zero.path.states = {{0.0, 0.0}, {0.0, 0.0}};
    zero.path.segments = {DenseSegment{0.0, 1.0, {}, {}, {}, {}, {}}};
    CHECK(sup_squared(zero) == 0.0);

    const Trajectory exploding = integrate(Sigma(1.0), Direction::NegativeTime, 40.0, cfg);
    CHECK_THROWS_AS(sup_squared(exploding), NotBounded);
}
