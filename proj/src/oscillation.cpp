#include "pii/oscillation.hpp"

#include <algorithm>
#include <cmath>

namespace pii {

namespace {

// 5-point Gauss-Legendre rule: exact through degree 9, enough to integrate
// the square of the quartic dense interpolant without error.
struct Gauss5 {
    double node[5];
    double weight[5];
    Gauss5() {
        const double r1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double r2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double w0 = 128.0 / 225.0;
        const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        node[0] = -r2; node[1] = -r1; node[2] = 0.0; node[3] = r1; node[4] = r2;
        weight[0] = w2; weight[1] = w1; weight[2] = w0; weight[3] = w1; weight[4] = w2;
    }
};

const Gauss5 kGauss5;

double gauss_s_squared(const DenseSegment& seg, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
        const double s = seg.eval(mid + half * kGauss5.node[k])[0];
        acc += kGauss5.weight[k] * s * s;
    }
    return half * acc;
}

std::vector<RootBracket> scan_component_zeros(const Path& path, double t_from, double t_to,
                                              double event_tol) {
    std::vector<RootBracket> out;
    auto g = [](double, const Vec2& y) { return y[0]; };
    const double tend = std::min(t_to, path.t_end());
    double ga = path.states.front()[0];
    for (std::size_t i = 0; i < path.segments.size(); ++i) {
        const double ta = path.times[i];
        const double tb = path.times[i + 1];
        if (ta > tend) break;
        const double tm = 0.5 * (ta + tb);
        const double gm = path.segments[i].eval(tm)[0];
        const double gb = path.states[i + 1][0];
        if (ga != 0.0 && gm == 0.0)
            out.push_back({tm, tm, tm});
        else if (ga * gm < 0.0)
            out.push_back(find_path_root(path, g, ta, tm, event_tol));
        if (gm != 0.0 && gb == 0.0)
            out.push_back({tb, tb, tb});
        else if (gm * gb < 0.0)
            out.push_back(find_path_root(path, g, tm, tb, event_tol));
        ga = gb;
    }
    std::erase_if(out, [&](const RootBracket& rb) { return rb.root <= t_from || rb.root > t_to; });
    return out;
}

ZeroSequence to_sequence(const std::vector<RootBracket>& roots, double sigma, double t_max) {
    ZeroSequence zs;
    zs.sigma = sigma;
    zs.t_max = t_max;
    zs.zeros.reserve(roots.size());
    for (const auto& rb : roots) zs.zeros.push_back({rb.root, rb.lo, rb.hi});
    return zs;
}

bool has_zero_strictly_inside(const ZeroSequence& zs, double a, double b) {
    for (const auto& z : zs.zeros)
        if (z.t > a && z.t < b) return true;
    return false;
}

std::pair<double, double> sup_squared_with_argmax(const Path& path) {
    double best = 0.0;
    double at = path.t_begin();
    for (std::size_t i = 0; i < path.segments.size(); ++i) {
        const double ta = path.times[i];
        const double tb = path.times[i + 1];
        for (int k = 0; k <= 10; ++k) {
            const double t = ta + (tb - ta) * k / 10.0;
            const double s = (k == 0)    ? path.states[i][0]
                             : (k == 10) ? path.states[i + 1][0]
                                         : path.segments[i].eval(t)[0];
            if (s * s > best) {
                best = s * s;
                at = t;
            }
        }
    }
    return {best, at};
}

} // namespace

ZeroSequence find_zeros(Sigma sigma, double t_max, const SolverConfig& cfg) {
    if (!(t_max > 0.0)) throw PreconditionError("find_zeros: t_max must be > 0");
    const Trajectory traj = integrate(sigma, Direction::NegativeTime, t_max, cfg);
    if (traj.terminal().kind == TerminalKind::EventFired &&
        traj.terminal().event_id == kSwitchEvent)
        throw BlowUpEncountered("find_zeros: |s| reached switch magnitude before t_max");
    if (traj.terminal().kind == TerminalKind::StepFailure)
        throw StepFailureError("find_zeros: integration failed");
    return scan_zeros(traj, 0.0, t_max, cfg);
}

ZeroSequence scan_zeros(const Trajectory& traj, double t_from, double t_to,
                        const SolverConfig& cfg) {
    const auto roots = scan_component_zeros(traj.path, t_from, t_to, cfg.event_tol);
    return to_sequence(roots, traj.sigma.value(), t_to);
}

FirstIntegralReport first_integral_residual(const Trajectory& traj, int min_points) {
    if (traj.direction != Direction::NegativeTime)
        throw PreconditionError("first_integral_residual: NegativeTime trajectories only");
    const Path& path = traj.path;
    if (path.segments.empty())
        throw PreconditionError("first_integral_residual: trajectory holds no steps");
    const double sig2 = traj.sigma.value() * traj.sigma.value();

    // Prefix integral of s^2 at the step nodes, accumulated in step order.
    std::vector<double> prefix(path.times.size(), 0.0);
    for (std::size_t i = 0; i < path.segments.size(); ++i)
        prefix[i + 1] = prefix[i] + gauss_s_squared(path.segments[i], path.times[i],
                                                    path.times[i + 1]);

    auto cumulative = [&](double t) {
        auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
        auto idx = static_cast<std::size_t>(std::distance(path.times.begin(), it));
        idx = (idx == 0) ? 0 : idx - 1;
        if (idx >= path.segments.size()) idx = path.segments.size() - 1;
        return prefix[idx] + gauss_s_squared(path.segments[idx], path.times[idx], t);
    };

    FirstIntegralReport report;
    const int n = std::max(min_points, 200);
    report.residual_samples.reserve(static_cast<std::size_t>(n));
    const double t0 = path.t_begin();
    const double t1 = path.t_end();
    for (int j = 0; j < n; ++j) {
        const double t = t0 + (t1 - t0) * j / (n - 1);
        const Vec2 y = path.eval(t);
        const double s2 = y[0] * y[0];
        const double residual = y[1] * y[1] + t * s2 - sig2 - s2 * s2 - cumulative(t);
        report.residual_samples.emplace_back(t, residual);
        report.max_residual = std::max(report.max_residual, std::abs(residual));
    }
    return report;
}

ZeroSequence airy_zeros(const AirySpec& spec, double t_from, double t_to,
                        const SolverConfig& cfg) {
    if (!(t_to > t_from) || !(t_from >= spec.t0))
        throw PreconditionError("airy_zeros: need spec.t0 <= t_from < t_to");
    const double lambda = spec.lambda;
    Rhs rhs = [lambda](double t, const Vec2& y) { return airy_rates(t, y[0], y[1], lambda); };
    const Path path = integrate_path(rhs, spec.t0, {spec.g0, spec.h0}, t_to, cfg);
    if (path.terminal.kind == TerminalKind::StepFailure)
        throw StepFailureError("airy_zeros: integration failed");
    const auto roots = scan_component_zeros(path, t_from, t_to, cfg.event_tol);
    return to_sequence(roots, 0.0, t_to);
}

SturmReport check_sturm_lower(const ZeroSequence& s_zeros, const AirySpec& airy,
                              const SolverConfig& cfg) {
    if (airy.lambda != 1.0)
        throw PreconditionError("check_sturm_lower: comparison requires lambda = 1");
    SturmReport report;
    if (s_zeros.zeros.size() < 2) return report;

    const double last = s_zeros.zeros.back().t;
    const ZeroSequence az = airy_zeros(airy, airy.t0, last, cfg);
    for (std::size_t i = 0; i + 1 < s_zeros.zeros.size(); ++i) {
        const double a = s_zeros.zeros[i].t;
        const double b = s_zeros.zeros[i + 1].t;
        const bool pass = has_zero_strictly_inside(az, a, b);
        ++report.checked_intervals;
        report.intervals.push_back({a, b, pass});
        if (!pass) report.violations.emplace_back(a, b);
    }
    return report;
}

SturmReport check_sturm_upper(Sigma sigma, double T, double t_max, const SolverConfig& cfg,
                              const std::vector<Vec2>& airy_data) {
    if (!(t_max > 0.0) || !(T > 0.0))
        throw PreconditionError("check_sturm_upper: T and t_max must be > 0");
    const Trajectory traj = integrate(sigma, Direction::NegativeTime, t_max, cfg);
    if (traj.terminal().kind == TerminalKind::EventFired &&
        traj.terminal().event_id == kSwitchEvent)
        throw NotBounded("check_sturm_upper: trajectory blows up before t_max");
    if (traj.terminal().kind == TerminalKind::StepFailure)
        throw StepFailureError("check_sturm_upper: integration failed");

    const auto [M, t_at_max] = sup_squared_with_argmax(traj.path);
    if (!(T > 2.0 * M))
        throw PreconditionError("check_sturm_upper: requires T > 2M");
    const double lambda = 1.0 - 2.0 * M / T;

    SturmReport report;
    report.lambda = lambda;
    report.T = T;
    report.M = M;
    report.M_near_horizon = t_at_max > 0.95 * t_max;

    const ZeroSequence s_zeros = scan_zeros(traj, 0.0, t_max, cfg);
    for (const auto& data : airy_data) {
        const AirySpec spec(lambda, data[0], data[1], 0.0);
        const ZeroSequence az = airy_zeros(spec, T, t_max, cfg);
        if (az.zeros.size() < 2)
            throw HorizonTooSmall("check_sturm_upper: fewer than 2 comparison zeros in [T, t_max]");
        for (std::size_t i = 0; i + 1 < az.zeros.size(); ++i) {
            const double a = az.zeros[i].t;
            const double b = az.zeros[i + 1].t;
            const bool pass = has_zero_strictly_inside(s_zeros, a, b);
            ++report.checked_intervals;
            report.intervals.push_back({a, b, pass});
            if (!pass) report.violations.emplace_back(a, b);
        }
    }
    return report;
}

double sup_squared(const Trajectory& traj) {
    if (traj.terminal().kind == TerminalKind::EventFired &&
        traj.terminal().event_id == kSwitchEvent)
        throw NotBounded("sup_squared: trajectory is not bounded on its span");
    return sup_squared_with_argmax(traj.path).first;
}

} // namespace pii
