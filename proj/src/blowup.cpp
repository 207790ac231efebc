#include "pii/blowup.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace pii {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool increasing_nodes(const Path& path) {
    for (std::size_t i = 0; i + 1 < path.states.size(); ++i)
        if (!(path.states[i + 1][0] > path.states[i][0])) return false;
    for (std::size_t i = 0; i < path.states.size(); ++i) {
        if (path.times[i] > 0.0 && !(path.states[i][1] > 0.0)) return false;
    }
    return true;
}

} // namespace

void validate_pole_estimate(const PoleEstimate& pe, double event_tol) {
    if (!(pe.bracket_width <= event_tol))
        throw CertificateError("PoleEstimate: event bracket wider than event_tol");
    const double res = std::abs(pe.residue_slope);
    if (!(res >= 0.99 && res <= 1.01))
        throw CertificateError("PoleEstimate: |w'| at the crossing outside [0.99, 1.01]");
    if (pe.analytic_lower > 0.0 && !(pe.analytic_lower < pe.t_pole))
        throw CertificateError("PoleEstimate: t_pole at or below the analytic lower bound");
    if (std::isfinite(pe.analytic_upper) && !(pe.t_pole < pe.analytic_upper))
        throw CertificateError("PoleEstimate: t_pole at or above the analytic upper bound");
}

std::optional<PoleEstimate> estimate_pole(Sigma sigma, Direction dir, const SolverConfig& cfg,
                                          double horizon) {
    if (!(horizon > 0.0)) throw PreconditionError("estimate_pole: horizon must be > 0");

    const Trajectory traj = integrate(sigma, dir, horizon, cfg);
    switch (traj.terminal().kind) {
        case TerminalKind::ReachedEnd:
            return std::nullopt; // |s| never reached the switch magnitude
        case TerminalKind::StepFailure:
            throw StepFailureError("estimate_pole: step failure before handoff");
        case TerminalKind::EventFired:
            break;
    }

    const double t_sw = traj.terminal().time;
    const Vec2 ys = traj.path.states.back();
    const double s_sw = ys[0];
    const double v_sw = ys[1];

    // Reciprocal handoff: w = 1/s, u = -s'/s^2. The w-equation is regular
    // through the pole, so w = 0 is an ordinary event root.
    const Vec2 w0{1.0 / s_sw, -v_sw / (s_sw * s_sw)};
    Rhs rec = [dir](double t, const Vec2& y) {
        return reciprocal_rates_pole_safe(t, y[0], y[1], dir);
    };
    std::vector<PathEvent> pole_event{{[](double, const Vec2& y) { return y[0]; }, 0}};
    const double window = t_sw + std::max(1.0, 8.0 / cfg.switch_magnitude);
    const Path rec_path = integrate_path(rec, t_sw, w0, window, cfg, pole_event);

    if (rec_path.terminal.kind == TerminalKind::StepFailure)
        throw StepFailureError("estimate_pole: step failure during pole passage");
    if (rec_path.terminal.kind != TerminalKind::EventFired) return std::nullopt;

    PoleEstimate pe;
    pe.sigma = sigma.value();
    pe.direction = dir;
    pe.t_pole = rec_path.terminal.time;
    pe.bracket_width = rec_path.terminal.bracket_hi - rec_path.terminal.bracket_lo;
    pe.residue_slope = rec_path.states.back()[1];
    pe.switch_time = t_sw;

    bool rec_monotone = s_sw > 0.0;
    for (const auto& y : rec_path.states)
        if (!(y[1] < 0.0)) rec_monotone = false;
    pe.monotone = increasing_nodes(traj.path) && rec_monotone;

    if (dir == Direction::PositiveTime) {
        pe.analytic_lower = blowup_lower_bound(sigma);
        pe.analytic_upper = blowup_upper_bound(sigma);
    } else {
        pe.analytic_lower = pe.monotone ? monotone_blowup_lower_bound(sigma) : 0.0;
        pe.analytic_upper = kInf;
    }

    validate_pole_estimate(pe, cfg.event_tol);
    return pe;
}

double escape_time_bound(double tau, double s_tau) {
    if (!(tau > 0.0) || !(s_tau > 0.0) || !std::isfinite(tau) || !std::isfinite(s_tau))
        throw NonPositiveValue("escape_time_bound: tau and s(tau) must be positive");
    return tau + 1.0 / s_tau;
}

double blowup_upper_bound(Sigma sigma) { return 2.0 / std::sqrt(sigma.value()); }

double blowup_lower_bound(Sigma sigma) {
    return 2.0 / std::sqrt(sigma.value() * sigma.value() + 5.0 / 3.0);
}

double monotone_blowup_lower_bound(Sigma sigma) {
    return std::numbers::pi / (2.0 * std::sqrt(sigma.value()));
}

bool strictly_increasing(const Trajectory& traj) { return increasing_nodes(traj.path); }

bool tangent_envelope_check(const Trajectory& traj) {
    if (traj.direction != Direction::NegativeTime)
        throw PreconditionError("tangent_envelope_check: NegativeTime trajectories only");
    if (!strictly_increasing(traj))
        throw NotMonotone("tangent_envelope_check: trajectory has a non-increasing segment");
    const double rt = std::sqrt(traj.sigma.value());
    for (std::size_t i = 0; i < traj.path.times.size(); ++i) {
        const double t = traj.path.times[i];
        if (t <= 0.0) continue;
        if (rt * t >= std::numbers::pi / 2.0) continue;
        if (!(traj.path.states[i][0] < rt * std::tan(rt * t))) return false;
    }
    return true;
}

} // namespace pii
