#ifndef PII_INTEGRATE_HPP
#define PII_INTEGRATE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "pii/core.hpp"

namespace pii {

// Tolerances and limits governing every integration in the library.
struct SolverConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.5;
    double min_step = 1e-13;
    long max_steps = 1000000;
    // |s| at which pole passage hands off to reciprocal coordinates.
    double switch_magnitude = 100.0;
    // Width of the time bracket to which event roots are driven.
    double event_tol = 1e-12;

    void validate() const; // throws InvalidConfig
};

enum class TerminalKind { ReachedEnd, EventFired, StepFailure };

// How an integration ended. For EventFired, event_id identifies the event
// function (kSwitchEvent marks the built-in |s| >= switch_magnitude guard)
// and [bracket_lo, bracket_hi] is the certified sign-change bracket.
struct Terminal {
    TerminalKind kind = TerminalKind::ReachedEnd;
    double time = 0.0;
    int event_id = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

inline constexpr int kSwitchEvent = -1;

// One accepted step's interpolation data: a quartic in theta = (t - t0)/h
// for each component, exact at both endpoints.
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    Vec2 c0{}, c1{}, c2{}, c3{}, c4{};

    Vec2 eval(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        Vec2 out;
        for (int i = 0; i < 2; ++i)
            out[i] = c0[i] + th * (c1[i] + th1 * (c2[i] + th * (c3[i] + th1 * c4[i])));
        return out;
    }
};

// Generic dense solution path of a two-component system. times/states hold
// the accepted nodes; segments[i] interpolates over [times[i], times[i+1]].
struct Path {
    std::vector<double> times;
    std::vector<Vec2> states;
    std::vector<DenseSegment> segments;
    Terminal terminal;

    double t_begin() const { return times.front(); }
    double t_end() const { return times.back(); }

    // Dense evaluation anywhere in [t_begin, t_end]; throws OutOfSpan.
    Vec2 eval(double t) const;
};

// Scalar event function over the raw path, g(t, y); a root of g along the
// solution ends the integration.
struct PathEvent {
    std::function<double(double, const Vec2&)> fn;
    int id = 0;
};

using Rhs = std::function<Vec2(double, const Vec2&)>;

// Adaptive embedded Dormand-Prince 5(4) integration with dense output.
// Halts at t_end, at the first event root (located to a bracket of width
// <= cfg.event_tol), or with StepFailure recorded in the terminal. When
// magnitude_guard > 0 a built-in terminal event |y[0]| - magnitude_guard
// is armed with id kSwitchEvent.
Path integrate_path(const Rhs& rhs, double t0, Vec2 y0, double t_end,
                    const SolverConfig& cfg, const std::vector<PathEvent>& events = {},
                    double magnitude_guard = 0.0);

// A certified root bracket on a path: g changes sign across [lo, hi] and
// hi - lo <= event_tol; root is the bracket midpoint.
struct RootBracket {
    double root;
    double lo;
    double hi;
};

// Bracketed derivative-free root of g(t, path(t)); regula falsi with a
// guaranteed bisection fallback. Requires a strict sign change over the
// initial bracket (throws NoSignChange otherwise).
RootBracket find_path_root(const Path& path, const std::function<double(double, const Vec2&)>& g,
                           double t_lo, double t_hi, double event_tol);

// Event function over interpolated solution states.
struct TrajectoryEvent {
    std::function<double(const State&)> fn;
    int id = 0;
};

// A solution of the selected equation through the origin, with per-step
// dense output. sign is +1 for slope +sigma, -1 for a negated solution.
struct Trajectory {
    Sigma sigma;
    Direction direction;
    int sign = +1;
    Path path;

    const Terminal& terminal() const { return path.terminal; }
    double slope() const { return sign * sigma.value(); }
};

// Integrates the transcendent with initial data (0, 0, sigma) up to t_end.
// Events are terminal; the |s| >= switch_magnitude guard is always armed.
Trajectory integrate(Sigma sigma, Direction dir, double t_end, const SolverConfig& cfg,
                     const std::vector<TrajectoryEvent>& events = {});

// Continuous interpolant, consistent with the step order; exact at nodes.
State evaluate_dense(const Trajectory& traj, double t);

// Root of event(dense state) inside the bracket, driven to a sign-change
// bracket of width <= cfg-supplied event_tol.
double find_event_root(const Trajectory& traj, const std::function<double(const State&)>& event,
                       std::pair<double, double> bracket, double event_tol);

} // namespace pii

#endif
