#include "pii/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace pii {

namespace {

// Dormand-Prince 5(4) tableau (exact rationals).
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;

// Error weights: 5th-order minus embedded 4th-order solution.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// Dense-output weights for the quartic interpolant.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMaxGrowth = 5.0;  // per-step growth cap
constexpr double kMaxShrink = 0.2;
constexpr double kBeta = 0.04;      // PI stabilisation
constexpr double kAlpha = 0.2 - kBeta * 0.75;

double effective_min_step(double min_step, double t) {
    return std::max(min_step, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(t));
}

struct EventState {
    PathEvent ev;
    double g_prev = 0.0;
};

// Earliest located event root within an accepted step, if any.
struct Triggered {
    RootBracket bracket;
    int id;
};

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

} // namespace

void SolverConfig::validate() const {
    const bool ok = std::isfinite(rel_tol) && std::isfinite(abs_tol) && std::isfinite(max_step) &&
                    std::isfinite(min_step) && std::isfinite(switch_magnitude) &&
                    std::isfinite(event_tol) && rel_tol > 0.0 && abs_tol > 0.0 &&
                    event_tol > 0.0 && min_step > 0.0 && min_step <= max_step && max_steps > 0 &&
                    switch_magnitude > 1.0;
    if (!ok) throw InvalidConfig("SolverConfig: invariant violation");
}

Vec2 Path::eval(double t) const {
    const double slack = 1e-14 * (1.0 + std::abs(t_end()));
    if (t < t_begin() - slack || t > t_end() + slack)
        throw OutOfSpan("Path::eval: t outside covered span");
    t = std::clamp(t, t_begin(), t_end());
    if (segments.empty()) return states.front();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    auto idx = static_cast<std::size_t>(std::distance(times.begin(), it));
    idx = (idx == 0) ? 0 : idx - 1;
    if (idx >= segments.size()) idx = segments.size() - 1;
    // Nodes reproduce stored states exactly.
    if (t == times[idx]) return states[idx];
    if (idx + 1 < times.size() && t == times[idx + 1]) return states[idx + 1];
    return segments[idx].eval(t);
}

RootBracket find_path_root(const Path& path, const std::function<double(double, const Vec2&)>& g,
                           double t_lo, double t_hi, double event_tol) {
    double lo = t_lo, hi = t_hi;
    double glo = g(lo, path.eval(lo));
    double ghi = g(hi, path.eval(hi));
    if (glo == 0.0) return {lo, lo, lo};
    if (ghi == 0.0) return {hi, hi, hi};
    if (sgn(glo) == sgn(ghi))
        throw NoSignChange("find_path_root: no sign change over bracket");

    bool bisect = false;
    while (hi - lo > event_tol) {
        double tm = bisect ? 0.5 * (lo + hi) : (lo * ghi - hi * glo) / (ghi - glo);
        bisect = !bisect;
        if (!(tm > lo && tm < hi)) tm = 0.5 * (lo + hi);
        if (tm <= lo || tm >= hi) break; // bracket at floating-point resolution
        const double gm = g(tm, path.eval(tm));
        if (gm == 0.0) return {tm, tm, tm};
        if (sgn(gm) == sgn(glo)) {
            lo = tm;
            glo = gm;
        } else {
            hi = tm;
            ghi = gm;
        }
    }
    return {0.5 * (lo + hi), lo, hi};
}

Path integrate_path(const Rhs& rhs, double t0, Vec2 y0, double t_end, const SolverConfig& cfg,
                    const std::vector<PathEvent>& events, double magnitude_guard) {
    cfg.validate();
    if (!(t_end > t0)) throw PreconditionError("integrate_path: t_end must exceed t0");
    if (!std::isfinite(y0[0]) || !std::isfinite(y0[1]))
        throw NonFiniteValue("integrate_path: initial state must be finite");

    Path path;
    path.times.push_back(t0);
    path.states.push_back(y0);

    std::vector<EventState> evs;
    for (const auto& e : events) evs.push_back({e, e.fn(t0, y0)});
    if (magnitude_guard > 0.0) {
        PathEvent guard{[magnitude_guard](double, const Vec2& y) {
                            return std::abs(y[0]) - magnitude_guard;
                        },
                        kSwitchEvent};
        evs.push_back({guard, guard.fn(t0, y0)});
    }

    double t = t0;
    Vec2 y = y0;
    Vec2 k1 = rhs(t, y);
    double h = std::clamp(1e-6, cfg.min_step, cfg.max_step);
    double facold = 1e-4;
    bool rejected_last = false;

    auto fail = [&](double at) {
        path.terminal = {TerminalKind::StepFailure, at, 0};
        return path;
    };

    for (long step = 0; step < cfg.max_steps; ++step) {
        if (t >= t_end) break;
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }
        if (h < effective_min_step(cfg.min_step, t)) return fail(t);

        // Stage evaluations.
        Vec2 k2, k3, k4, k5, k6, k7, ytmp, y1;
        for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = rhs(t + c2 * h, ytmp);
        for (int i = 0; i < 2; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(t + c5 * h, ytmp);
        for (int i = 0; i < 2; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        k6 = rhs(t + h, ytmp);
        for (int i = 0; i < 2; ++i)
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                a76 * k6[i]);
        k7 = rhs(t + h, y1);

        double err = 0.0;
        bool finite = std::isfinite(y1[0]) && std::isfinite(y1[1]);
        if (finite) {
            for (int i = 0; i < 2; ++i) {
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                       e6 * k6[i] + e7 * k7[i]);
                const double sc =
                    cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(0.5 * err);
            if (!std::isfinite(err)) finite = false;
        }

        if (!finite || err > 1.0) {
            const double fac11 = finite ? std::pow(err, kAlpha) : 1.0 / kMaxShrink;
            const double shrink = std::min(1.0 / kMaxShrink, fac11 / kSafety);
            h /= shrink;
            rejected_last = true;
            if (h < effective_min_step(cfg.min_step, t)) return fail(t);
            continue;
        }

        // Accepted: build the dense segment.
        DenseSegment seg;
        seg.t0 = t;
        seg.h = h;
        for (int i = 0; i < 2; ++i) {
            const double ydiff = y1[i] - y[i];
            const double bspl = h * k1[i] - ydiff;
            seg.c0[i] = y[i];
            seg.c1[i] = ydiff;
            seg.c2[i] = bspl;
            seg.c3[i] = ydiff - h * k7[i] - bspl;
            seg.c4[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                             d7 * k7[i]);
        }
        const double t1 = last ? t_end : t + h;
        path.segments.push_back(seg);
        path.times.push_back(t1);
        path.states.push_back(y1);

        // Event scan: step endpoints plus one midpoint probe, then bracket.
        std::optional<Triggered> hit;
        const double tm = t + 0.5 * h;
        for (auto& es : evs) {
            const double g0 = es.g_prev;
            const double gm = es.ev.fn(tm, seg.eval(tm));
            const double g1 = es.ev.fn(t1, y1);
            std::optional<RootBracket> rb;
            if (g0 != 0.0 && gm == 0.0) {
                rb = RootBracket{tm, tm, tm};
            } else if (g0 * gm < 0.0) {
                rb = find_path_root(path, es.ev.fn, t, tm, cfg.event_tol);
            } else if (gm != 0.0 && g1 == 0.0) {
                rb = RootBracket{t1, t1, t1};
            } else if (gm * g1 < 0.0) {
                rb = find_path_root(path, es.ev.fn, tm, t1, cfg.event_tol);
            }
            if (rb && (!hit || rb->root < hit->bracket.root)) hit = Triggered{*rb, es.ev.id};
            es.g_prev = g1;
        }
        if (hit) {
            // Clip the trajectory at the event root; node times stay
            // strictly increasing even for a root at the step boundary.
            double troot = std::max(hit->bracket.root, std::nextafter(t, t1));
            const Vec2 ye = path.segments.back().eval(troot);
            path.times.back() = troot;
            path.states.back() = ye;
            path.terminal = {TerminalKind::EventFired, troot, hit->id, hit->bracket.lo,
                             hit->bracket.hi};
            return path;
        }

        t = t1;
        y = y1;
        k1 = k7; // FSAL
        double fac = std::pow(err, kAlpha) / std::pow(facold, kBeta);
        fac = std::clamp(fac / kSafety, 1.0 / kMaxGrowth, 1.0 / kMaxShrink);
        if (rejected_last) fac = std::max(fac, 1.0); // no growth right after a rejection
        rejected_last = false;
        h = std::min(h / fac, cfg.max_step);
        facold = std::max(err, 1e-4);
    }

    if (t >= t_end) {
        path.terminal = {TerminalKind::ReachedEnd, t_end, 0};
        return path;
    }
    return fail(t); // max_steps exhausted
}

Trajectory integrate(Sigma sigma, Direction dir, double t_end, const SolverConfig& cfg,
                     const std::vector<TrajectoryEvent>& events) {
    if (!(t_end > 0.0)) throw PreconditionError("integrate: t_end must be > 0");
    Rhs rhs = [dir](double t, const Vec2& y) { return pii_rates(t, y[0], y[1], dir); };
    std::vector<PathEvent> evs;
    evs.reserve(events.size());
    for (const auto& e : events) {
        auto fn = e.fn;
        evs.push_back({[fn](double t, const Vec2& y) { return fn(State(t, y[0], y[1])); }, e.id});
    }
    Path path = integrate_path(rhs, 0.0, {0.0, sigma.value()}, t_end, cfg, evs,
                               cfg.switch_magnitude);
    return Trajectory{sigma, dir, +1, std::move(path)};
}

State evaluate_dense(const Trajectory& traj, double t) {
    const Vec2 y = traj.path.eval(t);
    return State(t, y[0], y[1]);
}

double find_event_root(const Trajectory& traj, const std::function<double(const State&)>& event,
                       std::pair<double, double> bracket, double event_tol) {
    auto g = [&event](double t, const Vec2& y) { return event(State(t, y[0], y[1])); };
    return find_path_root(traj.path, g, bracket.first, bracket.second, event_tol).root;
}

} // namespace pii
