#ifndef PII_CORE_HPP
#define PII_CORE_HPP

#include <array>
#include <cmath>

#include "pii/errors.hpp"

namespace pii {

// Two-component phase vector; by convention [0] is the solution value and
// [1] its derivative.
using Vec2 = std::array<double, 2>;

// Selects which half-line of the original problem is being integrated.
// PositiveTime is the equation  s'' = 2 s^3 + t s;  NegativeTime is the
// time-reversed form  s'' = 2 s^3 - t s,  so module-level times are always
// nonnegative in both directions.
enum class Direction { PositiveTime, NegativeTime };

const char* to_string(Direction dir);

// Initial slope s'(0). Strictly positive: sigma = 0 gives the zero solution
// and negative slopes are recovered through negate_solution.
class Sigma {
public:
    explicit Sigma(double value) : value_(value) {
        if (!std::isfinite(value_)) throw NonFiniteValue("Sigma: value must be finite");
        if (value_ <= 0.0) throw NonPositiveValue("Sigma: value must be > 0");
    }
    double value() const { return value_; }

private:
    double value_;
};

// Instantaneous state (t, s, s') of a solution. All fields finite.
struct State {
    double t;
    double s;
    double v;

    State(double t_, double s_, double v_) : t(t_), s(s_), v(v_) {
        if (!std::isfinite(t) || !std::isfinite(s) || !std::isfinite(v))
            throw NonFiniteValue("State: fields must be finite");
    }
};

// State in reciprocal coordinates w = 1/s, u = w'. Used to pass through a
// blow-up, where w has a regular zero. w = 0 itself is the pole event and
// is never stored.
struct ReciprocalState {
    double t;
    double w;
    double u;

    ReciprocalState(double t_, double w_, double u_) : t(t_), w(w_), u(u_) {
        if (!std::isfinite(t) || !std::isfinite(w) || !std::isfinite(u))
            throw NonFiniteValue("ReciprocalState: fields must be finite");
        if (w == 0.0) throw DivisionNearZero("ReciprocalState: w must be nonzero");
    }
};

// Initial data for a lambda-Airy solution: g'' + lambda t g = 0 with
// g(t0) = g0, g'(t0) = h0. lambda = 1 is the plain Airy equation.
struct AirySpec {
    double lambda;
    double g0;
    double h0;
    double t0;

    AirySpec(double lambda_, double g0_, double h0_, double t0_ = 0.0)
        : lambda(lambda_), g0(g0_), h0(h0_), t0(t0_) {
        if (!std::isfinite(lambda) || !std::isfinite(g0) || !std::isfinite(h0) ||
            !std::isfinite(t0))
            throw NonFiniteValue("AirySpec: fields must be finite");
        if (lambda <= 0.0) throw NonPositiveValue("AirySpec: lambda must be > 0");
        if (g0 == 0.0 && h0 == 0.0)
            throw PreconditionError("AirySpec: (g0, h0) must not both vanish");
        if (t0 < 0.0) throw PreconditionError("AirySpec: t0 must be >= 0");
    }
};

// Raw right-hand sides, shared between the validated public operations and
// the solver's inner loop (which works on bare doubles and relies on step
// rejection, not exceptions, for transient overflow).

inline Vec2 pii_rates(double t, double s, double v, Direction dir) {
    const double cubic = 2.0 * s * s * s;
    return {v, dir == Direction::PositiveTime ? cubic + t * s : cubic - t * s};
}

inline Vec2 reciprocal_rates(double t, double w, double u, Direction dir) {
    const double tw2 = t * w * w;
    return {u, (2.0 * u * u - 2.0 - (dir == Direction::PositiveTime ? tw2 : -tw2)) / w};
}

// Pole-passage form of the reciprocal rates. At the crossing the exact
// u' is a 0/0 limit that vanishes linearly in w, but in floating point
// the numerator carries O(eps) noise that 1/w amplifies without bound,
// which can stall the step controller on the pole. Replacing 1/w by
// w/(w^2 + delta^2) bounds the noise while perturbing u' by at most
// O(t * delta), far below integration tolerances.
inline Vec2 reciprocal_rates_pole_safe(double t, double w, double u, Direction dir) {
    constexpr double delta2 = 1e-14; // delta = 1e-7
    const double tw2 = t * w * w;
    const double numer = 2.0 * u * u - 2.0 - (dir == Direction::PositiveTime ? tw2 : -tw2);
    return {u, numer * w / (w * w + delta2)};
}

inline Vec2 airy_rates(double t, double g, double h, double lambda) {
    return {h, -lambda * t * g};
}

// (s', v') of the equation selected by dir. Pure; total on valid states.
Vec2 pii_rhs(const State& st, Direction dir);

// (w', u') of the reciprocal-coordinate equation. Equivalent to pii_rhs
// under s = 1/w. Unless the caller has armed pole-event handling, |w| at
// or below division_floor is rejected rather than divided through.
Vec2 reciprocal_rhs(const ReciprocalState& rs, Direction dir,
                    double division_floor = 1e-12, bool pole_event_armed = false);

// (g', h') of the lambda-Airy equation.
Vec2 airy_rhs(double t, double g, double h, double lambda);

struct Trajectory;

// Flips the sign of s and v at every sample and in every dense segment.
// The result solves the same equation with initial slope -sigma.
Trajectory negate_solution(const Trajectory& traj);

} // namespace pii

#endif
