#include "pii/core.hpp"

#include "pii/integrate.hpp"

namespace pii {

const char* to_string(Direction dir) {
    return dir == Direction::PositiveTime ? "positive" : "negative";
}

Vec2 pii_rhs(const State& st, Direction dir) {
    return pii_rates(st.t, st.s, st.v, dir);
}

Vec2 reciprocal_rhs(const ReciprocalState& rs, Direction dir, double division_floor,
                    bool pole_event_armed) {
    if (!pole_event_armed && std::abs(rs.w) < division_floor)
        throw DivisionNearZero("reciprocal_rhs: |w| below division floor without an armed pole event");
    return reciprocal_rates(rs.t, rs.w, rs.u, dir);
}

Vec2 airy_rhs(double t, double g, double h, double lambda) {
    if (!std::isfinite(t) || !std::isfinite(g) || !std::isfinite(h))
        throw NonFiniteValue("airy_rhs: arguments must be finite");
    if (lambda <= 0.0) throw NonPositiveValue("airy_rhs: lambda must be > 0");
    return airy_rates(t, g, h, lambda);
}

Trajectory negate_solution(const Trajectory& traj) {
    Trajectory out = traj;
    out.sign = -traj.sign;
    for (auto& y : out.path.states) {
        y[0] = -y[0];
        y[1] = -y[1];
    }
    for (auto& seg : out.path.segments) {
        for (int i = 0; i < 2; ++i) {
            seg.c0[i] = -seg.c0[i];
            seg.c1[i] = -seg.c1[i];
            seg.c2[i] = -seg.c2[i];
            seg.c3[i] = -seg.c3[i];
            seg.c4[i] = -seg.c4[i];
        }
    }
    return out;
}

} // namespace pii
