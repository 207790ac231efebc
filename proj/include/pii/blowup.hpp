#ifndef PII_BLOWUP_HPP
#define PII_BLOWUP_HPP

#include <optional>

#include "pii/integrate.hpp"

namespace pii {

// A located blow-up time with its certificates: the event bracket, the
// simple-pole residue slope |w'| at the crossing, and the analytic bounds
// the estimate must respect (infinite when no bound applies).
struct PoleEstimate {
    double sigma = 0.0;
    Direction direction = Direction::PositiveTime;
    double t_pole = 0.0;
    double bracket_width = 0.0;
    double residue_slope = 0.0; // w' at the w = 0 crossing
    double switch_time = 0.0;   // handoff into reciprocal coordinates
    double analytic_lower = 0.0;
    double analytic_upper = 0.0;
    bool monotone = false;      // s strictly increasing up to the pole
};

// Checks the PoleEstimate invariants; throws CertificateError on failure.
void validate_pole_estimate(const PoleEstimate& pe, double event_tol);

// Integrates until |s| reaches cfg.switch_magnitude, hands off to
// reciprocal coordinates and locates the w = 0 event. Returns nullopt when
// |s| never reaches the switch magnitude before the horizon (the expected
// outcome for small-sigma NegativeTime runs). StepFailure propagates.
std::optional<PoleEstimate> estimate_pole(Sigma sigma, Direction dir, const SolverConfig& cfg,
                                          double horizon = 40.0);

// tau + 1/s(tau), a strict upper bound for the blow-up time of a
// PositiveTime trajectory. Throws NonPositiveValue.
double escape_time_bound(double tau, double s_tau);

// Strict upper bound 2/sqrt(sigma) on the PositiveTime blow-up time.
double blowup_upper_bound(Sigma sigma);

// Strict lower bound 2/sqrt(sigma^2 + 5/3) on the PositiveTime blow-up time.
double blowup_lower_bound(Sigma sigma);

// pi/(2 sqrt(sigma)): no strictly increasing NegativeTime trajectory blows
// up before this time.
double monotone_blowup_lower_bound(Sigma sigma);

// True when s' > 0 across all stored samples (t > 0), the operational
// certificate of strict monotonicity.
bool strictly_increasing(const Trajectory& traj);

// Verifies s(t) < sqrt(sigma) tan(sqrt(sigma) t) at every sample with
// 0 < sqrt(sigma) t < pi/2 of a strictly increasing NegativeTime
// trajectory. Throws NotMonotone if the trajectory has a decreasing
// segment.
bool tangent_envelope_check(const Trajectory& traj);

} // namespace pii

#endif
