#ifndef PII_OSCILLATION_HPP
#define PII_OSCILLATION_HPP

#include <optional>
#include <vector>

#include "pii/integrate.hpp"

namespace pii {

// One certified zero: located time plus the sign-change bracket around it.
struct CertifiedZero {
    double t;
    double lo;
    double hi;
};

// Ordered positive zeros of a solution over (0, t_max].
struct ZeroSequence {
    double sigma = 0.0;
    std::vector<CertifiedZero> zeros;
    double t_max = 0.0;
};

// Residual of the first-integral identity
//   s'(t)^2 + t s(t)^2 = sigma^2 + s(t)^4 + int_0^t s^2
// sampled along a trajectory.
struct FirstIntegralReport {
    double max_residual = 0.0;
    std::vector<std::pair<double, double>> residual_samples;
};

// Outcome of one Sturm comparison sweep. violations lists every interval
// between consecutive comparison zeros on which the expected interlacing
// failed; intervals carries the full per-interval record.
struct SturmReport {
    struct IntervalCheck {
        double a;
        double b;
        bool pass;
    };

    long checked_intervals = 0;
    std::vector<std::pair<double, double>> violations;
    std::vector<IntervalCheck> intervals;
    std::optional<double> lambda;
    std::optional<double> T;
    std::optional<double> M;
    // M is a horizon-limited proxy for a global bound; this flags runs
    // whose maximum of s^2 lies in the final 5% of [0, t_max].
    bool M_near_horizon = false;
};

// All zeros of the NegativeTime transcendent in (0, t_max], certified by
// sign-change brackets. Throws BlowUpEncountered when |s| reaches
// cfg.switch_magnitude first.
ZeroSequence find_zeros(Sigma sigma, double t_max, const SolverConfig& cfg);

// Zeros of s along an existing trajectory path, in (t_from, t_to].
ZeroSequence scan_zeros(const Trajectory& traj, double t_from, double t_to,
                        const SolverConfig& cfg);

// First-integral residual along a NegativeTime trajectory. The cumulative
// integral of s^2 is taken per step by Gauss quadrature of the dense
// interpolant, which is exact for its polynomial degree.
FirstIntegralReport first_integral_residual(const Trajectory& traj, int min_points = 200);

// Integrates the lambda-Airy solution with the given initial data and
// returns its certified zeros in (t_from, t_to]. Requires
// spec.t0 <= t_from < t_to.
ZeroSequence airy_zeros(const AirySpec& spec, double t_from, double t_to,
                        const SolverConfig& cfg);

// Between every pair of consecutive zeros of s_zeros, the Airy solution
// described by airy (lambda must be 1) has at least one zero.
SturmReport check_sturm_lower(const ZeroSequence& s_zeros, const AirySpec& airy,
                              const SolverConfig& cfg);

// Computes M = sup s^2 over [0, t_max], sets lambda = 1 - 2M/T, and checks
// that the transcendent has a zero strictly between each pair of
// consecutive zeros in [T, t_max] of every lambda-Airy solution given by
// airy_data (g(0), g'(0) pairs; defaults to the two basis solutions).
// Throws NotBounded on blow-up and HorizonTooSmall when a comparison
// solution has fewer than two zeros in [T, t_max].
SturmReport check_sturm_upper(Sigma sigma, double T, double t_max, const SolverConfig& cfg,
                              const std::vector<Vec2>& airy_data = {{1.0, 0.0}, {0.0, 1.0}});

// Maximum of s^2 over dense output, at >= 10 interior points per step.
double sup_squared(const Trajectory& traj);

} // namespace pii

#endif
