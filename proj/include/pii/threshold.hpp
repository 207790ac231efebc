#ifndef PII_THRESHOLD_HPP
#define PII_THRESHOLD_HPP

#include <string>

#include "pii/integrate.hpp"

namespace pii {

// Verdict for one sigma in NegativeTime. Explosive and Oscillatory carry
// their certificates; anything that earns neither before the horizon is
// Undetermined, never guessed.
struct Classification {
    enum class Kind { Explosive, Oscillatory, Undetermined };

    double sigma = 0.0;
    Kind kind = Kind::Undetermined;
    double horizon = 0.0;
    // Explosive only:
    double t_pole = 0.0;
    // Oscillatory only:
    int zero_count = 0;
    double first_zero = 0.0;
    // Undetermined only:
    std::string diagnostic;
};

const char* to_string(Classification::Kind kind);

// Certified bracket around the explosive/oscillatory threshold sigma_0:
// lo classifies Oscillatory, hi classifies Explosive.
struct ThresholdBracket {
    double lo = 0.0;
    double hi = 0.0;
    long iterations = 0;
    std::string diagnostic; // nonempty when bisection stopped early
};

inline constexpr int kMinZeroCount = 3;

// Explosive if the reciprocal-coordinate pole event fires by the horizon;
// Oscillatory on >= kMinZeroCount certified zeros without blow-up;
// Undetermined otherwise (including propagated StepFailure).
Classification classify(Sigma sigma, double horizon, const SolverConfig& cfg);

// Bisection on sigma maintaining (lo Oscillatory, hi Explosive) until
// hi - lo <= width_goal. An Undetermined midpoint doubles its horizon up
// to max_horizon_doublings times; if it stays Undetermined the current
// bracket is returned with a diagnostic. Throws InvalidBracket when an
// initial endpoint misclassifies.
ThresholdBracket find_threshold(double lo0, double hi0, double width_goal, double horizon,
                                const SolverConfig& cfg, int max_horizon_doublings = 4);

} // namespace pii

#endif
