#include "pii/threshold.hpp"

#include <cmath>

#include "pii/blowup.hpp"
#include "pii/oscillation.hpp"

namespace pii {

const char* to_string(Classification::Kind kind) {
    switch (kind) {
        case Classification::Kind::Explosive: return "explosive";
        case Classification::Kind::Oscillatory: return "oscillatory";
        case Classification::Kind::Undetermined: return "undetermined";
    }
    return "undetermined";
}

Classification classify(Sigma sigma, double horizon, const SolverConfig& cfg) {
    if (!(horizon > 0.0)) throw PreconditionError("classify: horizon must be > 0");
    Classification c;
    c.sigma = sigma.value();
    c.horizon = horizon;

    try {
        const auto pole = estimate_pole(sigma, Direction::NegativeTime, cfg, horizon);
        if (pole && pole->t_pole <= horizon) {
            c.kind = Classification::Kind::Explosive;
            c.t_pole = pole->t_pole;
            return c;
        }
        if (pole) {
            c.diagnostic = "pole located beyond horizon";
            return c;
        }
    } catch (const StepFailureError& e) {
        c.diagnostic = e.what();
        return c;
    }

    // No blow-up before the horizon: look for certified oscillation.
    try {
        const ZeroSequence zs = find_zeros(sigma, horizon, cfg);
        if (static_cast<int>(zs.zeros.size()) >= kMinZeroCount) {
            c.kind = Classification::Kind::Oscillatory;
            c.zero_count = static_cast<int>(zs.zeros.size());
            c.first_zero = zs.zeros.front().t;
            return c;
        }
        c.diagnostic = "fewer than " + std::to_string(kMinZeroCount) + " zeros before horizon";
    } catch (const Error& e) {
        c.diagnostic = e.what();
    }
    return c;
}

namespace {

// Classifies with horizon doubling while the verdict stays Undetermined.
Classification classify_with_retries(Sigma sigma, double horizon, const SolverConfig& cfg,
                                     int max_doublings) {
    Classification c = classify(sigma, horizon, cfg);
    for (int k = 0; k < max_doublings && c.kind == Classification::Kind::Undetermined; ++k) {
        horizon *= 2.0;
        c = classify(sigma, horizon, cfg);
    }
    return c;
}

} // namespace

ThresholdBracket find_threshold(double lo0, double hi0, double width_goal, double horizon,
                                const SolverConfig& cfg, int max_horizon_doublings) {
    if (!(lo0 > 0.0) || !(hi0 > lo0))
        throw PreconditionError("find_threshold: need 0 < lo0 < hi0");
    if (!(width_goal > 0.0)) throw PreconditionError("find_threshold: width_goal must be > 0");

    const Classification clo = classify_with_retries(Sigma(lo0), horizon, cfg,
                                                     max_horizon_doublings);
    if (clo.kind != Classification::Kind::Oscillatory)
        throw InvalidBracket("find_threshold: lo endpoint is not Oscillatory (" +
                             std::string(to_string(clo.kind)) + ")");
    const Classification chi = classify_with_retries(Sigma(hi0), horizon, cfg,
                                                     max_horizon_doublings);
    if (chi.kind != Classification::Kind::Explosive)
        throw InvalidBracket("find_threshold: hi endpoint is not Explosive (" +
                             std::string(to_string(chi.kind)) + ")");

    ThresholdBracket bracket{lo0, hi0, 0, ""};
    while (bracket.hi - bracket.lo > width_goal) {
        const double mid = 0.5 * (bracket.lo + bracket.hi);
        const Classification cm = classify_with_retries(Sigma(mid), horizon, cfg,
                                                        max_horizon_doublings);
        if (cm.kind == Classification::Kind::Undetermined) {
            bracket.diagnostic = "midpoint " + std::to_string(mid) +
                                 " undetermined at horizon cap: " + cm.diagnostic;
            return bracket;
        }
        if (cm.kind == Classification::Kind::Explosive)
            bracket.hi = mid;
        else
            bracket.lo = mid;
        ++bracket.iterations;
    }
    return bracket;
}

} // namespace pii
