#ifndef PII_QUADRATURE_HPP
#define PII_QUADRATURE_HPP

#include <functional>

#include "pii/core.hpp"

namespace pii {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long subdivisions = 0;
};

// Adaptive interval-halving quadrature of f over [a, b] with an embedded
// per-panel error estimate (Richardson-extrapolated Simpson). Throws
// ToleranceNotMet when the requested tolerance cannot be reached within
// the depth limit.
QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         double rel_tol = 1e-11, int max_depth = 60);

// Integral of 1/sqrt(sigma^2 + s^4) over [0, inf), split at s = sqrt(sigma)
// with the tail mapped to a bounded interval by the reciprocal substitution.
QuadResult integral_blowup_upper(Sigma sigma, double rel_tol = 1e-11);

// Integral of 1/sqrt(sigma^2 u^4 + 1 + 2 u^3 / 3) over [0, inf), split at
// u = 1 with the reciprocal-substitution tail.
QuadResult integral_blowup_lower(Sigma sigma, double rel_tol = 1e-11);

} // namespace pii

#endif
