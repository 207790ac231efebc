#include "pii/quadrature.hpp"

#include <cmath>

namespace pii {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

struct Accum {
    double value = 0.0;
    double err = 0.0;
    long panels = 0;
    bool tol_met = true;
};

// Interval-halving refinement: each panel carries the embedded estimate
// |S2 - S1| / 15 and is accepted Richardson-corrected.
void refine(const std::function<double(double)>& f, double a, double fa, double b, double fb,
            double fm, double s_whole, double tol, int depth, int max_depth, Accum& acc) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double s_left = simpson(a, m, fa, flm, fm);
    const double s_right = simpson(m, b, fm, frm, fb);
    const double s2 = s_left + s_right;
    const double delta = (s2 - s_whole) / 15.0;
    if (std::abs(delta) <= tol || depth >= max_depth) {
        acc.value += s2 + delta;
        acc.err += std::abs(delta);
        acc.panels += 1;
        if (std::abs(delta) > tol) acc.tol_met = false;
        return;
    }
    refine(f, a, fa, m, fm, flm, s_left, 0.5 * tol, depth + 1, max_depth, acc);
    refine(f, m, fm, b, fb, frm, s_right, 0.5 * tol, depth + 1, max_depth, acc);
}

Accum quad_panelled(const std::function<double(double)>& f, double a, double b, double abs_tol,
                    int max_depth) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double s = simpson(a, b, fa, fm, fb);
    Accum acc;
    refine(f, a, fa, b, fb, fm, s, abs_tol, 0, max_depth, acc);
    return acc;
}

} // namespace

QuadResult adaptive_quad(const std::function<double(double)>& f, double a, double b,
                         double rel_tol, int max_depth) {
    if (!(b > a)) throw PreconditionError("adaptive_quad: b must exceed a");
    if (!(rel_tol > 0.0)) throw PreconditionError("adaptive_quad: rel_tol must be > 0");
    // Rough scale from a coarse composite pass, so the panel budget is
    // expressed absolutely.
    double rough = 0.0;
    const int n = 16;
    for (int i = 0; i < n; ++i) {
        const double x0 = a + (b - a) * i / n;
        const double x1 = a + (b - a) * (i + 1) / n;
        rough += simpson(x0, x1, f(x0), f(0.5 * (x0 + x1)), f(x1));
    }
    const double scale = std::max(std::abs(rough), 1e-300);
    Accum acc = quad_panelled(f, a, b, 0.25 * rel_tol * scale, max_depth);
    if (!acc.tol_met)
        throw ToleranceNotMet("adaptive_quad: panel tolerance unattainable at depth limit");
    return {acc.value, acc.err, acc.panels};
}

QuadResult integral_blowup_upper(Sigma sigma, double rel_tol) {
    const double sg = sigma.value();
    const double split = std::sqrt(sg);
    auto head = [sg](double s) { return 1.0 / std::sqrt(sg * sg + s * s * s * s); };
    // Reciprocal substitution s = 1/x maps [sqrt(sigma), inf) onto
    // (0, 1/sqrt(sigma)] with integrand 1/sqrt(1 + sigma^2 x^4).
    auto tail = [sg](double x) { return 1.0 / std::sqrt(1.0 + sg * sg * x * x * x * x); };
    const QuadResult qh = adaptive_quad(head, 0.0, split, rel_tol);
    const QuadResult qt = adaptive_quad(tail, 0.0, 1.0 / split, rel_tol);
    return {qh.value + qt.value, qh.error_estimate + qt.error_estimate,
            qh.subdivisions + qt.subdivisions};
}

QuadResult integral_blowup_lower(Sigma sigma, double rel_tol) {
    const double sg = sigma.value();
    auto head = [sg](double u) {
        return 1.0 / std::sqrt(sg * sg * u * u * u * u + 1.0 + 2.0 * u * u * u / 3.0);
    };
    // u = 1/x maps [1, inf) onto (0, 1] with integrand
    // 1/sqrt(sigma^2 + x^4 + 2x/3).
    auto tail = [sg](double x) {
        return 1.0 / std::sqrt(sg * sg + x * x * x * x + 2.0 * x / 3.0);
    };
    const QuadResult qh = adaptive_quad(head, 0.0, 1.0, rel_tol);
    const QuadResult qt = adaptive_quad(tail, 0.0, 1.0, rel_tol);
    return {qh.value + qt.value, qh.error_estimate + qt.error_estimate,
            qh.subdivisions + qt.subdivisions};
}

} // namespace pii
