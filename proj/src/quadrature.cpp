#include "ladderlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "ladderlab/config.hpp"
#include "ladderlab/errors.hpp"

namespace ladderlab {

void QuadratureSpec::validate() const {
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw DomainError("quadrature tolerances must be positive");
    if (min_panels_per_oscillation < 4)
        throw DomainError("min_panels_per_oscillation must be >= 4");
    if (max_depth < 1) throw DomainError("max_depth must be >= 1");
}

namespace {

using Fn = std::function<double(double)>;

struct Worker {
    const Fn& g;
    const QuadratureSpec& spec;
    double err_acc = 0.0;
    bool converged = true;

    double simpson(double fa, double fm, double fb, double h) const {
        return (fa + 4.0 * fm + fb) * h / 6.0;
    }

    // classic recursive Simpson with the |S2-S1|/15 estimator
    double refine(double a, double m, double b, double fa, double fm, double fb,
                  double whole, double tol, int depth) {
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = g(lm);
        const double frm = g(rm);
        const double left = simpson(fa, flm, fm, m - a);
        const double right = simpson(fm, frm, fb, b - m);
        const double err = (left + right - whole) / 15.0;
        if (std::fabs(err) <= tol || depth >= spec.max_depth) {
            if (std::fabs(err) > tol) converged = false;
            err_acc += std::fabs(err);
            return left + right + err;
        }
        return refine(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    double panel(double a, double b, double tol) {
        const double m = 0.5 * (a + b);
        const double fa = g(a);
        const double fm = g(m);
        const double fb = g(b);
        const double whole = simpson(fa, fm, fb, b - a);
        return refine(a, m, b, fa, fm, fb, whole, tol, 0);
    }
};

}  // namespace

IntegralResult integrate(const Fn& g, double a, double b, const QuadratureSpec& spec,
                         double osc_frequency) {
    spec.validate();
    if (!(a < b)) throw InvalidInterval("integrate: need a < b");

    // oscillation-aware stratification
    int panels = 1;
    if (osc_frequency > 0.0) {
        const double max_width = kTwoPi / (osc_frequency * spec.min_panels_per_oscillation);
        panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    }

    // First pass at a coarse value to scale the relative tolerance, then the
    // real pass against max(abs_tol, rel_tol*|estimate|).
    Worker scout{g, spec};
    double rough = 0.0;
    {
        const double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i) {
            const double x0 = a + i * h;
            const double x1 = (i == panels - 1) ? b : x0 + h;
            const double m = 0.5 * (x0 + x1);
            rough += scout.simpson(g(x0), g(m), g(x1), x1 - x0);
        }
    }
    const double tol_total = std::max(spec.abs_tol, spec.rel_tol * std::fabs(rough));

    Worker w{g, spec};
    double value = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i == panels - 1) ? b : x0 + h;
        value += w.panel(x0, x1, tol_total * (x1 - x0) / (b - a));
    }
    return {value, std::max(w.err_acc, 1e-16 * std::fabs(value)), w.converged};
}

}  // namespace ladderlab
