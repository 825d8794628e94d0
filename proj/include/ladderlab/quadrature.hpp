#pragma once

#include <functional>

namespace ladderlab {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int min_panels_per_oscillation = 8;
    int max_depth = 40;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double err_est = 0.0;
    bool converged = true;  // false when max_depth was hit somewhere
};

// Adaptive Simpson over [a, b].  When the integrand oscillates (anything
// containing Z^2), pass its local angular frequency as `osc_frequency`
// (theta_derivative(b) for critical-line integrands); the interval is then
// pre-stratified into panels no wider than
//   2*pi / (osc_frequency * min_panels_per_oscillation)
// before refinement starts, which keeps the error estimator out of the
// aliasing regime.  Panel order and summation order are fixed, so results do
// not depend on the caller's threading.
//
// Throws InvalidInterval if a >= b.  Depth exhaustion is reported through
// IntegralResult::converged, not an exception.
IntegralResult integrate(const std::function<double(double)>& g, double a, double b,
                         const QuadratureSpec& spec = {}, double osc_frequency = 0.0);

}  // namespace ladderlab
