#pragma once

#include <complex>
#include <vector>

namespace ladderlab {

// Independent reference path for the zeta engine.  Nothing here shares code
// with the Riemann-Siegel implementation: theta comes from a Stirling-series
// log-Gamma, zeta from Euler-Maclaurin summation of the Dirichlet series.
// Cost grows linearly in t, which is why the public entry point is capped.

// log Gamma(z) for Re z > 0 (Stirling series with argument shift).
std::complex<double> log_gamma(std::complex<double> z);

// theta(t) = -(t/2) ln pi + Im log Gamma(1/4 + i t/2); valid for t > 0.
double theta_oracle(double t);

// zeta(1/2 + it) by Euler-Maclaurin; no range cap, used internally for the
// [0, t_min] integral segment and the low-height scans.
std::complex<double> zeta_half_em(double t);

// Public oracle with the contract range 1 < t <= 1e5.
// Throws OracleRangeExceeded above the cap, DomainError at or below 1.
std::complex<double> oracle_zeta_half(double t);

// Z(t) = Re( e^{i theta_oracle(t)} zeta(1/2+it) ), real-valued reference.
double z_oracle(double t);

// Sign-scan zero finder on [a, b] with the given step; each sign change is
// refined by bisection to ~1e-10.  Used by the validation suites.
std::vector<double> oracle_zero_scan(double a, double b, double step);

}  // namespace ladderlab
