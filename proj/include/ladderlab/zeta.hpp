#pragma once

#include <vector>

namespace ladderlab {

// Hardy Z-function on the critical line via the Riemann-Siegel formula.
//
//   Z(t) = 2 * sum_{n <= tau} n^{-1/2} cos(theta(t) - t ln n) + R(t),
//   tau(t) = sqrt(t / 2 pi),   |Z(t)| = |zeta(1/2 + it)|.
//
// The remainder R is the standard correction series
//   R ~ (-1)^{N-1} tau^{-1/2} [ C0(p) + C1(p) tau^{-1} + ... ],  p = tau - N,
// with the C_j built from derivatives of
//   psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
// The C_j are tabulated once as Chebyshev series over p in [0,1]; the psi
// derivatives behind them come from a Cauchy-integral Taylor expansion, so no
// hand-copied polynomial tables are involved.
//
// Accuracy (validated against the Euler-Maclaurin oracle in the test suite):
// with the default five correction terms the absolute error is below 1e-7 for
// t >= 100 and below the 1e-6 budget everywhere in [100, 1e7].

// Riemann-Siegel theta via the asymptotic expansion
//   theta(t) = (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48 t) + 7/(5760 t^3).
// Truncation error is below 1e-8 for t >= 10 (next term is O(t^-5)).
// Throws HeightTooSmall below the hard floor.
double theta(double t);

// d theta / dt to leading order: the local quasi-frequency of Z.
double theta_derivative(double t);

// Z(t) with `terms` correction terms (1..5). Throws HeightTooSmall.
double z_value(double t, int terms = 5);

// Z(t)^2 = |zeta(1/2+it)|^2.
double zeta_sq(double t, int terms = 5);

// tau(t) = sqrt(t / 2 pi), the main-sum cutoff.
double rs_cutoff(double t);

struct OscillatorTerm {
    int n;              // 1 .. floor(tau)
    double amplitude;   // 2 / sqrt(n)
    double frequency;   // ln(tau(x) / n), nonnegative, decreasing in n
};

// Local spectrum of cyclic frequencies of Z near height x: one oscillator per
// main-sum term, plus the incoherent phase constant psi(x) = -x/2 - pi/8.
struct OscillatorSpectrum {
    double x = 0.0;
    double cutoff = 0.0;          // tau(x)
    double phase_constant = 0.0;  // -x/2 - pi/8
    std::vector<OscillatorTerm> terms;
};

OscillatorSpectrum local_spectrum(double x);

namespace detail {
// C_j(p) for j = 0..4; exposed for the correction-order study in the tests.
double rs_correction_coefficient(int j, double p);
}

}  // namespace ladderlab
