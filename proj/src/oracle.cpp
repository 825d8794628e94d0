#include "ladderlab/oracle.hpp"

#include <array>
#include <cmath>

#include "ladderlab/config.hpp"
#include "ladderlab/errors.hpp"

namespace ladderlab {

namespace {

// B_2 .. B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,  5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0};

constexpr double kOracleCap = 1e5;

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.real() <= 0.0)
        throw DomainError("log_gamma: Re z must be positive");
    // Shift until |z| is large enough for the Stirling tail to hit ~1e-13.
    std::complex<double> shift(0.0, 0.0);
    int shifts = 0;
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
        ++shifts;
        if (shifts > 64) throw ConvergenceFailure("log_gamma: shift runaway");
    }
    const std::complex<double> lz = std::log(z);
    std::complex<double> res = (z - 0.5) * lz - z + 0.5 * std::log(kTwoPi);
    const std::complex<double> z2 = z * z;
    std::complex<double> zp = z;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        const double two_k = 2.0 * (k + 1);
        res += kBernoulli[k] / (two_k * (two_k - 1.0)) / zp;
        zp *= z2;
    }
    return res - shift;
}

double theta_oracle(double t) {
    if (!(t >= 0.0)) throw DomainError("theta_oracle: t must be nonnegative");
    const std::complex<double> lg = log_gamma({0.25, 0.5 * t});
    return lg.imag() - 0.5 * t * std::log(kPi);
}

std::complex<double> zeta_half_em(double t) {
    const std::complex<double> s(0.5, t);
    const int N = std::max(32, static_cast<int>(std::ceil(1.5 * std::abs(t))) + 8);

    // main sum n = 1 .. N-1 of n^{-s}
    std::complex<double> sum(0.0, 0.0);
    for (int n = 1; n < N; ++n) {
        const double ln = std::log(static_cast<double>(n));
        const double mag = std::exp(-0.5 * ln);
        sum += std::complex<double>(mag * std::cos(t * ln), -mag * std::sin(t * ln));
    }

    const double lnN = std::log(static_cast<double>(N));
    const double magN = std::exp(-0.5 * lnN);
    const std::complex<double> N_minus_s(magN * std::cos(t * lnN), -magN * std::sin(t * lnN));

    sum += 0.5 * N_minus_s;
    sum += N_minus_s * static_cast<double>(N) / (s - 1.0);

    // Euler-Maclaurin tail: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    std::complex<double> poch = s;                     // rising factorial, 1 factor
    std::complex<double> npow = N_minus_s / static_cast<double>(N);  // N^{-s-1}
    double fact = 2.0;                                 // (2k)!
    const double N2 = static_cast<double>(N) * N;
    for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
        sum += kBernoulli[k] / fact * poch * npow;
        // advance to k+1: two more rising factors, N^{-2}, (2k+2)!
        const double two_k = 2.0 * (k + 1);
        poch *= (s + (two_k - 1.0)) * (s + two_k);
        npow /= N2;
        fact *= (two_k + 1.0) * (two_k + 2.0);
    }
    return sum;
}

std::complex<double> oracle_zeta_half(double t) {
    if (!(t > 1.0)) throw DomainError("oracle_zeta_half: t must exceed 1");
    if (t > kOracleCap)
        throw OracleRangeExceeded("oracle_zeta_half: t above the 1e5 cost cap");
    return zeta_half_em(t);
}

double z_oracle(double t) {
    const double th = theta_oracle(t);
    const std::complex<double> z = zeta_half_em(t);
    return std::cos(th) * z.real() - std::sin(th) * z.imag();
}

std::vector<double> oracle_zero_scan(double a, double b, double step) {
    if (!(a < b) || !(step > 0.0))
        throw InvalidInterval("oracle_zero_scan: bad interval or step");
    std::vector<double> zeros;
    double x0 = a;
    double f0 = z_oracle(x0);
    while (x0 < b) {
        const double x1 = std::min(x0 + step, b);
        const double f1 = z_oracle(x1);
        if (f0 == 0.0) {
            zeros.push_back(x0);
        } else if (f0 * f1 < 0.0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 80 && hi - lo > 1e-11; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = z_oracle(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        if (x1 >= b) break;
        x0 = x1;
        f0 = f1;
    }
    return zeros;
}

}  // namespace ladderlab
