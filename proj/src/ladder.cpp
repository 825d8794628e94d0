#include "ladderlab/ladder.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <mutex>

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {

// --------------------------------------------------------------------------
// prime counting
// --------------------------------------------------------------------------

namespace {

constexpr double kSieveCap = 1e8;

struct Sieve {
    std::vector<bool> composite_odd;  // bit j <-> odd number 2j+1
    long long limit = 1;              // sieved through this value
    std::mutex mu;

    void grow(long long n) {
        if (n <= limit) return;
        const long long target = std::min(static_cast<long long>(kSieveCap),
                                          std::max(n, limit * 2));
        composite_odd.assign(static_cast<std::size_t>(target / 2 + 1), false);
        composite_odd[0] = true;  // 1 is not prime
        for (long long p = 3; p * p <= target; p += 2) {
            if (composite_odd[static_cast<std::size_t>(p / 2)]) continue;
            for (long long q = p * p; q <= target; q += 2 * p)
                composite_odd[static_cast<std::size_t>(q / 2)] = true;
        }
        limit = target;
    }

    long long count(long long n) {
        std::lock_guard lk(mu);
        grow(n);
        if (n < 2) return 0;
        long long c = 1;  // the prime 2
        for (long long m = 3; m <= n; m += 2)
            if (!composite_odd[static_cast<std::size_t>(m / 2)]) ++c;
        return c;
    }
};

Sieve& sieve() {
    static Sieve s;
    return s;
}

}  // namespace

long long prime_pi(double x) {
    if (!(x >= 2.0)) throw DomainError("prime_pi: x must be >= 2");
    if (x > kSieveCap) throw RangeExceeded("prime_pi: x above the 1e8 sieve cap");
    return sieve().count(static_cast<long long>(std::floor(x)));
}

// --------------------------------------------------------------------------
// LadderModel
// --------------------------------------------------------------------------

LadderModel::LadderModel(const EngineConfig& cfg, std::shared_ptr<HlStore> store)
    : cfg_(cfg), store_(std::move(store)) {
    cfg_.validate();
    if (!store_) throw DomainError("LadderModel needs a checkpoint store");
}

double LadderModel::V(double y) const {
    if (!(y >= v_floor()))
        throw DomainError("V: argument below the monotonicity floor e");
    return y * std::log(y) + (kEulerGamma - kLn2Pi) * y + cfg_.c0;
}

double LadderModel::V_prime(double y) const {
    if (!(y >= v_floor()))
        throw DomainError("V_prime: argument below the monotonicity floor e");
    return std::log(y) + 1.0 + kEulerGamma - kLn2Pi;
}

double LadderModel::v_inverse(double value) const {
    if (!(value > V(v_floor())))
        throw DomainError("phi1: I(T) below V(e), ladder undefined this low");
    // bracket [e, hi]
    double lo = v_floor();
    double hi = std::max(8.0, value);
    for (int i = 0; i < 200 && V(hi) < value; ++i) hi *= 2.0;
    if (V(hi) < value) throw ConvergenceFailure("v_inverse: no upper bracket");

    const double tol = cfg_.newton_tol * std::max(std::fabs(value), 1.0);
    double y = std::min(hi, std::max(lo + 0.5, value / std::max(1.0, std::log(value))));
    for (int it = 0; it < 200; ++it) {
        const double f = V(y) - value;
        if (std::fabs(f) <= tol) return y;
        if (f > 0.0) hi = y; else lo = y;
        const double step = f / V_prime(y);
        double next = y - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        if (next == y) return y;  // interval exhausted at machine resolution
        y = next;
    }
    throw ConvergenceFailure("v_inverse: Newton did not reach tolerance");
}

double LadderModel::phi1(double T) const {
    return v_inverse(store_->hl_integral(T));
}

double LadderModel::phi1_prime(double T) const {
    return zeta_sq(T, cfg_.rs_terms) / V_prime(phi1(T));
}

double LadderModel::phi1_forward(double x, int k) const {
    if (k < 0) throw DomainError("phi1_forward: k must be >= 0");
    double y = x;
    for (int i = 0; i < k; ++i) y = phi1(y);
    return y;
}

double LadderModel::solve_reverse_once(double target) const {
    // (2.5) predicts the preimage near target + (1-gamma) target / ln target.
    const double scale = (1.0 - kEulerGamma) * target / std::log(target);
    double lo = target;
    double hi = target + 4.0 * scale;
    store_->ensure(hi);
    if (phi1(hi) < target) {
        hi = target + 8.0 * scale;  // widen once
        store_->ensure(hi);
        if (phi1(hi) < target)
            throw BracketFailure("reverse_iterate: no root in widened bracket");
    }
    const double tol = std::max(1e-14 * target, 4e-11);
    double x = target + scale;  // asymptotic first guess
    double fx = phi1(x) - target;
    for (int it = 0; it < 160; ++it) {
        if (std::fabs(fx) <= tol) return x;
        if (fx > 0.0) hi = x; else lo = x;
        double next;
        const double dx = phi1_prime(x);
        if (dx > 1e-8) {
            next = x - fx / dx;
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        } else {
            next = 0.5 * (lo + hi);
        }
        if (next == x || hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * hi)
            return x;  // at machine resolution; |fx| is already near the noise floor
        x = next;
        fx = phi1(x) - target;
    }
    throw ConvergenceFailure("reverse_iterate: solver stalled");
}

double LadderModel::reverse_iterate(double T, int k) const {
    if (!(T >= cfg_.t_min)) throw HeightTooSmall("reverse_iterate: T below t_min");
    if (k < 0 || k > cfg_.k_max)
        throw DomainError("reverse_iterate: k outside [0, k_max]");
    double x = T;
    for (int i = 0; i < k; ++i) x = solve_reverse_once(x);
    return x;
}

double LadderModel::u_max(double T) const {
    const double lt = std::log(T);
    return T / (lt * lt);
}

void LadderModel::require_u(double T, double U) const {
    if (!(U > 0.0) || U > u_max(T))
        throw UTooLarge("U outside (0, T/ln^2 T]");
}

IteratedInterval LadderModel::iterated_interval(double T, double U, int r) const {
    if (!(T >= cfg_.t_min)) throw HeightTooSmall("iterated_interval: T below t_min");
    require_u(T, U);
    if (r < 0 || r > cfg_.k_max)
        throw DomainError("iterated_interval: level outside [0, k_max]");
    IteratedInterval iv;
    iv.level = r;
    iv.base_T = T;
    iv.base_U = U;
    iv.lo = reverse_iterate(T, r);
    iv.hi = reverse_iterate(T + U, r);
    if (!(iv.lo < iv.hi))
        throw ConvergenceFailure("iterated interval collapsed");
    if (iv.length() > 4.0 * u_max(T))
        throw ConvergenceFailure("iterated interval inflated past the o(T/ln T) bound");
    return iv;
}

DisconnectedSet LadderModel::disconnected_set(double T, double U, int k) const {
    if (!(T >= cfg_.t_min)) throw HeightTooSmall("disconnected_set: T below t_min");
    require_u(T, U);
    if (k < 0 || k > cfg_.k_max)
        throw DomainError("disconnected_set: k outside [0, k_max]");
    DisconnectedSet ds;
    double lo = T, hi = T + U;
    ds.components.push_back({0, T, U, lo, hi});
    for (int r = 1; r <= k; ++r) {
        lo = solve_reverse_once(lo);
        hi = solve_reverse_once(hi);
        if (!(lo > ds.components.back().hi))
            throw ConvergenceFailure("disconnected set components not ordered");
        if (!(lo < hi)) throw ConvergenceFailure("iterated interval collapsed");
        ds.components.push_back({r, T, U, lo, hi});
    }
    return ds;
}

double LadderModel::gap_ratio(double T, double U, int r) const {
    if (r < 1) throw DomainError("gap_ratio: r must be >= 1");
    const DisconnectedSet ds = disconnected_set(T, U, r);
    const double rho = ds.components[static_cast<std::size_t>(r)].lo -
                       ds.components[static_cast<std::size_t>(r) - 1].hi;
    return rho / ((1.0 - kEulerGamma) * static_cast<double>(prime_pi(std::floor(T))));
}

}  // namespace ladderlab
