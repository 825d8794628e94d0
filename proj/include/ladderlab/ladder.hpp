#pragma once

#include <memory>
#include <vector>

#include "ladderlab/config.hpp"
#include "ladderlab/hl_store.hpp"

namespace ladderlab {

// Exact prime count by sieve; x in [2, 1e8].  Throws DomainError below 2,
// RangeExceeded above the ceiling.  The sieve grows lazily and is shared.
long long prime_pi(double x);

// Level-r image of a base segment under reverse iteration.
struct IteratedInterval {
    int level = 0;
    double base_T = 0.0;
    double base_U = 0.0;
    double lo = 0.0;  // T^(r)
    double hi = 0.0;  // (T+U)^(r)
    double length() const { return hi - lo; }
};

// Base segment plus its reverse iterates, pairwise disjoint and ordered.
struct DisconnectedSet {
    std::vector<IteratedInterval> components;  // levels 0..k
};

// The calibrated ladder phi1.
//
// Realization: V(y) = y ln y + (gamma - ln 2pi) y + c0 is the almost-exact
// form of the Hardy-Littlewood integral, so phi1 is defined operationally as
//   phi1(T) = V^{-1}( I(T) ),    I(T) = integral_0^T Z^2,
// Newton-solved against the checkpoint store.  Differentiating the defining
// equation gives the substitution weight phi1'(T) = Z(T)^2 / V'(phi1(T)).
//
// All operations are reentrant; the only shared mutable state is the integral
// cache, which keeps its own single-writer discipline.
class LadderModel {
public:
    LadderModel(const EngineConfig& cfg, std::shared_ptr<HlStore> store);

    const EngineConfig& config() const { return cfg_; }
    HlStore& store() const { return *store_; }

    // V and its derivative; y must exceed the floor e (V strictly increasing
    // above it).  Throws DomainError below.
    double V(double y) const;
    double V_prime(double y) const;
    static double v_floor() { return 2.718281828459045; }

    double phi1(double T) const;
    double phi1_prime(double T) const;

    // k-fold forward composition phi1^k (k = 0 is the identity).
    double phi1_forward(double x, int k) const;

    // T^(k) = phi1^{-k}(T); k in [0, k_max].
    double reverse_iterate(double T, int k) const;

    // Admissibility surrogate for U = o(T / ln T).
    double u_max(double T) const;

    IteratedInterval iterated_interval(double T, double U, int r) const;
    DisconnectedSet disconnected_set(double T, double U, int k) const;

    // rho / ((1-gamma) * pi_sieve(floor(T))) for the level-r gap
    // rho = T^(r) - (T+U)^(r-1); expected to drift toward 1 as T grows.
    double gap_ratio(double T, double U, int r) const;

private:
    double v_inverse(double value) const;
    double solve_reverse_once(double target) const;
    void require_u(double T, double U) const;

    EngineConfig cfg_;
    std::shared_ptr<HlStore> store_;
};

}  // namespace ladderlab
