#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace ladderlab {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kLn2Pi = 1.8378770664093454836;  // ln(2*pi)
inline constexpr double kEulerGamma = 0.57721566490153286061;

// Hard floor of the Riemann-Siegel asymptotics; config t_min may only raise it.
inline constexpr double kHardTMin = 10.0;

// Tuning knobs shared by the zeta engine, the integral store and the ladder.
// Everything here enters the checkpoint fingerprint, so a change invalidates
// cached integrals instead of silently mixing with them.
struct EngineConfig {
    double t_min = kHardTMin;
    int rs_terms = 5;           // Riemann-Siegel correction terms C0..C4
    double c0 = 0.0;            // Titchmarsh-Kober-Atkinson constant
    int k_max = 5;              // reverse-iteration depth ceiling
    double newton_tol = 1e-12;  // relative tolerance of V(phi1) = I(T)
    double u_default = kPi / 4.0;

    // quadrature defaults
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int min_panels_per_oscillation = 8;
    int max_depth = 40;

    // checkpoint store layout
    double stride = 50.0;     // persisted row spacing in T
    double substride = 0.5;   // in-memory prefix resolution within a stride

    // node generation
    double degenerate_floor = 1e-12;  // |zeta(1/2+i beta)|^2 must stay above

    // sweep harness
    int samples_per_decade = 20;
    std::uint64_t seed = 0x1adde21ab;
    // zeta-variant deviation budget: |ratio-1| <= kappa * lnln(piL)/ln(piL).
    // Calibrated from a pilot sweep (worst sampled deviation at L >= 1e4 was
    // 1.5e-6 at k = 1, U = pi/4; the budget keeps ~30x headroom for k <= 5
    // and U up to pi/2).
    double kappa = 0.002;

    void validate() const;  // throws DomainError on nonsense values
};

// Flat key=value config file ("#" comments, blank lines ignored).
// Unknown keys are rejected so typos do not pass silently.
EngineConfig load_config_file(const std::filesystem::path& path, EngineConfig base = {});

// Applies one key=value pair; used by both the file loader and CLI overrides.
void apply_config_key(EngineConfig& cfg, const std::string& key, const std::string& value);

}  // namespace ladderlab
