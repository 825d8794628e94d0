#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ladderlab/factorization.hpp"

namespace ladderlab {

enum class Variant { exact, zeta };

const char* variant_name(Variant v);
Variant parse_variant(const std::string& s);

// Both sides of a crossbred identity.  The exact variant replaces every
// |zeta|^2 by phi1' and is an identity up to solver tolerance; the zeta
// variant is the finite-height experiment.
struct HybridReport {
    std::string formula;
    Variant variant = Variant::exact;
    double T = 0.0, U = 0.0;
    std::vector<int> levels;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs
    bool degenerate_flagged = false;
    double min_zeta_beta = 0.0;
    std::vector<std::string> active_functions;  // the zeta-family in play
};

// First crossbreeding stage: pair 12 checks f1+f2 against U/2, pair 34 checks
// f3+f4 against U^2/3.
HybridReport crossbreed_linear(const LadderModel& model, int pair, double T, double U,
                               int k_a, int k_b, Variant v);

// Complete hybrid formula (the law of 3/4):
//   lhs = { f1 term + f2 term }^2,  rhs = 3/4 { f3 term + f4 term }.
HybridReport chf_check(const LadderModel& model, double T, double U,
                       const std::array<int, 4>& ks, Variant v);

// sin^2/cos^2 complete hybrid: f5 term + f6 term against 1.
HybridReport sincos_chf(const LadderModel& model, double T, double U, int k5, int k6,
                        Variant v);

// Beta-product elimination: expresses prod_r |zeta(1/2 + i beta_r)|^2 through
// the sin^2/cos^2 alpha-products.  Returns the report comparing the
// expression (lhs) with the directly computed product (rhs).
HybridReport beta_product_expr(const LadderModel& model, double T, double U, int k,
                               Variant v);

// Secondary complete hybrid formula: the chf with every ratio product
// replaced by an alpha-only product divided by the corresponding
// sin^2/cos^2 alpha-product combination.
HybridReport secondary_chf_check(const LadderModel& model, double T, double U,
                                 const std::array<int, 4>& ks, Variant v);

// Count of morphologically distinct level assignments (k0 choices to the
// fourth power), exact in 128-bit arithmetic.
__int128 formula_count(long long k0);
std::string formula_count_str(long long k0);  // exact decimal rendering

// --------------------------------------------------------------------------
// sweep harness: realizes the L -> infinity claims as finite experiments
// --------------------------------------------------------------------------

enum class SweepFormula { lemma_f1, chf, sincos, secondary };

const char* sweep_formula_name(SweepFormula f);
SweepFormula parse_sweep_formula(const std::string& s);

struct SweepPoint {
    double L = 0.0;       // jittered L actually used
    double base_L = 0.0;  // grid L the sample belongs to
    bool failed = false;
    std::string error;
    HybridReport report;
};

struct ConvergenceSweep {
    SweepFormula formula = SweepFormula::chf;
    Variant variant = Variant::exact;
    double U = 0.0;
    std::vector<int> levels;
    std::vector<SweepPoint> points;               // ordered by (base_L, sample)
    std::map<int, double> decade_medians;         // decade -> median |ratio-1|
    std::string verdict;                          // PASS / FAIL
};

// L_list must be strictly increasing.  samples_per_decade are distributed
// over the grid Ls of each decade; each sample jitters L upward by up to 25%
// through a seeded splitmix64 stream, so runs are reproducible and
// independent of thread interleaving.  jobs <= 1 runs serially.
ConvergenceSweep sweep(const LadderModel& model, SweepFormula formula,
                       const std::vector<double>& L_list, double U,
                       const std::vector<int>& levels, Variant v,
                       int samples_per_decade, std::uint64_t seed, int jobs);

}  // namespace ladderlab
