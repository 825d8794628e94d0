#include "ladderlab/hybrid.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "ladderlab/errors.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {

const char* variant_name(Variant v) { return v == Variant::exact ? "exact" : "zeta"; }

Variant parse_variant(const std::string& s) {
    if (s == "exact") return Variant::exact;
    if (s == "zeta") return Variant::zeta;
    throw DomainError("variant must be 'exact' or 'zeta'");
}

namespace {

double weight(const LadderModel& model, double x, Variant v) {
    return v == Variant::exact ? model.phi1_prime(x)
                               : zeta_sq(x, model.config().rs_terms);
}

// f(alpha_0) * prod_r w(alpha_r) / w(beta_r)
double ratio_term(const LadderModel& model, const AdmissibleFunction& f,
                  const NodeVector& nv, Variant v) {
    double prod = 1.0;
    for (int r = 1; r <= nv.k; ++r)
        prod *= weight(model, nv.alpha[static_cast<std::size_t>(r)], v) /
                weight(model, nv.beta[static_cast<std::size_t>(r - 1)], v);
    return f(nv.alpha[0]) * prod;
}

double alpha_product(const LadderModel& model, const NodeVector& nv, Variant v) {
    double prod = 1.0;
    for (int r = 1; r <= nv.k; ++r)
        prod *= weight(model, nv.alpha[static_cast<std::size_t>(r)], v);
    return prod;
}

double beta_product(const LadderModel& model, const NodeVector& nv, Variant v) {
    double prod = 1.0;
    for (double b : nv.beta) prod *= weight(model, b, v);
    return prod;
}

void require_levels(const LadderModel& model, std::initializer_list<int> ks) {
    for (int k : ks)
        if (k < 1 || k > model.config().k_max)
            throw LevelMismatch("iteration level outside [1, k_max]");
}

void fold_min_beta(const LadderModel& model, HybridReport& rep, const NodeVector& nv) {
    rep.min_zeta_beta = std::min(rep.min_zeta_beta, nv.min_zeta_beta);
    if (nv.min_zeta_beta < model.config().degenerate_floor) rep.degenerate_flagged = true;
}

HybridReport make_report(const char* formula, Variant v, double T, double U,
                         std::vector<int> levels) {
    HybridReport rep;
    rep.formula = formula;
    rep.variant = v;
    rep.T = T;
    rep.U = U;
    rep.levels = std::move(levels);
    rep.min_zeta_beta = std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace

HybridReport crossbreed_linear(const LadderModel& model, int pair, double T, double U,
                               int k_a, int k_b, Variant v) {
    if (pair != 12 && pair != 34)
        throw DomainError("crossbreed_linear: pair must be 12 or 34");
    require_levels(model, {k_a, k_b});
    NodeFactory factory(model, T, U);
    const int ia = (pair == 12) ? 1 : 3;
    const AdmissibleFunction fa = paper_function(ia, T);
    const AdmissibleFunction fb = paper_function(ia + 1, T);
    const NodeVector na = factory.generate(fa, k_a);
    const NodeVector nb = factory.generate(fb, k_b);

    auto rep = make_report(pair == 12 ? "crossbreed12" : "crossbreed34", v, T, U, {k_a, k_b});
    rep.lhs = ratio_term(model, fa, na, v) + ratio_term(model, fb, nb, v);
    rep.rhs = (pair == 12) ? 0.5 * U : U * U / 3.0;
    rep.ratio = rep.lhs / rep.rhs;
    fold_min_beta(model, rep, na);
    fold_min_beta(model, rep, nb);
    return rep;
}

HybridReport chf_check(const LadderModel& model, double T, double U,
                       const std::array<int, 4>& ks, Variant v) {
    require_levels(model, {ks[0], ks[1], ks[2], ks[3]});
    NodeFactory factory(model, T, U);
    auto rep = make_report("chf", v, T, U, {ks[0], ks[1], ks[2], ks[3]});
    double term[4];
    for (int l = 0; l < 4; ++l) {
        const AdmissibleFunction f = paper_function(l + 1, T);
        const NodeVector nv = factory.generate(f, ks[static_cast<std::size_t>(l)]);
        term[l] = ratio_term(model, f, nv, v);
        fold_min_beta(model, rep, nv);
    }
    const double s12 = term[0] + term[1];
    const double s34 = term[2] + term[3];
    rep.lhs = s12 * s12;
    rep.rhs = 0.75 * s34;
    rep.ratio = rep.lhs / rep.rhs;
    rep.active_functions = {"f1", "f2", "f3", "f4"};
    return rep;
}

HybridReport sincos_chf(const LadderModel& model, double T, double U, int k5, int k6,
                        Variant v) {
    require_levels(model, {k5, k6});
    NodeFactory factory(model, T, U);
    const AdmissibleFunction f5 = paper_function(5, T);
    const AdmissibleFunction f6 = paper_function(6, T);
    const NodeVector n5 = factory.generate(f5, k5);
    const NodeVector n6 = factory.generate(f6, k6);

    auto rep = make_report("sincos", v, T, U, {k5, k6});
    rep.lhs = ratio_term(model, f5, n5, v) + ratio_term(model, f6, n6, v);
    rep.rhs = 1.0;
    rep.ratio = rep.lhs;
    rep.active_functions = {"f5", "f6"};
    fold_min_beta(model, rep, n5);
    fold_min_beta(model, rep, n6);
    return rep;
}

HybridReport beta_product_expr(const LadderModel& model, double T, double U, int k,
                               Variant v) {
    require_levels(model, {k});
    NodeFactory factory(model, T, U);
    const AdmissibleFunction f5 = paper_function(5, T);
    const AdmissibleFunction f6 = paper_function(6, T);
    const NodeVector n5 = factory.generate(f5, k);
    const NodeVector n6 = factory.generate(f6, k);

    auto rep = make_report("beta_product", v, T, U, {k});
    rep.lhs = f5(n5.alpha[0]) * alpha_product(model, n5, v) +
              f6(n6.alpha[0]) * alpha_product(model, n6, v);
    rep.rhs = beta_product(model, n5, v);  // betas shared by construction
    rep.ratio = rep.lhs / rep.rhs;
    fold_min_beta(model, rep, n5);
    fold_min_beta(model, rep, n6);
    return rep;
}

HybridReport secondary_chf_check(const LadderModel& model, double T, double U,
                                 const std::array<int, 4>& ks, Variant v) {
    require_levels(model, {ks[0], ks[1], ks[2], ks[3]});
    NodeFactory factory(model, T, U);
    const AdmissibleFunction f5 = paper_function(5, T);
    const AdmissibleFunction f6 = paper_function(6, T);

    auto rep = make_report("secondary", v, T, U, {ks[0], ks[1], ks[2], ks[3]});
    double term[4];
    for (int l = 0; l < 4; ++l) {
        const int k = ks[static_cast<std::size_t>(l)];
        const AdmissibleFunction f = paper_function(l + 1, T);
        const NodeVector nv = factory.generate(f, k);
        const NodeVector n5 = factory.generate(f5, k);
        const NodeVector n6 = factory.generate(f6, k);
        const double denom = f5(n5.alpha[0]) * alpha_product(model, n5, v) +
                             f6(n6.alpha[0]) * alpha_product(model, n6, v);
        if (!(denom > 0.0))
            throw DegenerateNode("secondary: sin^2/cos^2 denominator vanished");
        term[l] = f(nv.alpha[0]) * alpha_product(model, nv, v) / denom;
        fold_min_beta(model, rep, nv);
        fold_min_beta(model, rep, n5);
        fold_min_beta(model, rep, n6);
    }
    const double s12 = term[0] + term[1];
    const double s34 = term[2] + term[3];
    rep.lhs = s12 * s12;
    rep.rhs = 0.75 * s34;
    rep.ratio = rep.lhs / rep.rhs;
    rep.active_functions = {"f5", "f6", "f1", "f2", "f3", "f4"};
    return rep;
}

__int128 formula_count(long long k0) {
    if (k0 < 1) throw DomainError("formula_count: k0 must be >= 1");
    const __int128 k = k0;
    return k * k * k * k;
}

std::string formula_count_str(long long k0) {
    __int128 v = formula_count(k0);
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s.empty() ? "0" : s;
}

// --------------------------------------------------------------------------
// sweep harness
// --------------------------------------------------------------------------

const char* sweep_formula_name(SweepFormula f) {
    switch (f) {
        case SweepFormula::lemma_f1: return "lemma_f1";
        case SweepFormula::chf: return "chf";
        case SweepFormula::sincos: return "sincos";
        case SweepFormula::secondary: return "secondary";
    }
    return "?";
}

SweepFormula parse_sweep_formula(const std::string& s) {
    if (s == "lemma" || s == "lemma_f1") return SweepFormula::lemma_f1;
    if (s == "chf") return SweepFormula::chf;
    if (s == "sincos") return SweepFormula::sincos;
    if (s == "secondary") return SweepFormula::secondary;
    throw DomainError("unknown sweep formula '" + s + "'");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double unit_double(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

int decade_of(double L) { return static_cast<int>(std::floor(std::log10(L) + 1e-12)); }

HybridReport run_formula(const LadderModel& model, SweepFormula formula, double T,
                         double U, const std::vector<int>& levels, Variant v) {
    auto lv = [&](std::size_t i) { return levels.empty() ? 1 : levels[std::min(i, levels.size() - 1)]; };
    switch (formula) {
        case SweepFormula::lemma_f1: {
            NodeFactory factory(model, T, U);
            const FactorizationReport fr = factory.check(paper_function(1, T), lv(0));
            HybridReport rep = make_report("lemma_f1", v, T, U, {lv(0)});
            rep.lhs = (v == Variant::exact) ? fr.lhs_exact : fr.lhs_zeta;
            rep.rhs = fr.rhs;
            rep.ratio = rep.lhs / rep.rhs;
            rep.min_zeta_beta = fr.min_zeta_beta;
            rep.degenerate_flagged = fr.min_zeta_beta < 1e-12;
            return rep;
        }
        case SweepFormula::chf:
            return chf_check(model, T, U, {lv(0), lv(1), lv(2), lv(3)}, v);
        case SweepFormula::sincos:
            return sincos_chf(model, T, U, lv(0), lv(1), v);
        case SweepFormula::secondary:
            return secondary_chf_check(model, T, U, {lv(0), lv(1), lv(2), lv(3)}, v);
    }
    throw DomainError("unreachable sweep formula");
}

}  // namespace

ConvergenceSweep sweep(const LadderModel& model, SweepFormula formula,
                       const std::vector<double>& L_list, double U,
                       const std::vector<int>& levels, Variant v,
                       int samples_per_decade, std::uint64_t seed, int jobs) {
    if (L_list.empty()) {
        ConvergenceSweep empty;
        empty.formula = formula;
        empty.variant = v;
        empty.U = U;
        empty.levels = levels;
        empty.verdict = "FAIL";
        return empty;
    }
    for (std::size_t i = 1; i < L_list.size(); ++i)
        if (!(L_list[i] > L_list[i - 1]))
            throw DomainError("sweep: L_list must be strictly increasing");

    // distribute samples_per_decade over the grid Ls of each decade
    std::map<int, std::vector<std::size_t>> by_decade;
    for (std::size_t i = 0; i < L_list.size(); ++i)
        by_decade[decade_of(L_list[i])].push_back(i);
    std::vector<int> samples_at(L_list.size(), 0);
    for (const auto& [dec, idxs] : by_decade) {
        const int base = samples_per_decade / static_cast<int>(idxs.size());
        const int extra = samples_per_decade % static_cast<int>(idxs.size());
        for (std::size_t j = 0; j < idxs.size(); ++j)
            samples_at[idxs[j]] = base + (static_cast<int>(j) < extra ? 1 : 0);
    }

    struct Task {
        std::size_t li;
        int sample;
        double L;
    };
    std::vector<Task> tasks;
    for (std::size_t li = 0; li < L_list.size(); ++li) {
        for (int j = 0; j < samples_at[li]; ++j) {
            const std::uint64_t h = splitmix64(seed ^ splitmix64(li * 1000003ull + j));
            const double L = L_list[li] * (1.0 + 0.25 * unit_double(h));
            tasks.push_back({li, j, L});
        }
    }

    ConvergenceSweep sw;
    sw.formula = formula;
    sw.variant = v;
    sw.U = U;
    sw.levels = levels;
    sw.points.resize(tasks.size());

    auto run_task = [&](std::size_t i) {
        const Task& tk = tasks[i];
        SweepPoint& pt = sw.points[i];
        pt.L = tk.L;
        pt.base_L = L_list[tk.li];
        try {
            pt.report = run_formula(model, formula, kPi * tk.L, U, levels, v);
        } catch (const Error& e) {
            pt.failed = true;
            pt.error = e.what();
        }
    };

    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    // decade medians of |ratio - 1|
    std::map<int, std::vector<double>> devs;
    for (const auto& pt : sw.points)
        if (!pt.failed) devs[decade_of(pt.base_L)].push_back(std::fabs(pt.report.ratio - 1.0));
    for (auto& [dec, v2] : devs) {
        std::sort(v2.begin(), v2.end());
        const std::size_t n = v2.size();
        sw.decade_medians[dec] =
            (n % 2 == 1) ? v2[n / 2] : 0.5 * (v2[n / 2 - 1] + v2[n / 2]);
    }
    // Verdict: exact runs are identity checks (every point must sit at the
    // identity); zeta runs are convergence experiments (top decade median
    // strictly below the bottom one).
    bool pass = !sw.decade_medians.empty();
    if (v == Variant::exact) {
        for (const auto& pt : sw.points)
            if (!pt.failed && !(std::fabs(pt.report.ratio - 1.0) <= 1e-5)) pass = false;
    } else if (pass && sw.decade_medians.size() >= 2) {
        const double bottom = sw.decade_medians.begin()->second;
        const double top = sw.decade_medians.rbegin()->second;
        pass = top < bottom;
    }
    for (const auto& pt : sw.points)
        if (pt.failed) pass = false;
    sw.verdict = pass ? "PASS" : "FAIL";
    return sw;
}

}  // namespace ladderlab
