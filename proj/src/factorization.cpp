#include "ladderlab/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ladderlab/errors.hpp"
#include "ladderlab/quadrature.hpp"
#include "ladderlab/zeta.hpp"

namespace ladderlab {

namespace {

constexpr int kDegenerateRetries = 8;

double sq(double x) { return x * x; }

// (1/U) int_0^U s^p sin^2 s ds for p = 0,1,2.  The printed closed forms
// cancel catastrophically as U -> 0 (down to ~1e-4 relative for p = 2), so
// below 0.5 the Maclaurin series
//   sum_k (-1)^{k+1} 2^{2k-1} U^{2k+p} / ((2k)! (2k+p+1))
// is used instead; for p = 1 the algebraically equivalent nonnegative form
//   [ (sin U - U cos U)^2 + U^2 sin^2 U ] / (4U)
// is exact at every scale.
double sinsq_power_mean(int p, double U) {
    if (U < 0.5) {
        double sum = 0.0;
        double c2k = 2.0;                     // 2^{2k-1}
        double fact = 2.0;                    // (2k)!
        double upow = std::pow(U, p + 2);     // U^{2k+p}
        for (int k = 1; k <= 14; ++k) {
            sum += (k % 2 ? 1.0 : -1.0) * c2k * upow / (fact * (2 * k + p + 1));
            c2k *= 4.0;
            upow *= U * U;
            fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        }
        return sum;
    }
    switch (p) {
        case 0: return 0.5 - 0.25 * std::sin(2 * U) / U;
        case 1: {
            const double a = std::sin(U) - U * std::cos(U);
            return (a * a + U * U * sq(std::sin(U))) / (4.0 * U);
        }
        case 2:
            return U * U / 6.0 - 0.25 * (U * U - 0.5) * std::sin(2 * U) / U -
                   0.25 * std::cos(2 * U);
    }
    throw DomainError("sinsq_power_mean: p must be 0, 1 or 2");
}

}  // namespace

AdmissibleFunction paper_function(int index, double origin) {
    AdmissibleFunction f;
    f.origin = origin;
    switch (index) {
        case 1:
            f.id = "f1";
            f.eval_s = [](double s) { return s * sq(std::sin(s)); };
            f.mean_closed = [](double U) { return sinsq_power_mean(1, U); };
            break;
        case 2:
            f.id = "f2";
            f.eval_s = [](double s) { return s * sq(std::cos(s)); };
            f.mean_closed = [](double U) { return 0.5 * U - sinsq_power_mean(1, U); };
            break;
        case 3:
            f.id = "f3";
            f.eval_s = [](double s) { return s * s * sq(std::sin(s)); };
            f.mean_closed = [](double U) { return sinsq_power_mean(2, U); };
            break;
        case 4:
            f.id = "f4";
            f.eval_s = [](double s) { return s * s * sq(std::cos(s)); };
            f.mean_closed = [](double U) { return U * U / 3.0 - sinsq_power_mean(2, U); };
            break;
        case 5:
            f.id = "f5";
            f.eval_s = [](double s) { return sq(std::sin(s)); };
            f.mean_closed = [](double U) { return sinsq_power_mean(0, U); };
            break;
        case 6:
            f.id = "f6";
            f.eval_s = [](double s) { return sq(std::cos(s)); };
            f.mean_closed = [](double U) { return 1.0 - sinsq_power_mean(0, U); };
            break;
        default:
            throw DomainError("paper_function: index must be 1..6");
    }
    return f;
}

AdmissibleFunction custom_function(std::string id, double origin,
                                   std::function<double(double)> eval_s) {
    AdmissibleFunction f;
    f.id = std::move(id);
    f.origin = origin;
    f.eval_s = std::move(eval_s);
    return f;
}

void certify_admissible(const AdmissibleFunction& f, double T, double U) {
    if (!(U > 0.0)) throw NotAdmissible("admissibility needs U > 0");
    constexpr int n = 1000;
    double fmin = 0.0, fmax = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double v = f(T + U * i / n);
        if (!std::isfinite(v)) throw NotAdmissible(f.id + ": non-finite sample");
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
    }
    if (fmin < -1e-12 * std::max(1.0, fmax))
        throw NotAdmissible(f.id + ": negative sample in [T, T+U]");
    if (!(fmax > 0.0))
        throw NotAdmissible(f.id + ": identically zero on the sampled grid");
}

double f_mean(const LadderModel& model, const AdmissibleFunction& f, double T, double U) {
    certify_admissible(f, T, U);
    QuadratureSpec qs;
    // the closed-form agreement contract is 1e-10 relative, so the
    // quadrature side has to clear it with margin
    qs.rel_tol = std::min(1e-11, model.config().rel_tol);
    qs.abs_tol = std::min(1e-14, model.config().abs_tol);
    // integrate in the offset coordinate: abscissae keep full precision there,
    // while nodes materialized as T + s would carry ulp(T)/2 jitter
    const double shift = f.origin - T;  // 0 for the built-ins
    const IntegralResult r =
        integrate([&](double s) { return f.eval_s(s - shift); }, 0.0, U, qs, 1.0);
    const double quad = r.value / U;
    if (f.has_closed_form()) {
        const double closed = f.mean_closed(U);
        if (std::fabs(closed - quad) > 1e-10 * std::fabs(closed))
            throw ConvergenceFailure(f.id + ": closed-form mean and quadrature disagree");
        return closed;
    }
    if (!(quad > 0.0)) throw NotAdmissible(f.id + ": mean not positive");
    return quad;
}

// --------------------------------------------------------------------------
// mean value node
// --------------------------------------------------------------------------

namespace {

double refine_crossing(const std::function<double(double)>& h, double lo, double hi,
                       double hlo) {
    for (int it = 0; it < 100 && hi - lo > 1e-15 * (std::fabs(hi) + 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if (hm == 0.0) return mid;
        if ((hlo < 0.0) == (hm < 0.0)) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// leftmost crossing after skipping `skip` of them; -1 if none found
double scan_for_crossing(const std::function<double(double)>& g, double a, double b,
                         double target, int samples, int skip, bool* found) {
    const double h = (b - a) / samples;
    double x0 = a;
    double g0 = g(x0) - target;
    int seen = 0;
    for (int i = 1; i <= samples; ++i) {
        const double x1 = (i == samples) ? b : a + i * h;
        const double g1 = g(x1) - target;
        const bool crossing = (g0 == 0.0 && i > 1) || (g0 * g1 < 0.0);
        if (crossing) {
            if (seen++ == skip) {
                *found = true;
                if (g0 == 0.0) return x0;
                return refine_crossing([&](double x) { return g(x) - target; }, x0, x1, g0);
            }
        }
        x0 = x1;
        g0 = g1;
    }
    *found = false;
    return 0.0;
}

}  // namespace

double mvt_node(const std::function<double(double)>& g, double a, double b,
                int skip_crossings) {
    if (!(a < b)) throw InvalidInterval("mvt_node: need a < b");
    QuadratureSpec qs;
    const IntegralResult integral = integrate(g, a, b, qs, 0.0);
    const double target = integral.value / (b - a);

    // constant integrand: the stated rule returns the midpoint
    {
        constexpr int probes = 32;
        double dev = 0.0, scale = std::fabs(target);
        for (int i = 0; i <= probes; ++i) {
            const double v = g(a + (b - a) * i / probes);
            dev = std::max(dev, std::fabs(v - target));
            scale = std::max(scale, std::fabs(v));
        }
        if (dev <= 1e-13 * std::max(scale, 1e-300)) return 0.5 * (a + b);
    }

    bool found = false;
    double c = scan_for_crossing(g, a, b, target, 1024, skip_crossings, &found);
    if (!found)
        c = scan_for_crossing(g, a, b, target, 4096, skip_crossings, &found);
    if (!found)
        throw NoCrossing("mvt_node: no crossing located (continuity violated?)");
    if (std::fabs(g(c) * (b - a) - integral.value) >
        std::max(1e-10 * std::fabs(integral.value), qs.abs_tol))
        throw ConvergenceFailure("mvt_node: refined node misses the mean");
    return c;
}

double chain_weight(const LadderModel& model, double w, int k) {
    if (k < 0) throw DomainError("chain_weight: k must be >= 0");
    double prod = 1.0;
    double x = w;
    for (int r = 0; r < k; ++r) {
        prod *= model.phi1_prime(x);
        if (r + 1 < k) x = model.phi1(x);
    }
    return prod;
}

// --------------------------------------------------------------------------
// NodeFactory
// --------------------------------------------------------------------------

NodeFactory::NodeFactory(const LadderModel& model, double T, double U)
    : model_(model), T_(T), U_(U) {
    if (!(T >= model.config().t_min)) throw HeightTooSmall("NodeFactory: T below t_min");
    if (!(U > 0.0) || U > model.u_max(T)) throw UTooLarge("NodeFactory: inadmissible U");
    frames_.push_back({T, T + U});
}

const NodeFactory::Level& NodeFactory::frame(int k) {
    if (k < 0 || k > model_.config().k_max)
        throw DomainError("node level outside [0, k_max]");
    while (static_cast<int>(frames_.size()) <= k) {
        const auto& prev = frames_.back();
        const double lo = model_.reverse_iterate(prev.lo, 1);
        const double hi = model_.reverse_iterate(prev.hi, 1);
        if (!(lo < hi) || !(lo > prev.hi))
            throw ConvergenceFailure("level frames lost their ordering");
        frames_.push_back({lo, hi});
    }
    return frames_[static_cast<std::size_t>(k)];
}

std::vector<double> NodeFactory::iterate_path(double w, int k) const {
    std::vector<double> path(static_cast<std::size_t>(k) + 1);
    path[0] = w;
    for (int r = 1; r <= k; ++r) path[static_cast<std::size_t>(r)] = model_.phi1(path[r - 1]);
    return path;
}

double NodeFactory::chain_from_path(const std::vector<double>& path) const {
    // phi1'(y) = Z(y)^2 / V'(phi1(y)); phi1(path[r]) is path[r+1]
    double prod = 1.0;
    for (std::size_t r = 0; r + 1 < path.size(); ++r)
        prod *= zeta_sq(path[r], model_.config().rs_terms) / model_.V_prime(path[r + 1]);
    return prod;
}

double NodeFactory::e_node(int k) {
    if (auto it = e_cache_.find(k); it != e_cache_.end()) return it->second;
    const Level& lv = frame(k);
    auto g_chain = [&](double w) { return chain_from_path(iterate_path(w, k)); };

    QuadratureSpec qs;
    qs.rel_tol = model_.config().rel_tol;
    qs.abs_tol = model_.config().abs_tol;
    qs.min_panels_per_oscillation = model_.config().min_panels_per_oscillation;
    const double freq = 2.0 * theta_derivative(lv.hi);
    const IntegralResult m1 = integrate(g_chain, lv.lo, lv.hi, qs, freq);
    const double target = m1.value / (lv.hi - lv.lo);
    mean_chain_[k] = target;

    double e = 0.0;
    int skip = 0;
    for (; skip <= kDegenerateRetries; ++skip) {
        bool found = false;
        e = scan_for_crossing(g_chain, lv.lo, lv.hi, target, 1024, skip, &found);
        if (!found)
            e = scan_for_crossing(g_chain, lv.lo, lv.hi, target, 4096, skip, &found);
        if (!found)
            throw DegenerateNode("e node: crossings exhausted near zeta zeros");
        // beta_r = phi1^{k-r}(e): the path from e gives them all
        const auto path = iterate_path(e, k);
        double min_z = std::numeric_limits<double>::infinity();
        for (int r = 1; r <= k; ++r)
            min_z = std::min(min_z, zeta_sq(path[static_cast<std::size_t>(k - r)],
                                            model_.config().rs_terms));
        if (min_z >= model_.config().degenerate_floor) break;
        if (skip == kDegenerateRetries)
            throw DegenerateNode("e node: all retry crossings degenerate");
    }
    e_cache_[k] = e;
    return e;
}

NodeVector NodeFactory::generate(const AdmissibleFunction& f, int k) {
    if (k < 1 || k > model_.config().k_max)
        throw DomainError("generate_nodes: k outside [1, k_max]");
    certify_admissible(f, T_, U_);
    const Level& lv = frame(k);

    auto g_f = [&](double w) {
        const auto path = iterate_path(w, k);
        return f(path.back()) * chain_from_path(path);
    };

    QuadratureSpec qs;
    qs.rel_tol = model_.config().rel_tol;
    qs.abs_tol = model_.config().abs_tol;
    qs.min_panels_per_oscillation = model_.config().min_panels_per_oscillation;
    const double freq = 2.0 * theta_derivative(lv.hi);
    const IntegralResult mf = integrate(g_f, lv.lo, lv.hi, qs, freq);
    const double target = mf.value / (lv.hi - lv.lo);

    bool found = false;
    double d = scan_for_crossing(g_f, lv.lo, lv.hi, target, 1024, 0, &found);
    if (!found) d = scan_for_crossing(g_f, lv.lo, lv.hi, target, 4096, 0, &found);
    if (!found) throw NoCrossing("d node: no crossing located");

    const double e = e_node(k);

    NodeVector nv;
    nv.k = k;
    nv.f_id = f.id;
    nv.T = T_;
    nv.U = U_;
    nv.d = d;
    nv.e = e;
    const auto dpath = iterate_path(d, k);
    const auto epath = iterate_path(e, k);
    nv.alpha.resize(static_cast<std::size_t>(k) + 1);
    nv.beta.resize(static_cast<std::size_t>(k));
    for (int r = 0; r <= k; ++r) nv.alpha[static_cast<std::size_t>(r)] = dpath[k - r];
    for (int r = 1; r <= k; ++r) nv.beta[static_cast<std::size_t>(r - 1)] = epath[k - r];

    nv.min_zeta_beta = std::numeric_limits<double>::infinity();
    for (double b : nv.beta)
        nv.min_zeta_beta = std::min(nv.min_zeta_beta, zeta_sq(b, model_.config().rs_terms));

    // (3.4) membership
    const double slack = 1e-9 * T_;
    if (!(nv.alpha[0] > T_ - slack && nv.alpha[0] < T_ + U_ + slack))
        throw ConvergenceFailure("alpha_0 escaped the base interval");
    for (int r = 1; r <= k; ++r) {
        const Level& fr = frames_[static_cast<std::size_t>(r)];
        if (!(nv.alpha[r] > fr.lo - slack && nv.alpha[r] < fr.hi + slack) ||
            !(nv.beta[r - 1] > fr.lo - slack && nv.beta[r - 1] < fr.hi + slack))
            throw ConvergenceFailure("node escaped its level interval");
    }
    if (!(f(nv.alpha[0]) > 0.0))
        throw ConvergenceFailure("f(alpha_0) not positive");
    return nv;
}

FactorizationReport NodeFactory::check(const AdmissibleFunction& f, int k) {
    const NodeVector nv = generate(f, k);
    FactorizationReport rep;
    rep.f_id = f.id;
    rep.k = k;
    rep.T = T_;
    rep.U = U_;
    rep.alpha0 = nv.alpha[0];
    rep.min_zeta_beta = nv.min_zeta_beta;

    double ex = 1.0, zt = 1.0;
    for (int r = 1; r <= k; ++r) {
        const double a = nv.alpha[static_cast<std::size_t>(r)];
        const double b = nv.beta[static_cast<std::size_t>(r - 1)];
        ex *= model_.phi1_prime(a) / model_.phi1_prime(b);
        zt *= zeta_sq(a, model_.config().rs_terms) / zeta_sq(b, model_.config().rs_terms);
    }
    rep.lhs_exact = ex;
    rep.lhs_zeta = zt;
    rep.rhs = f_mean(model_, f, T_, U_) / f(nv.alpha[0]);
    rep.residual_exact = rep.lhs_exact / rep.rhs - 1.0;
    rep.deviation_zeta = rep.lhs_zeta / rep.rhs - 1.0;
    return rep;
}

NodeVector generate_nodes(const LadderModel& model, const AdmissibleFunction& f,
                          double T, double U, int k) {
    NodeFactory factory(model, T, U);
    return factory.generate(f, k);
}

FactorizationReport factorization_check(const LadderModel& model, const AdmissibleFunction& f,
                                        double T, double U, int k) {
    NodeFactory factory(model, T, U);
    return factory.check(f, k);
}

FactorizationReport lemma_family(const LadderModel& model, int l, double T, double U, int k) {
    const AdmissibleFunction f = paper_function(l, T);
    // f_mean already cross-checks the closed form against quadrature
    return factorization_check(model, f, T, U, k);
}

}  // namespace ladderlab
