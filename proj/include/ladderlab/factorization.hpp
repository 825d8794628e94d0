#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ladderlab/ladder.hpp"

namespace ladderlab {

// Class C~0 element on [T, T+U]: continuous, nonnegative, not identically 0.
// Evaluators are written in the offset s = t - origin so that the built-in
// trigonometric closed forms are exact regardless of how pi*L rounds.
struct AdmissibleFunction {
    std::string id;
    double origin = 0.0;
    std::function<double(double)> eval_s;       // f(origin + s)
    std::function<double(double)> mean_closed;  // optional closed form of (1/U) int f

    double operator()(double t) const { return eval_s(t - origin); }
    bool has_closed_form() const { return static_cast<bool>(mean_closed); }
};

// The six paper functions on [pi L, pi L + U], index 1..6:
//   1: s sin^2 s     2: s cos^2 s     3: s^2 sin^2 s
//   4: s^2 cos^2 s   5: sin^2 s       6: cos^2 s
// origin should be the (rounded) left endpoint pi*L.
AdmissibleFunction paper_function(int index, double origin);

AdmissibleFunction custom_function(std::string id, double origin,
                                   std::function<double(double)> eval_s);

// Sampled admissibility certificate (1000 points): min >= 0, max > 0.
// Throws NotAdmissible.
void certify_admissible(const AdmissibleFunction& f, double T, double U);

// F(U,T;f) = (1/U) int_T^{T+U} f.  Uses the closed form when present after
// checking it against quadrature to 1e-10 relative.
double f_mean(const LadderModel& model, const AdmissibleFunction& f, double T, double U);

// First-mean-value-theorem node: c in (a,b) with g(c) ~ mean(g), picked as the
// leftmost crossing of g - mean on a 1024-interval scan refined by bisection
// (deterministic selection; any MVT point satisfies the identities).
// `skip_crossings` advances to later crossings, used by the degenerate-node
// retry.  Constant g returns the midpoint.  Throws NoCrossing after the 4x
// rescan fails.
double mvt_node(const std::function<double(double)>& g, double a, double b,
                int skip_crossings = 0);

// Jacobian of the k-fold substitution: prod_{r=0}^{k-1} phi1'(phi1^r(w)).
double chain_weight(const LadderModel& model, double w, int k);

// Output of the node-generation operator: generating points d, e in the
// level-k interval and the projected nodes
//   alpha_r = phi1^{k-r}(d) (r = 0..k),  beta_r = phi1^{k-r}(e) (r = 1..k).
struct NodeVector {
    int k = 0;
    std::string f_id;
    double T = 0.0, U = 0.0;
    double d = 0.0, e = 0.0;
    std::vector<double> alpha;  // size k+1, alpha[r]
    std::vector<double> beta;   // size k,   beta[r-1]
    double min_zeta_beta = 0.0; // min over r of Z(beta_r)^2
};

struct FactorizationReport {
    std::string f_id;
    int k = 0;
    double T = 0.0, U = 0.0;
    double alpha0 = 0.0;
    double lhs_exact = 0.0;   // prod phi1'(alpha_r)/phi1'(beta_r)
    double lhs_zeta = 0.0;    // prod |zeta(1/2+i alpha_r)|^2 / |zeta(1/2+i beta_r)|^2
    double rhs = 0.0;         // F(U,T;f) / f(alpha_0)
    double residual_exact = 0.0;   // lhs_exact/rhs - 1
    double deviation_zeta = 0.0;   // lhs_zeta/rhs - 1
    double min_zeta_beta = 0.0;
};

// Shares level frames, chain-mean integrals and the f-independent e node
// between the functions of one experiment (the betas of Remark-15 fame).
class NodeFactory {
public:
    NodeFactory(const LadderModel& model, double T, double U);

    NodeVector generate(const AdmissibleFunction& f, int k);
    FactorizationReport check(const AdmissibleFunction& f, int k);

    const LadderModel& model() const { return model_; }
    double T() const { return T_; }
    double U() const { return U_; }

private:
    struct Level {
        double lo, hi;
    };
    const Level& frame(int k);
    double e_node(int k);            // cached per k, degenerate-guarded
    std::vector<double> iterate_path(double w, int k) const;  // w, phi1 w, ...
    double chain_from_path(const std::vector<double>& path) const;

    const LadderModel& model_;
    double T_, U_;
    std::vector<Level> frames_;          // index r
    std::map<int, double> e_cache_;
    std::map<int, double> mean_chain_;   // M_1(k)
};

NodeVector generate_nodes(const LadderModel& model, const AdmissibleFunction& f,
                          double T, double U, int k);

FactorizationReport factorization_check(const LadderModel& model, const AdmissibleFunction& f,
                                        double T, double U, int k);

// Lemma instances l = 1..6: factorization_check with the closed-form mean,
// cross-checked against quadrature to 1e-10 relative.
FactorizationReport lemma_family(const LadderModel& model, int l, double T, double U, int k);

}  // namespace ladderlab
