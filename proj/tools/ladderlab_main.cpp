// ladderlab command line front end.
//
// Exit codes: 0 success / verification PASS, 1 verification FAIL,
//             2 usage error, 3 numerical engine error.

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ladderlab/errors.hpp"
#include "ladderlab/factorization.hpp"
#include "ladderlab/hl_store.hpp"
#include "ladderlab/hybrid.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/oracle.hpp"
#include "ladderlab/report.hpp"
#include "ladderlab/zeta.hpp"

namespace ll = ladderlab;

namespace {

struct Cli {
    std::string config_path;
    std::string cache_path;
    std::string out_dir = "reports";
    std::string format = "both";  // csv | json | both
    int jobs = 1;

    // config overrides (only applied when the flag was given)
    std::optional<double> c0, newton_tol, t_min, u_default, kappa;
    std::optional<int> k_max, samples_per_decade, rs_terms;
    std::optional<std::uint64_t> seed;

    ll::EngineConfig resolve_config() const {
        ll::EngineConfig cfg;
        if (!config_path.empty()) cfg = ll::load_config_file(config_path, cfg);
        if (c0) cfg.c0 = *c0;
        if (newton_tol) cfg.newton_tol = *newton_tol;
        if (t_min) cfg.t_min = *t_min;
        if (u_default) cfg.u_default = *u_default;
        if (kappa) cfg.kappa = *kappa;
        if (k_max) cfg.k_max = *k_max;
        if (samples_per_decade) cfg.samples_per_decade = *samples_per_decade;
        if (rs_terms) cfg.rs_terms = *rs_terms;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }

    std::string resolve_cache() const {
        if (!cache_path.empty()) return cache_path;
        if (const char* env = std::getenv("LADDERLAB_CACHE")) return env;
        return {};
    }
};

struct UArg {
    double U = 0.0;
    double U_pi = 0.0;
    double resolve(const ll::EngineConfig& cfg) const {
        if (U > 0.0 && U_pi > 0.0)
            throw ll::DomainError("give either --U or --U-pi, not both");
        if (U_pi > 0.0) return U_pi * ll::kPi;
        if (U > 0.0) return U;
        return cfg.u_default;
    }
};

void add_u_options(CLI::App* cmd, UArg& u) {
    cmd->add_option("--U", u.U, "segment length (decimal)");
    cmd->add_option("--U-pi", u.U_pi, "segment length as a fraction of pi");
}

std::vector<double> parse_L_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::strtod(s.substr(pos, comma - pos).c_str(), nullptr));
        pos = comma + 1;
    }
    if (out.empty()) throw ll::DomainError("empty --L list");
    return out;
}

double zeta_budget(const ll::EngineConfig& cfg, double L) {
    const double x = std::log(ll::kPi * L);
    return cfg.kappa * std::log(x) / x;
}

struct Session {
    ll::EngineConfig cfg;
    std::shared_ptr<ll::HlStore> store;
    std::unique_ptr<ll::LadderModel> model;

    Session(const ll::EngineConfig& config, const Cli& cli) : cfg(config) {
        store = std::make_shared<ll::HlStore>(cfg, cli.resolve_cache());
        for (const auto& w : store->warnings())
            std::cerr << "warning: " << w << "\n";
        model = std::make_unique<ll::LadderModel>(cfg, store);
    }
    ~Session() {
        if (store && store->persistent()) {
            try { store->save(); } catch (...) {}
        }
    }
};

void emit_sweep(const Cli& cli, const ll::ConvergenceSweep& sw) {
    const std::string base = std::string("sweep_") + ll::sweep_formula_name(sw.formula) +
                             "_" + ll::variant_name(sw.variant);
    const std::filesystem::path dir = cli.out_dir;
    if (cli.format == "json" || cli.format == "both")
        ll::write_text(dir / (base + ".json"), ll::sweep_json(sw));
    if (cli.format == "csv" || cli.format == "both")
        ll::write_text(dir / (base + ".csv"), ll::sweep_csv(sw));
    ll::write_sidecar(dir, base);
    std::printf("wrote %s reports to %s (verdict %s)\n", base.c_str(),
                dir.string().c_str(), sw.verdict.c_str());
}

int report_hybrid(const char* what, const ll::HybridReport& rep, double tol_exact,
                  const ll::EngineConfig& cfg, double L) {
    std::printf("%s variant=%s lhs=%.15g rhs=%.15g ratio=%.15g |ratio-1|=%.3e\n", what,
                ll::variant_name(rep.variant), rep.lhs, rep.rhs, rep.ratio,
                std::fabs(rep.ratio - 1.0));
    if (rep.variant == ll::Variant::exact) {
        const bool ok = std::fabs(rep.ratio - 1.0) <= tol_exact;
        std::printf("%s (exact identity tolerance %g)\n", ok ? "PASS" : "FAIL", tol_exact);
        return ok ? 0 : 1;
    }
    if (L >= 1e4) {
        const double budget = zeta_budget(cfg, L);
        const bool ok = std::fabs(rep.ratio - 1.0) <= budget;
        std::printf("%s (zeta-variant budget kappa*lnln/ln = %.3e)\n",
                    ok ? "PASS" : "FAIL", budget);
        return ok ? 0 : 1;
    }
    std::printf("REPORTED (no budget below L = 1e4)\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for ladder factorization formulas on the critical line"};
    app.require_subcommand(1);
    app.fallthrough();
    Cli cli;

    app.add_option("--config", cli.config_path, "flat key=value config file");
    app.add_option("--cache", cli.cache_path,
                   "checkpoint store path (default env LADDERLAB_CACHE, else in-memory)");
    app.add_option("--out", cli.out_dir, "report output directory")->capture_default_str();
    app.add_option("--format", cli.format, "report format: csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}))->capture_default_str();
    app.add_option("--jobs", cli.jobs, "worker threads for sweeps")->capture_default_str();
    app.add_option("--c0", cli.c0, "Titchmarsh-Kober-Atkinson constant");
    app.add_option("--k-max", cli.k_max, "reverse iteration ceiling");
    app.add_option("--newton-tol", cli.newton_tol, "ladder inversion tolerance");
    app.add_option("--t-min", cli.t_min, "engine floor (>= 10)");
    app.add_option("--u-default", cli.u_default, "default segment length");
    app.add_option("--seed", cli.seed, "sweep sample placement seed");
    app.add_option("--samples-per-decade", cli.samples_per_decade, "sweep density");
    app.add_option("--kappa", cli.kappa, "zeta-variant deviation budget constant");
    app.add_option("--rs-terms", cli.rs_terms, "Riemann-Siegel correction terms (1..5)");

    // ---- zeta ----
    auto* c_zeta = app.add_subcommand("zeta", "evaluate Z(t) and |zeta(1/2+it)|^2");
    double zeta_t = 0.0;
    bool zeta_oracle = false, zeta_spectrum = false;
    c_zeta->add_option("--t", zeta_t, "height on the critical line")->required();
    c_zeta->add_flag("--oracle", zeta_oracle, "also print the Euler-Maclaurin reference");
    c_zeta->add_flag("--spectrum", zeta_spectrum, "print the local oscillator spectrum");

    // ---- ladder ----
    auto* c_ladder = app.add_subcommand("ladder", "phi1, reverse iterates and gaps");
    double ladder_T = 0.0;
    int ladder_k = 1;
    UArg ladder_u;
    c_ladder->add_option("--T", ladder_T, "base height")->required();
    c_ladder->add_option("--k", ladder_k, "levels to display")->capture_default_str();
    add_u_options(c_ladder, ladder_u);

    // ---- nodes ----
    auto* c_nodes = app.add_subcommand("nodes", "generate an alpha/beta node vector");
    double nodes_L = 0.0;
    int nodes_k = 1;
    std::string nodes_f = "f1";
    UArg nodes_u;
    c_nodes->add_option("--L", nodes_L, "base L (segment starts at pi*L)")->required();
    c_nodes->add_option("--k", nodes_k, "iteration level")->capture_default_str();
    c_nodes->add_option("--f", nodes_f, "f1..f6")->capture_default_str();
    add_u_options(c_nodes, nodes_u);

    // ---- verify ----
    auto* c_verify = app.add_subcommand("verify", "check one formula instance");
    c_verify->require_subcommand(1);
    struct VerifyArgs {
        double L = 0.0;
        UArg u;
        int k = 1, k5 = 0, k6 = 0, lemma = 1;
        std::array<int, 4> k4{0, 0, 0, 0};
        std::string variant = "exact";
        std::array<int, 4> resolved(int def) const {
            std::array<int, 4> out{};
            for (int i = 0; i < 4; ++i) out[i] = k4[i] > 0 ? k4[i] : (k > 0 ? k : def);
            return out;
        }
    } va;
    for (const char* name : {"lemma", "chf", "sincos", "secondary"}) {
        auto* sub = c_verify->add_subcommand(name);
        sub->add_option("--L", va.L, "base L")->required();
        add_u_options(sub, va.u);
        sub->add_option("--k", va.k, "iteration level (broadcast)");
        sub->add_option("--variant", va.variant, "exact or zeta")
            ->check(CLI::IsMember({"exact", "zeta"}));
        if (std::string(name) == "lemma")
            sub->add_option("--lemma", va.lemma, "lemma index 1..6");
        if (std::string(name) == "chf" || std::string(name) == "secondary") {
            sub->add_option("--k1", va.k4[0]);
            sub->add_option("--k2", va.k4[1]);
            sub->add_option("--k3", va.k4[2]);
            sub->add_option("--k4", va.k4[3]);
        }
        if (std::string(name) == "sincos") {
            sub->add_option("--k5", va.k5);
            sub->add_option("--k6", va.k6);
        }
    }

    // ---- sweep ----
    auto* c_sweep = app.add_subcommand("sweep", "convergence sweep over L");
    c_sweep->require_subcommand(1);
    struct SweepArgs {
        std::string L_csv = "1000,3000,10000,30000,100000";
        UArg u;
        int k = 1;
        std::string variant = "zeta";
    } sa;
    for (const char* name : {"lemma", "chf", "sincos", "secondary"}) {
        auto* sub = c_sweep->add_subcommand(name);
        sub->add_option("--L", sa.L_csv, "comma separated L grid")->capture_default_str();
        add_u_options(sub, sa.u);
        sub->add_option("--k", sa.k, "iteration level (broadcast)");
        sub->add_option("--variant", sa.variant, "exact or zeta")
            ->check(CLI::IsMember({"exact", "zeta"}));
    }

    // ---- cache ----
    auto* c_cache = app.add_subcommand("cache", "checkpoint store maintenance");
    c_cache->require_subcommand(1);
    auto* cc_build = c_cache->add_subcommand("build", "extend the store");
    double cache_to = 0.0;
    cc_build->add_option("--to", cache_to, "target height T")->required();
    c_cache->add_subcommand("info", "print store summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    // config problems are usage errors: collect and report them all at once
    ll::EngineConfig cfg;
    try {
        cfg = cli.resolve_config();
    } catch (const ll::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_zeta->parsed()) {
            const double z = ll::z_value(zeta_t, cfg.rs_terms);
            std::printf("t = %.15g\ntheta(t) = %.15g\nZ(t) = %.15g\n|zeta(1/2+it)|^2 = %.15g\n",
                        zeta_t, ll::theta(zeta_t), z, z * z);
            if (zeta_oracle) {
                const std::complex<double> o = ll::oracle_zeta_half(zeta_t);
                std::printf("oracle zeta(1/2+it) = %.15g%+.15gi  |.|^2 = %.15g\n",
                            o.real(), o.imag(), std::norm(o));
            }
            if (zeta_spectrum) {
                const auto sp = ll::local_spectrum(zeta_t);
                std::printf("tau = %.15g, psi = %.15g, %zu oscillators\n", sp.cutoff,
                            sp.phase_constant, sp.terms.size());
                for (const auto& term : sp.terms)
                    std::printf("  n=%d amplitude=%.15g frequency=%.15g\n", term.n,
                                term.amplitude, term.frequency);
            }
            return 0;
        }

        if (c_ladder->parsed()) {
            Session s(cfg, cli);
            const double U = ladder_u.resolve(s.cfg);
            std::printf("T = %.15g\nI(T) = %.15g\nphi1(T) = %.15g\nphi1'(T) = %.15g\n",
                        ladder_T, s.store->hl_integral(ladder_T), s.model->phi1(ladder_T),
                        s.model->phi1_prime(ladder_T));
            const auto ds = s.model->disconnected_set(ladder_T, U, ladder_k);
            for (const auto& c : ds.components)
                std::printf("level %d: [%.15g, %.15g] length %.6g\n", c.level, c.lo, c.hi,
                            c.length());
            for (int r = 1; r <= ladder_k; ++r)
                std::printf("gap_ratio(r=%d) = %.6f\n", r,
                            s.model->gap_ratio(ladder_T, U, r));
            return 0;
        }

        if (c_nodes->parsed()) {
            Session s(cfg, cli);
            const double U = nodes_u.resolve(s.cfg);
            const double T = ll::kPi * nodes_L;
            int fi = 1;
            if (nodes_f.size() == 2 && nodes_f[0] == 'f') fi = nodes_f[1] - '0';
            else throw ll::DomainError("--f must be f1..f6");
            const auto rep = ll::factorization_check(*s.model,
                                                     ll::paper_function(fi, T), T, U, nodes_k);
            const auto nv = ll::generate_nodes(*s.model,
                                               ll::paper_function(fi, T), T, U, nodes_k);
            std::printf("d = %.15g\ne = %.15g\n", nv.d, nv.e);
            for (std::size_t r = 0; r < nv.alpha.size(); ++r)
                std::printf("alpha_%zu = %.15g\n", r, nv.alpha[r]);
            for (std::size_t r = 0; r < nv.beta.size(); ++r)
                std::printf("beta_%zu = %.15g\n", r + 1, nv.beta[r]);
            std::printf("residual_exact = %.3e\ndeviation_zeta = %.3e\n", rep.residual_exact,
                        rep.deviation_zeta);
            const std::filesystem::path dir = cli.out_dir;
            ll::write_text(dir / ("nodes_" + nv.f_id + "_k" + std::to_string(nodes_k) + ".csv"),
                           ll::factorization_csv({rep}));
            ll::write_sidecar(dir, "nodes");
            return 0;
        }

        if (c_verify->parsed()) {
            Session s(cfg, cli);
            const double U = va.u.resolve(s.cfg);
            const double T = ll::kPi * va.L;
            const ll::Variant v = ll::parse_variant(va.variant);
            CLI::App* sub = c_verify->get_subcommands().front();
            const std::string which = sub->get_name();
            if (which == "lemma") {
                const auto rep = ll::lemma_family(*s.model, va.lemma, T, U,
                                                  va.k > 0 ? va.k : 1);
                const double dev = v == ll::Variant::exact ? rep.residual_exact
                                                           : rep.deviation_zeta;
                std::printf("lemma %d k=%d L=%.15g U=%.15g\nresidual_exact=%.3e "
                            "deviation_zeta=%.3e min|zeta(beta)|^2=%.3e\n",
                            va.lemma, rep.k, va.L, U, rep.residual_exact,
                            rep.deviation_zeta, rep.min_zeta_beta);
                if (v == ll::Variant::exact) {
                    std::printf("%s (tolerance 1e-6)\n", std::fabs(dev) <= 1e-6 ? "PASS" : "FAIL");
                    return std::fabs(dev) <= 1e-6 ? 0 : 1;
                }
                if (va.L >= 1e4) {
                    const double budget = zeta_budget(s.cfg, va.L);
                    std::printf("%s (budget %.3e)\n",
                                std::fabs(dev) <= budget ? "PASS" : "FAIL", budget);
                    return std::fabs(dev) <= budget ? 0 : 1;
                }
                std::printf("REPORTED (no budget below L = 1e4)\n");
                return 0;
            }
            if (which == "chf")
                return report_hybrid("chf", ll::chf_check(*s.model, T, U, va.resolved(1), v),
                                     1e-6, s.cfg, va.L);
            if (which == "sincos")
                return report_hybrid(
                    "sincos",
                    ll::sincos_chf(*s.model, T, U, va.k5 > 0 ? va.k5 : va.k,
                                   va.k6 > 0 ? va.k6 : va.k, v),
                    1e-8, s.cfg, va.L);
            return report_hybrid("secondary",
                                 ll::secondary_chf_check(*s.model, T, U, va.resolved(1), v),
                                 1e-5, s.cfg, va.L);
        }

        if (c_sweep->parsed()) {
            Session s(cfg, cli);
            const double U = sa.u.resolve(s.cfg);
            CLI::App* sub = c_sweep->get_subcommands().front();
            const auto sw = ll::sweep(*s.model, ll::parse_sweep_formula(sub->get_name()),
                                      parse_L_list(sa.L_csv), U, {sa.k},
                                      ll::parse_variant(sa.variant), s.cfg.samples_per_decade,
                                      s.cfg.seed, cli.jobs);
            emit_sweep(cli, sw);
            return sw.verdict == "PASS" ? 0 : 1;
        }

        if (c_cache->parsed()) {
            Session s(cfg, cli);
            CLI::App* sub = c_cache->get_subcommands().front();
            if (sub->get_name() == "build") {
                s.store->ensure(cache_to);
                s.store->save();
                std::printf("store extended to T >= %.15g (%zu rows)\n", cache_to,
                            s.store->table().rows.size());
                return 0;
            }
            const auto& t = s.store->table();
            std::printf("fingerprint = %s\npersistent = %s\nrows = %zu\n",
                        t.fingerprint.c_str(), s.store->persistent() ? "yes" : "no",
                        t.rows.size());
            if (!t.rows.empty())
                std::printf("T range [%.15g, %.15g], I range [%.15g, %.15g]\n",
                            t.rows.front().t, t.rows.back().t, t.rows.front().i,
                            t.rows.back().i);
            return 0;
        }
    } catch (const ll::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
