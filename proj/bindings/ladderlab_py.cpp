#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ladderlab/errors.hpp"
#include "ladderlab/factorization.hpp"
#include "ladderlab/hl_store.hpp"
#include "ladderlab/hybrid.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/oracle.hpp"
#include "ladderlab/zeta.hpp"

namespace py = pybind11;
using namespace ladderlab;

namespace {

// Owns the store + model pair behind one config; the Python-facing handle.
class Lab {
public:
    explicit Lab(const EngineConfig& cfg, const std::string& cache_path)
        : store_(std::make_shared<HlStore>(cfg, cache_path)), model_(cfg, store_) {}

    const LadderModel& model() const { return model_; }
    HlStore& store() { return *store_; }

    AdmissibleFunction fn(const std::string& id, double origin,
                          const std::function<double(double)>& custom) const {
        if (!custom && id.size() == 2 && id[0] == 'f' && id[1] >= '1' && id[1] <= '6')
            return paper_function(id[1] - '0', origin);
        if (custom) return custom_function(id, origin, custom);
        throw DomainError("function id must be f1..f6 or come with an evaluator");
    }

private:
    std::shared_ptr<HlStore> store_;
    LadderModel model_;
};

std::array<int, 4> to_k4(const std::vector<int>& ks) {
    if (ks.size() == 1) return {ks[0], ks[0], ks[0], ks[0]};
    if (ks.size() == 4) return {ks[0], ks[1], ks[2], ks[3]};
    throw LevelMismatch("levels must have 1 or 4 entries");
}

}  // namespace

PYBIND11_MODULE(_ladderlab, m) {
    m.doc() = "critical-line ladder factorization laboratory";

    py::register_exception<Error>(m, "LadderlabError");

    // free zeta-engine surface
    m.def("theta", &theta, py::arg("t"));
    m.def("theta_oracle", &theta_oracle, py::arg("t"));
    m.def("z_value", &z_value, py::arg("t"), py::arg("terms") = 5);
    m.def("zeta_sq", &zeta_sq, py::arg("t"), py::arg("terms") = 5);
    m.def("oracle_zeta_half", &oracle_zeta_half, py::arg("t"));
    m.def("z_oracle", &z_oracle, py::arg("t"));
    m.def("prime_pi", &prime_pi, py::arg("x"));
    m.def("formula_count", &formula_count_str, py::arg("k0"),
          "exact decimal count of level assignments (k0^4)");

    py::class_<OscillatorTerm>(m, "OscillatorTerm")
        .def_readonly("n", &OscillatorTerm::n)
        .def_readonly("amplitude", &OscillatorTerm::amplitude)
        .def_readonly("frequency", &OscillatorTerm::frequency);
    py::class_<OscillatorSpectrum>(m, "OscillatorSpectrum")
        .def_readonly("x", &OscillatorSpectrum::x)
        .def_readonly("cutoff", &OscillatorSpectrum::cutoff)
        .def_readonly("phase_constant", &OscillatorSpectrum::phase_constant)
        .def_readonly("terms", &OscillatorSpectrum::terms);
    m.def("local_spectrum", &local_spectrum, py::arg("x"));

    py::class_<EngineConfig>(m, "EngineConfig")
        .def(py::init<>())
        .def_readwrite("t_min", &EngineConfig::t_min)
        .def_readwrite("rs_terms", &EngineConfig::rs_terms)
        .def_readwrite("c0", &EngineConfig::c0)
        .def_readwrite("k_max", &EngineConfig::k_max)
        .def_readwrite("newton_tol", &EngineConfig::newton_tol)
        .def_readwrite("u_default", &EngineConfig::u_default)
        .def_readwrite("rel_tol", &EngineConfig::rel_tol)
        .def_readwrite("abs_tol", &EngineConfig::abs_tol)
        .def_readwrite("samples_per_decade", &EngineConfig::samples_per_decade)
        .def_readwrite("seed", &EngineConfig::seed)
        .def_readwrite("kappa", &EngineConfig::kappa);

    py::class_<IteratedInterval>(m, "IteratedInterval")
        .def_readonly("level", &IteratedInterval::level)
        .def_readonly("lo", &IteratedInterval::lo)
        .def_readonly("hi", &IteratedInterval::hi)
        .def("length", &IteratedInterval::length);

    py::class_<NodeVector>(m, "NodeVector")
        .def_readonly("k", &NodeVector::k)
        .def_readonly("f_id", &NodeVector::f_id)
        .def_readonly("d", &NodeVector::d)
        .def_readonly("e", &NodeVector::e)
        .def_readonly("alpha", &NodeVector::alpha)
        .def_readonly("beta", &NodeVector::beta)
        .def_readonly("min_zeta_beta", &NodeVector::min_zeta_beta);

    py::class_<FactorizationReport>(m, "FactorizationReport")
        .def_readonly("f_id", &FactorizationReport::f_id)
        .def_readonly("k", &FactorizationReport::k)
        .def_readonly("alpha0", &FactorizationReport::alpha0)
        .def_readonly("lhs_exact", &FactorizationReport::lhs_exact)
        .def_readonly("lhs_zeta", &FactorizationReport::lhs_zeta)
        .def_readonly("rhs", &FactorizationReport::rhs)
        .def_readonly("residual_exact", &FactorizationReport::residual_exact)
        .def_readonly("deviation_zeta", &FactorizationReport::deviation_zeta)
        .def_readonly("min_zeta_beta", &FactorizationReport::min_zeta_beta);

    py::enum_<Variant>(m, "Variant")
        .value("exact", Variant::exact)
        .value("zeta", Variant::zeta);

    py::class_<HybridReport>(m, "HybridReport")
        .def_readonly("formula", &HybridReport::formula)
        .def_readonly("levels", &HybridReport::levels)
        .def_readonly("lhs", &HybridReport::lhs)
        .def_readonly("rhs", &HybridReport::rhs)
        .def_readonly("ratio", &HybridReport::ratio)
        .def_readonly("degenerate_flagged", &HybridReport::degenerate_flagged)
        .def_readonly("min_zeta_beta", &HybridReport::min_zeta_beta)
        .def_readonly("active_functions", &HybridReport::active_functions);

    py::class_<Lab>(m, "Lab")
        .def(py::init([](const EngineConfig& cfg, const std::string& cache) {
                 return new Lab(cfg, cache);
             }),
             py::arg("config") = EngineConfig{}, py::arg("cache_path") = std::string{})
        .def("hl_integral", [](Lab& lab, double T) { return lab.store().hl_integral(T); })
        .def("V", [](const Lab& lab, double y) { return lab.model().V(y); })
        .def("V_prime", [](const Lab& lab, double y) { return lab.model().V_prime(y); })
        .def("phi1", [](const Lab& lab, double T) { return lab.model().phi1(T); })
        .def("phi1_prime",
             [](const Lab& lab, double T) { return lab.model().phi1_prime(T); })
        .def("reverse_iterate",
             [](const Lab& lab, double T, int k) { return lab.model().reverse_iterate(T, k); },
             py::arg("T"), py::arg("k") = 1)
        .def("iterated_interval",
             [](const Lab& lab, double T, double U, int r) {
                 return lab.model().iterated_interval(T, U, r);
             })
        .def("disconnected_set",
             [](const Lab& lab, double T, double U, int k) {
                 return lab.model().disconnected_set(T, U, k).components;
             })
        .def("gap_ratio",
             [](const Lab& lab, double T, double U, int r) {
                 return lab.model().gap_ratio(T, U, r);
             })
        .def("chain_weight",
             [](const Lab& lab, double w, int k) { return chain_weight(lab.model(), w, k); })
        .def("f_mean",
             [](const Lab& lab, const std::string& f, double T, double U,
                const std::function<double(double)>& custom) {
                 return f_mean(lab.model(), lab.fn(f, T, custom), T, U);
             },
             py::arg("f"), py::arg("T"), py::arg("U"), py::arg("custom") = nullptr)
        .def("generate_nodes",
             [](const Lab& lab, const std::string& f, double T, double U, int k,
                const std::function<double(double)>& custom) {
                 return generate_nodes(lab.model(), lab.fn(f, T, custom), T, U, k);
             },
             py::arg("f"), py::arg("T"), py::arg("U"), py::arg("k"),
             py::arg("custom") = nullptr)
        .def("factorization_check",
             [](const Lab& lab, const std::string& f, double T, double U, int k,
                const std::function<double(double)>& custom) {
                 return factorization_check(lab.model(), lab.fn(f, T, custom), T, U, k);
             },
             py::arg("f"), py::arg("T"), py::arg("U"), py::arg("k"),
             py::arg("custom") = nullptr)
        .def("lemma_family",
             [](const Lab& lab, int l, double T, double U, int k) {
                 return lemma_family(lab.model(), l, T, U, k);
             })
        .def("crossbreed_linear",
             [](const Lab& lab, int pair, double T, double U, int ka, int kb, Variant v) {
                 return crossbreed_linear(lab.model(), pair, T, U, ka, kb, v);
             })
        .def("chf_check",
             [](const Lab& lab, double T, double U, const std::vector<int>& ks, Variant v) {
                 return chf_check(lab.model(), T, U, to_k4(ks), v);
             })
        .def("sincos_chf",
             [](const Lab& lab, double T, double U, int k5, int k6, Variant v) {
                 return sincos_chf(lab.model(), T, U, k5, k6, v);
             })
        .def("beta_product_expr",
             [](const Lab& lab, double T, double U, int k, Variant v) {
                 return beta_product_expr(lab.model(), T, U, k, v);
             })
        .def("secondary_chf_check",
             [](const Lab& lab, double T, double U, const std::vector<int>& ks, Variant v) {
                 return secondary_chf_check(lab.model(), T, U, to_k4(ks), v);
             })
        .def("mvt_node",
             [](const Lab&, const std::function<double(double)>& g, double a, double b) {
                 return mvt_node(g, a, b);
             });

    m.attr("PI") = kPi;
    m.attr("EULER_GAMMA") = kEulerGamma;
}
