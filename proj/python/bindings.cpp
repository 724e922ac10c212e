#include "bathdisc/bounds.hpp"
#include "bathdisc/discretize.hpp"
#include "bathdisc/errors.hpp"
#include "bathdisc/measures.hpp"
#include "bathdisc/orthopoly.hpp"
#include "bathdisc/simsuite.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bathdisc;

namespace {

SpectralDensity sd_from_json_str(const std::string& text) {
    return SpectralDensity::from_json(nlohmann::json::parse(text));
}

Scheme scheme_from_str(const std::string& s) {
    if (s == "BC") return Scheme::BC;
    if (s == "S2") return Scheme::S2;
    throw ValidationError("invalid_params", "scheme must be 'BC' or 'S2'");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gauss-quadrature bath discretisation and dynamical error bounds";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<SpectralDensity>(m, "SpectralDensity")
        .def_static("power_law", &SpectralDensity::power_law, py::arg("s"), py::arg("alpha"),
                    py::arg("omega_min"), py::arg("omega_max"))
        .def_static("semicircle", &SpectralDensity::semicircle, py::arg("C"),
                    py::arg("omega_min"), py::arg("omega_max"))
        .def_static("rubin", &SpectralDensity::rubin, py::arg("C"), py::arg("omega_min"),
                    py::arg("omega_max"))
        .def_static("gapped", &SpectralDensity::gapped, py::arg("base"), py::arg("omega_i"),
                    py::arg("omega_f"))
        .def_static("tabulated", &SpectralDensity::tabulated, py::arg("samples"))
        .def_static("from_json", &sd_from_json_str, py::arg("text"))
        .def("to_json", [](const SpectralDensity& sd) { return sd.to_json().dump(); })
        .def("__call__", &SpectralDensity::operator(), py::arg("omega"))
        .def_property_readonly("omega_min", &SpectralDensity::omega_min)
        .def_property_readonly("omega_max", &SpectralDensity::omega_max)
        .def_property_readonly("massless", &SpectralDensity::massless);

    py::class_<DiscretizedBath>(m, "DiscretizedBath")
        .def_property_readonly("scheme",
                               [](const DiscretizedBath& b) { return std::string(to_string(b.scheme)); })
        .def_readonly("L", &DiscretizedBath::L)
        .def_readonly("frequencies", &DiscretizedBath::frequencies)
        .def_readonly("couplings", &DiscretizedBath::couplings);

    py::class_<ChainCoefficients>(m, "ChainCoefficients")
        .def_readonly("q", &ChainCoefficients::q)
        .def_readonly("site_energies", &ChainCoefficients::site_energies)
        .def_readonly("hops", &ChainCoefficients::hops)
        .def_readonly("system_coupling", &ChainCoefficients::system_coupling);

    m.def(
        "discretize",
        [](const SpectralDensity& sd, const std::string& scheme, int L) {
            return discretize(sd, scheme_from_str(scheme), L);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("L"));

    m.def(
        "chain_coefficients",
        [](const SpectralDensity& sd, int q, int n) { return chain_coefficients(sd, q, n); },
        py::arg("sd"), py::arg("q"), py::arg("n"));

    m.def(
        "chain_to_star",
        [](const ChainCoefficients& cc, int L) { return chain_to_star(cc, L); },
        py::arg("chain"), py::arg("L"));

    m.def(
        "gauss_rule",
        [](const SpectralDensity& sd, const std::string& scheme, int L) {
            const Measure meas(sd, scheme_from_str(scheme) == Scheme::BC ? 0 : 1);
            const auto rule = gauss_rule(recurrence_for(meas, L), L);
            return py::make_tuple(rule.knots, rule.weights);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("L"),
        "Gauss knots (descending) and weights of the scheme's measure");

    m.def(
        "chebyshev_knots_closed_form",
        [](const SpectralDensity& sd, const std::string& scheme, int L) {
            return chebyshev_knots_closed_form(sd, scheme_from_str(scheme), L);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("L"));

    m.def("eta_constants", &eta_constants, py::arg("sd"));

    m.def(
        "bound",
        [](const SpectralDensity& sd, const std::string& scheme, double norm_O, double norm_A,
           double gamma_norm, double t, int L, std::optional<bool> massless_override) {
            BoundParams p;
            p.norm_O = norm_O;
            p.norm_A = norm_A;
            p.gamma_norm = gamma_norm;
            p.massless_override = massless_override;
            return bound_for(sd, scheme_from_str(scheme), p, t, L);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("norm_O") = 1.0, py::arg("norm_A") = 1.0,
        py::arg("gamma_norm") = 1.0, py::arg("t") = 0.0, py::arg("L") = 1,
        py::arg("massless_override") = std::nullopt,
        "Rigorous bound on the observable error for the chosen scheme");

    m.def(
        "plan_modes",
        [](const SpectralDensity& sd, const std::string& scheme, double t_horizon, double epsilon,
           double norm_O, double norm_A, double gamma_norm, int L_max) {
            BoundParams p;
            p.norm_O = norm_O;
            p.norm_A = norm_A;
            p.gamma_norm = gamma_norm;
            PlanOptions opts;
            opts.L_max = L_max;
            return plan_modes(sd, scheme_from_str(scheme), t_horizon, epsilon, p, opts);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("t_horizon"), py::arg("epsilon"),
        py::arg("norm_O") = 1.0, py::arg("norm_A") = 1.0, py::arg("gamma_norm") = 1.0,
        py::arg("L_max") = 10000);

    m.def("gamma_norm_number_state", &gamma_norm_number_state, py::arg("n0"));

    m.def(
        "gamma_basis_change",
        [](const SpectralDensity& sd, int M) {
            auto bc = gamma_basis_change(sd, M);
            return py::make_tuple(bc.A, bc.B, bc.symplectic_defect);
        },
        py::arg("sd"), py::arg("M"),
        "Blocks (A, B) of the basis-change map and the symplectic defect of the truncation");

    m.def(
        "evolve_spin_boson",
        [](const SpectralDensity& sd, const std::string& scheme, int L, double alpha,
           int fock_cutoff, int n0, const std::vector<double>& times) {
            SpinBosonModel model;
            model.bath = discretize(sd, scheme_from_str(scheme), L);
            model.alpha = alpha;
            model.fock_cutoff = fock_cutoff;
            model.n0 = n0;
            Eigen::Matrix2cd sz;
            sz << 1, 0, 0, -1;
            return evolve_spin_boson(model, sz, times);
        },
        py::arg("sd"), py::arg("scheme"), py::arg("L"), py::arg("alpha"), py::arg("fock_cutoff"),
        py::arg("n0"), py::arg("times"), "sigma_z expectation values of the spin-boson instance");
}
