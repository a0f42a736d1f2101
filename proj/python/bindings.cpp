#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypwave/atoms.hpp"
#include "hypwave/kernel.hpp"
#include "hypwave/model.hpp"
#include "hypwave/specfun.hpp"
#include "hypwave/symbol.hpp"
#include "hypwave/transform.hpp"
#include "hypwave/verify.hpp"

namespace py = pybind11;
using namespace hypwave;

namespace {

std::vector<double> real_values(const RadialProfile& f) {
    std::vector<double> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = f.values[i].real();
    return out;
}

}  // namespace

PYBIND11_MODULE(_hypwave, m) {
    m.doc() = "spherical analysis and wave kernels on rank-one noncompact symmetric spaces";

    py::class_<SpaceParams>(m, "SpaceParams")
        .def(py::init(&SpaceParams::make), py::arg("m1"), py::arg("m2"))
        .def_readonly("m1", &SpaceParams::m1)
        .def_readonly("m2", &SpaceParams::m2)
        .def_readonly("n", &SpaceParams::n)
        .def_readonly("rho", &SpaceParams::rho)
        .def_readonly("d", &SpaceParams::d)
        .def_readonly("rho_prime", &SpaceParams::rho_prime)
        .def("__repr__", [](const SpaceParams& p) {
            return "SpaceParams(m1=" + std::to_string(p.m1) +
                   ", m2=" + std::to_string(p.m2) + ")";
        });

    m.def("density", &density, py::arg("space"), py::arg("s"));
    m.def("ball_measure", &ball_measure, py::arg("space"), py::arg("r"));
    m.def(
        "annulus_measure",
        [](const SpaceParams& p, double R, double r) {
            return annulus_measure(p, Annulus(R, r));
        },
        py::arg("space"), py::arg("R"), py::arg("r"));

    m.def(
        "harish_chandra_c",
        [](const SpaceParams& p, std::complex<double> lam) {
            return harish_chandra_c(p, lam);
        },
        py::arg("space"), py::arg("lam"));
    m.def("plancherel_density", &plancherel_density, py::arg("space"), py::arg("lam"));
    m.def(
        "spherical_fn",
        [](const SpaceParams& p, std::complex<double> lam, double s) {
            auto v = spherical_fn(p, lam, s);
            return py::make_tuple(v.value, v.s_derivative);
        },
        py::arg("space"), py::arg("lam"), py::arg("s"),
        "returns (phi_lambda(s), d/ds phi_lambda(s))");
    m.def("asymptotic_residual", &asymptotic_residual, py::arg("space"), py::arg("lam"),
          py::arg("s"));

    py::class_<TransformPlan, std::shared_ptr<TransformPlan>>(m, "TransformPlan")
        .def(py::init<const SpaceParams&, double, double, double, double>(),
             py::arg("space"), py::arg("lam_max") = 60.0, py::arg("s_max") = 12.0,
             py::arg("h_lam") = 0.0, py::arg("h_s") = 0.0)
        .def_property_readonly("s_grid", &TransformPlan::s_grid)
        .def_property_readonly("lam_grid", &TransformPlan::lam_grid)
        .def_property_readonly("plancherel_constant", &TransformPlan::plancherel_constant);

    m.def(
        "forward",
        [](const TransformPlan& plan, const std::vector<double>& values) {
            RadialProfile f;
            f.s = plan.s_grid();
            f.values.assign(values.begin(), values.end());
            Spectrum g = forward(plan, f);
            std::vector<double> out(g.size());
            for (size_t i = 0; i < g.size(); ++i) out[i] = g.values[i].real();
            return out;
        },
        py::arg("plan"), py::arg("values"),
        "spherical transform of profile values sampled on plan.s_grid");

    m.def(
        "inverse",
        [](const TransformPlan& plan, const std::vector<double>& values) {
            Spectrum g;
            g.lam = plan.lam_grid();
            g.values.assign(values.begin(), values.end());
            return real_values(inverse(plan, g));
        },
        py::arg("plan"), py::arg("values"),
        "inverse transform of spectral values sampled on plan.lam_grid");

    m.def(
        "multiplier_apply",
        [](const TransformPlan& plan, const Symbol& sym,
           const std::vector<double>& values) {
            RadialProfile f;
            f.s = plan.s_grid();
            f.values.assign(values.begin(), values.end());
            return real_values(multiplier_apply(
                plan, [&](double lam) { return sym.eval({lam, 0.0}); }, f));
        },
        py::arg("plan"), py::arg("symbol"), py::arg("values"));

    py::class_<Symbol>(m, "Symbol")
        .def_readonly("order", &Symbol::order)
        .def_readonly("tube", &Symbol::tube)
        .def_readonly("epsilon", &Symbol::epsilon)
        .def("__call__",
             [](const Symbol& m_, std::complex<double> lam) { return m_.eval(lam); })
        .def("describe", &Symbol::describe);

    m.def(
        "make_symbol",
        [](const std::string& text, const SpaceParams& p) { return parse_symbol(text, p); },
        py::arg("text"), py::arg("space"));

    m.def(
        "wave_kernel",
        [](const SpaceParams& p, const Symbol& sym, double t,
           const std::vector<double>& s_grid, const std::string& contour) {
            KernelPlanConfig cfg;
            if (sym.family == SymbolFamily::gaussian) {
                cfg.lam_band1 = 14.0;
                cfg.lam_band2 = 14.0;
            }
            KernelPlan plan(p, s_grid, cfg);
            KernelOptions opt;
            opt.contour = contour == "on"    ? ContourMode::on
                          : contour == "off" ? ContourMode::off
                                             : ContourMode::automatic;
            auto k = wave_kernel(plan, sym, t, opt);
            return py::make_tuple(real_values(k.profile), real_values(k.derivative_profile),
                                  k.reliable);
        },
        py::arg("space"), py::arg("symbol"), py::arg("t"), py::arg("s_grid"),
        py::arg("contour") = "auto",
        "returns (K_t, K_t', reliable flags) on the given s grid");

    m.def(
        "check_lemma51",
        [](const SpaceParams& p) {
            auto rep = check_lemma51(p);
            py::dict out;
            out["pass"] = rep.pass;
            py::list regions;
            for (const auto& r : rep.regions) {
                py::dict rr;
                rr["name"] = r.name;
                rr["c_star"] = r.c_star;
                rr["stability"] = r.stability;
                rr["pass"] = r.pass;
                regions.append(rr);
            }
            out["regions"] = regions;
            return out;
        },
        py::arg("space"));

    m.attr("__version__") = "0.1.0";
}
