#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nuharm/counterexample.hpp"
#include "nuharm/group.hpp"
#include "nuharm/schatten.hpp"
#include "nuharm/setup.hpp"

namespace py = pybind11;
using namespace nuharm;

namespace {

py::dict sweep_dict(const SweepResult& r) {
    py::list records;
    for (const auto& rec : r.records) {
        py::dict d;
        d["T"] = rec.T;
        d["value"] = rec.value;
        d["predicted_exponent"] = rec.predicted_exponent;
        records.append(d);
    }
    py::dict out;
    out["records"] = records;
    out["B"] = r.B;
    out["slope"] = r.slope;
    out["increment_ratio"] = r.increment_ratio;
    out["predicted"] = to_string(r.predicted);
    out["observed"] = to_string(r.observed);
    out["pass"] = r.pass;
    out["detail"] = r.detail;
    return out;
}

// Plancherel both sides for the standard bump on the desk setup
std::pair<double, double> plancherel_sides(GroupTag tag) {
    const HarmonicSetup s = make_setup(tag, desk_params(tag));
    const GridFunction f = standard_bump(tag).sample(s.group);
    double rhs = 0.0;
    for (std::size_t l = 0; l < s.reps.labels.size(); ++l)
        rhs += std::pow(schatten_norm(weighted_matrix(group_fourier(s.reps.labels[l], f, 0.5, s.reps.grids[l])), 2.0), 2);
    return {f.norm() * f.norm(), rhs};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "harmonic analysis on the affine, similitude and affine Poincare groups";

    py::enum_<GroupTag>(m, "GroupTag")
        .value("Affine", GroupTag::Affine)
        .value("Sim2", GroupTag::Sim2)
        .value("PoincareAff", GroupTag::PoincareAff);
    m.def("parse_group_tag", [](const std::string& s) { return parse_group_tag(s); });

    py::class_<GroupElement>(m, "GroupElement")
        .def_static("affine", &GroupElement::affine, py::arg("b"), py::arg("a"))
        .def_static(
            "sim2", [](double b1, double b2, double a, double t) { return GroupElement::sim2({b1, b2}, a, t); },
            py::arg("b1"), py::arg("b2"), py::arg("a"), py::arg("theta"))
        .def_static(
            "poincare", [](double b1, double b2, double a, double t) { return GroupElement::poincare({b1, b2}, a, t); },
            py::arg("b1"), py::arg("b2"), py::arg("a"), py::arg("rapidity"))
        .def_readonly("tag", &GroupElement::tag)
        .def_property_readonly("b", [](const GroupElement& g) { return std::make_pair(g.b.x, g.b.y); })
        .def_readonly("a", &GroupElement::a)
        .def_readonly("angle", &GroupElement::angle)
        .def("__mul__", [](const GroupElement& g, const GroupElement& h) { return multiply(g, h); })
        .def("__repr__", [](const GroupElement& g) { return describe(g); });

    py::register_exception<IncompatibleGroups>(m, "IncompatibleGroups", PyExc_ValueError);

    m.def("identity", &identity);
    m.def("multiply", &multiply);
    m.def("inverse", &inverse);
    m.def("haar_density", [](const GroupElement& g, bool left) {
        return haar_density(g.tag, left ? HaarSide::Left : HaarSide::Right, g);
    }, py::arg("g"), py::arg("left") = true);
    m.def("modular_function", [](const GroupElement& g) { return modular_function(g.tag, g); });

    m.def("schatten_norm", [](const Eigen::MatrixXcd& a, double r) { return schatten_norm(a, r); }, py::arg("matrix"),
          py::arg("r"));

    m.def("oscillatory_C", &oscillatory_C, py::arg("alpha"), py::arg("x"));
    m.def("oscillatory_C_limit", &oscillatory_C_limit, py::arg("alpha"));
    m.def("lower_bound_B", &lower_bound_B, py::arg("alpha"), py::arg("x_min"), py::arg("x_max"), py::arg("n") = 4096);
    m.def("alpha_threshold", &alpha_threshold, py::arg("tag"), py::arg("p_prime"));
    m.def("predicted_exponent", [](GroupTag tag, double alpha, double pp) {
        return predicted_exponent(CounterexampleSpec::with_p_prime(tag, alpha, pp));
    }, py::arg("tag"), py::arg("alpha"), py::arg("p_prime"));
    m.def("sweep_divergence", [](GroupTag tag, double alpha, double pp, double L, double R) {
        return sweep_dict(sweep_divergence(CounterexampleSpec::with_p_prime(tag, alpha, pp, L, R)));
    }, py::arg("tag"), py::arg("alpha"), py::arg("p_prime"), py::arg("L") = 1.0, py::arg("R") = 1.0);

    m.def("plancherel_sides", &plancherel_sides, py::arg("tag"),
          py::call_guard<py::gil_scoped_release>());
}
