#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corrgeom/bloch.hpp"
#include "corrgeom/constructions.hpp"
#include "corrgeom/criteria.hpp"
#include "corrgeom/errors.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"
#include "corrgeom/observables.hpp"
#include "corrgeom/simulate.hpp"

namespace py = pybind11;
using namespace corrgeom;

namespace {

BlochDecomposition decompose_rho(const CMat &rho, int d1, int d2) { return decompose(BipartiteState(rho, d1, d2)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Correlation-matrix geometry of bipartite quantum states";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<BlochDecomposition>(m, "BlochDecomposition")
        .def_readonly("d1", &BlochDecomposition::d1)
        .def_readonly("d2", &BlochDecomposition::d2)
        .def_readonly("alpha", &BlochDecomposition::alpha)
        .def_readonly("beta", &BlochDecomposition::beta)
        .def_readonly("T", &BlochDecomposition::T)
        .def_readonly("swapped", &BlochDecomposition::swapped)
        .def("coefficient_matrix", &BlochDecomposition::coefficient_matrix);

    py::class_<SchmidtVerdict>(m, "SchmidtVerdict")
        .def_readonly("trace_norm", &SchmidtVerdict::trace_norm_value)
        .def_readonly("bound", &SchmidtVerdict::bound)
        .def_readonly("k_tested", &SchmidtVerdict::k_tested)
        .def_readonly("detected", &SchmidtVerdict::detected)
        .def_readonly("margin", &SchmidtVerdict::margin);

    py::class_<MomentPoint>(m, "MomentPoint")
        .def_readonly("d1", &MomentPoint::d1)
        .def_readonly("d2", &MomentPoint::d2)
        .def_readonly("s2", &MomentPoint::s2)
        .def_readonly("s4", &MomentPoint::s4)
        .def_readonly("r2t", &MomentPoint::r2t)
        .def_readonly("r4t", &MomentPoint::r4t);

    py::class_<ObservableSpectrum>(m, "ObservableSpectrum")
        .def_readonly("d", &ObservableSpectrum::d)
        .def_readonly("eigenvalues", &ObservableSpectrum::eigenvalues)
        .def_readonly("match_order", &ObservableSpectrum::match_order)
        .def_property_readonly("kind", [](const ObservableSpectrum &a) { return std::string(to_string(a.kind)); })
        .def("is_real", &ObservableSpectrum::is_real, py::arg("tol") = 1e-12);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("r2_mean", &SimulationResult::r2_mean)
        .def_readonly("r2_std", &SimulationResult::r2_std)
        .def_readonly("r4_mean", &SimulationResult::r4_mean)
        .def_readonly("r4_std", &SimulationResult::r4_std)
        .def_readonly("stat_mean", &SimulationResult::stat_mean)
        .def_readonly("stat_std", &SimulationResult::stat_std)
        .def_readonly("m_star", &SimulationResult::m_star)
        .def_readonly("total", &SimulationResult::total);

    m.def("decompose", &decompose_rho, py::arg("rho"), py::arg("d1"), py::arg("d2"),
          "Bloch decomposition of a density matrix on C^d1 (x) C^d2.");
    m.def(
        "correlation_spectrum", [](const CMat &rho, int d1, int d2) {
            return correlation_spectrum(decompose_rho(rho, d1, d2)).sigmas;
        },
        py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def(
        "moments", [](const CMat &rho, int d1, int d2) { return normalized_point(decompose_rho(rho, d1, d2)); },
        py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def(
        "detect_schmidt", [](const CMat &rho, int d1, int d2, int k) { return detect_schmidt(decompose_rho(rho, d1, d2), k); },
        py::arg("rho"), py::arg("d1"), py::arg("d2"), py::arg("k") = 1);
    m.def("schmidt_bound", &schmidt_bound, py::arg("d1"), py::arg("d2"), py::arg("k"));

    m.def("gluing_counts", [](int n) { return gluing_counts(n).counts; }, py::arg("n"));
    m.def("power_trace", &power_trace, py::arg("t"), py::arg("d"));
    m.def("spectrum_full", &spectrum_full, py::arg("d"));
    m.def("spectrum_rank4", &spectrum_rank4, py::arg("d"), py::arg("allow_complex") = true);

    m.def("f_lb", &f_lb, py::arg("x"), py::arg("d1"));
    m.def("f_ub", &f_ub, py::arg("x"));
    m.def("g_lb", &g_lb, py::arg("x"), py::arg("d1"));
    m.def("lower_boundary_k", &lower_boundary_k, py::arg("x"), py::arg("d1"), py::arg("d2"), py::arg("k"));
    m.def("purity_cap", &purity_cap, py::arg("d1"), py::arg("d2"), py::arg("k"));
    m.def("kink_positions", &kink_positions, py::arg("d1"), py::arg("d2"), py::arg("k"));

    m.def(
        "kink_coverage", [](int d) {
            const KinkCoverage c = kink_coverage(d);
            return py::make_tuple(c.covered(), c.missing());
        },
        py::arg("d"), "Returns (covered, missing) kink indices.");

    m.def(
        "isotropic_state", [](int d, double p) { return isotropic_state(d, p).rho(); }, py::arg("d"), py::arg("p"));
    m.def(
        "run_simulation",
        [](int d, double p, int M, int K, int reps, int k_target, std::uint64_t seed) {
            py::gil_scoped_release release;
            return run_simulation({d, p, M, K, reps, k_target, seed});
        },
        py::arg("d"), py::arg("p"), py::arg("M") = 100, py::arg("K") = 100, py::arg("reps") = 100,
        py::arg("k_target") = 1, py::arg("seed") = 1);
}
