#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photon/beams.hpp"
#include "photon/errors.hpp"
#include "photon/functionals.hpp"
#include "photon/specfun.hpp"
#include "photon/spectra.hpp"
#include "photon/state_io.hpp"
#include "photon/states.hpp"
#include "photon/variational.hpp"

namespace py = pybind11;
using namespace photon;

namespace {

py::tuple as_tuple(const Vec3& v) { return py::make_tuple(v.x(), v.y(), v.z()); }

QuadratureScheme scheme_for(const PhotonState& s, int nk, int ntheta, int nphi) {
  return default_scheme(s, QuadratureOrders{nk, ntheta, nphi});
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Photon uncertainty functionals, spectra and variational sweeps";

  py::register_exception<ForbiddenQuantumNumbers>(m, "ForbiddenQuantumNumbers", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<StateFormatError>(m, "StateFormatError", PyExc_ValueError);
  py::register_exception<NoSignChangeError>(m, "NoSignChangeError", PyExc_RuntimeError);

  py::class_<PhotonState>(m, "PhotonState")
      .def_property_readonly("family", [](const PhotonState& s) { return to_string(s.family()); })
      .def_property_readonly("scale", &PhotonState::scale)
      .def_property_readonly("helicity", &PhotonState::helicity)
      .def(
          "__call__",
          [](const PhotonState& s, double kx, double ky, double kz) {
            return s.evaluate(MomentumPoint::from_cartesian(Vec3(kx, ky, kz)));
          },
          py::arg("kx"), py::arg("ky"), py::arg("kz"))
      .def("to_json", [](const PhotonState& s) { return state_to_json(s).dump(); })
      .def("__repr__", [](const PhotonState& s) {
        return "<PhotonState " + to_string(s.family()) + " a=" + std::to_string(s.scale()) + ">";
      });

  m.def("saturator_single", [](int mq, double a, int n, int h) { return saturator_single(mq, a, n, h); },
        py::arg("m"), py::arg("a") = 1.0, py::arg("n") = 0, py::arg("helicity") = 1);
  m.def("saturator_beam", [](int mq, double a, int n, int h) { return saturator_beam(mq, a, n, h); }, py::arg("m"),
        py::arg("a") = 1.0, py::arg("n") = 0, py::arg("helicity") = 1);
  m.def("gaussian_1d", [](double w, double a, int h) { return gaussian_1d(w, a, h); }, py::arg("width"),
        py::arg("a") = 1.0, py::arg("helicity") = 1);
  m.def("trial_state", &trial_state, py::arg("base_m"), py::arg("coeffs"), py::arg("a") = 1.0,
        py::arg("strict") = false);
  m.def("load_state", &load_state, py::arg("path"));
  m.def("state_from_json", [](const std::string& text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw StateFormatError(e.what());
    }
    return state_from_json(j);
  });

  py::class_<ExpectationReport>(m, "ExpectationReport")
      .def_readonly("norm", &ExpectationReport::norm)
      .def_property_readonly("mean_R", [](const ExpectationReport& r) { return as_tuple(r.mean_R); })
      .def_readonly("RR", &ExpectationReport::RR)
      .def_property_readonly("mean_P", [](const ExpectationReport& r) { return as_tuple(r.mean_P); })
      .def_readonly("PP", &ExpectationReport::PP)
      .def_readonly("varR", &ExpectationReport::varR)
      .def_readonly("varP", &ExpectationReport::varP)
      .def_readonly("gamma2", &ExpectationReport::gamma2)
      .def_readonly("variance_product", &ExpectationReport::variance_product)
      .def_readonly("divergent", &ExpectationReport::divergent);

  py::class_<BeamReport>(m, "BeamReport")
      .def_readonly("gamma2", &BeamReport::gamma2)
      .def_readonly("kappa_scale", &BeamReport::kappa_scale)
      .def_readonly("dispersionP", &BeamReport::dispersionP)
      .def_readonly("dispersionR", &BeamReport::dispersionR)
      .def_property_readonly("V_f", [](const BeamReport& r) { return r.focal.V_f; })
      .def_property_readonly("V_min", [](const BeamReport& r) { return r.focal.V_min; })
      .def_readonly("divergent", &BeamReport::divergent);

  py::class_<FocalReport>(m, "FocalReport")
      .def_readonly("V_f", &FocalReport::V_f)
      .def_readonly("V_min", &FocalReport::V_min)
      .def_readonly("satisfied", &FocalReport::satisfied);

  m.def("expectation_report",
        [](const PhotonState& s, int nk, int nt, int np) { return expectation_report(s, scheme_for(s, nk, nt, np)); },
        py::arg("state"), py::arg("nk") = 40, py::arg("ntheta") = 24, py::arg("nphi") = 16);
  m.def("beam_gamma2", [](const PhotonState& s, int nk, int nt, int np) { return beam_gamma2(s, scheme_for(s, nk, nt, np)); },
        py::arg("state"), py::arg("nk") = 40, py::arg("ntheta") = 24, py::arg("nphi") = 16);
  m.def("one_dimensional_product",
        [](const PhotonState& s) { return one_dimensional_product(s, s.axis(), default_scheme(s)); }, py::arg("state"));
  m.def("focal_volume_report", &focal_volume_report, py::arg("varR"), py::arg("varP"), py::arg("gamma_bound"));

  m.def("gamma_spectrum", [](const std::string& sys, int n, int j) { return gamma_spectrum(parse_system(sys), n, j); },
        py::arg("system"), py::arg("n"), py::arg("j"));
  m.def("shoot_eigenvalue", [](const std::string& sys, int j, int n) { return shoot_eigenvalue(parse_system(sys), j, n); },
        py::arg("system"), py::arg("j"), py::arg("n"));

  m.def("kummer_1f1", &kummer_1f1, py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("jacobi_p", &jacobi_p, py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
  m.def("wigner_d", &wigner_d, py::arg("j"), py::arg("m"), py::arg("helicity"), py::arg("theta"));

  py::class_<VariationalRun>(m, "VariationalRun")
      .def_readonly("order", &VariationalRun::order)
      .def_readonly("coefficients", &VariationalRun::coefficients)
      .def_readonly("mean_P2", &VariationalRun::mean_P2)
      .def_readonly("variance_product", &VariationalRun::variance_product)
      .def_readonly("iterations", &VariationalRun::iterations)
      .def_readonly("converged", &VariationalRun::converged);

  py::class_<ImfPoint>(m, "ImfPoint")
      .def_readonly("shift", &ImfPoint::shift)
      .def_readonly("gamma2", &ImfPoint::gamma2)
      .def_readonly("power", &ImfPoint::power)
      .def_readonly("converged", &ImfPoint::converged);

  py::class_<ImfResult>(m, "ImfResult")
      .def_readonly("series", &ImfResult::series)
      .def_readonly("extrapolated", &ImfResult::extrapolated)
      .def_readonly("limit", &ImfResult::limit);

  m.def(
      "figure1_sweep",
      [](const std::vector<int>& orders) {
        const int top = orders.empty() ? 1 : std::max(1, *std::max_element(orders.begin(), orders.end()));
        py::gil_scoped_release release;
        return figure1_sweep(orders, TrialFamily(top));
      },
      py::arg("orders") = std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  m.def(
      "imf_limit",
      [](const std::vector<double>& shifts) {
        py::gil_scoped_release release;
        return imf_limit(shifts);
      },
      py::arg("shifts"));
  m.def("fit_eval", &fit_eval, py::arg("p2"));
  m.def("exact_endpoint", &exact_endpoint);
}
