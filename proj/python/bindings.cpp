#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "run.hpp"
#include "torsionlab/circle.hpp"
#include "torsionlab/frustum.hpp"
#include "torsionlab/io.hpp"
#include "torsionlab/spectral.hpp"

namespace py = pybind11;
using namespace torsionlab;

namespace {

CrossProductKind kind_of(const std::string& s) { return parse_cross_product_kind(s); }

CircleFrustum circle(double l1, double l2, double alpha) {
  CircleFrustum f{l1, l2, alpha};
  f.validate();
  return f;
}

CircleVariant variant_of(const std::string& s) {
  if (s == "abs") return CircleVariant::abs;
  if (s == "rel") return CircleVariant::rel;
  if (s == "pair_W2") return CircleVariant::pair_W2;
  throw std::invalid_argument("variant must be abs, rel or pair_W2");
}

py::object from_json(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Torsion of conical frusta: chain-level, closed-form and spectral computations";

  py::class_<FrustumParams>(m, "FrustumParams")
      .def(py::init([](double l1, double l2, int m_, std::vector<int> betti, int rk) {
             FrustumParams p{l1, l2, m_, std::move(betti), rk};
             p.validate();
             return p;
           }),
           py::arg("l1") = 1.0, py::arg("l2") = 2.0, py::arg("m") = 1, py::arg("betti") = std::vector<int>{1, 1},
           py::arg("rk_rho") = 1)
      .def_readwrite("l1", &FrustumParams::l1)
      .def_readwrite("l2", &FrustumParams::l2)
      .def_readwrite("m", &FrustumParams::m)
      .def_readwrite("betti", &FrustumParams::betti)
      .def_readwrite("rk_rho", &FrustumParams::rk_rho);

  py::class_<Reconciliation>(m, "Reconciliation")
      .def_readonly("paper", &Reconciliation::paper)
      .def_readonly("derived", &Reconciliation::derived)
      .def_readonly("difference", &Reconciliation::difference)
      .def_readonly("expected_exponent", &Reconciliation::expected_exponent)
      .def_readonly("measured_exponent", &Reconciliation::measured_exponent);

  py::class_<ReconciliationFit>(m, "ReconciliationFit")
      .def_readonly("exponent", &ReconciliationFit::exponent)
      .def_readonly("max_residual", &ReconciliationFit::max_residual);

  m.def("tau_T_log", &tau_T_log, py::arg("params"));
  m.def("tau_T_log_derived", &tau_T_log_derived, py::arg("params"));
  m.def("reconcile", &reconcile, py::arg("params"));
  m.def("fit_reconciliation", &fit_reconciliation, py::arg("params"), py::arg("l1_values"));

  py::class_<ZeroTable>(m, "ZeroTable")
      .def_property_readonly("kind", [](const ZeroTable& t) { return to_string(t.kind); })
      .def_readonly("order", &ZeroTable::order)
      .def_readonly("l1", &ZeroTable::l1)
      .def_readonly("l2", &ZeroTable::l2)
      .def_readonly("tol", &ZeroTable::tol)
      .def_readonly("zeros", &ZeroTable::zeros)
      .def("to_csv", [](const ZeroTable& t, int digits) { return io::zero_table_csv(t, digits); },
           py::arg("digits") = 12);

  py::class_<ZetaEvaluation>(m, "ZetaEvaluation")
      .def_readonly("value", &ZetaEvaluation::value_at_0_derivative)
      .def_property_readonly("method", [](const ZetaEvaluation& e) { return to_string(e.method); })
      .def_readonly("error_estimate", &ZetaEvaluation::error_estimate)
      .def_readonly("zeros_used", &ZetaEvaluation::zeros_used);

  py::class_<SemiNumericTorsion>(m, "SemiNumericTorsion")
      .def_readonly("value", &SemiNumericTorsion::value)
      .def_readonly("error_estimate", &SemiNumericTorsion::error_estimate)
      .def_readonly("axial", &SemiNumericTorsion::axial)
      .def_readonly("axial_tilde", &SemiNumericTorsion::axial_tilde);

  py::class_<UniformResidual>(m, "UniformResidual")
      .def_readonly("lhs", &UniformResidual::lhs)
      .def_readonly("leading", &UniformResidual::leading)
      .def_readonly("phi_term", &UniformResidual::phi_term)
      .def_readonly("residual", &UniformResidual::residual);

  m.def("cross_product", [](const std::string& k, double mu, double l1, double l2, double z) {
    return cross_product(kind_of(k), mu, l1, l2, z);
  }, py::arg("kind"), py::arg("mu"), py::arg("l1"), py::arg("l2"), py::arg("z"));
  m.def("find_zeros", [](const std::string& k, double mu, double l1, double l2, int K, double tol) {
    py::gil_scoped_release release;
    return find_zeros(kind_of(k), mu, l1, l2, K, tol);
  }, py::arg("kind"), py::arg("mu"), py::arg("l1"), py::arg("l2"), py::arg("K"), py::arg("tol") = 1e-12);
  m.def("zprime0_axial", [](const std::string& k, double l1, double l2) {
    return zprime0_axial(kind_of(k), l1, l2);
  }, py::arg("kind"), py::arg("l1"), py::arg("l2"));
  m.def("zprime0_axial_oracle", [](const std::string& k, double l1, double l2, int K, double max_error) {
    py::gil_scoped_release release;
    return zprime0_axial_oracle(kind_of(k), l1, l2, K, max_error);
  }, py::arg("kind"), py::arg("l1"), py::arg("l2"), py::arg("K"), py::arg("max_error") = 1e-5);
  m.def("torsion_zeta_log", [](double nu, double l1, double l2, const std::string& bc) {
    if (bc != "abs" && bc != "rel") throw std::invalid_argument("bc must be abs or rel");
    return torsion_zeta_log(nu, l1, l2, bc == "abs" ? SpectralBC::absolute : SpectralBC::relative);
  }, py::arg("nu"), py::arg("l1"), py::arg("l2"), py::arg("bc") = "abs");
  m.def("torsion_zeta_semi_numeric", [](double nu, double l1, double l2, int K, double max_error) {
    py::gil_scoped_release release;
    return torsion_zeta_semi_numeric(nu, l1, l2, K, max_error);
  }, py::arg("nu"), py::arg("l1"), py::arg("l2"), py::arg("K") = 10000, py::arg("max_error") = 1e-5);
  m.def("uniform_expansion_residual", &uniform_expansion_residual, py::arg("n"), py::arg("nu"), py::arg("l1"),
        py::arg("l2"), py::arg("lambda_"));

  m.def("rtorsion_circle", [](double l1, double l2, double alpha, const std::string& v) {
    return rtorsion_circle(circle(l1, l2, alpha), variant_of(v)).value();
  }, py::arg("l1"), py::arg("l2"), py::arg("alpha"), py::arg("variant") = "abs");
  m.def("rtorsion_circle_closed_form", [](double l1, double l2, double alpha, const std::string& v) {
    return rtorsion_circle_closed_form(circle(l1, l2, alpha), variant_of(v));
  }, py::arg("l1"), py::arg("l2"), py::arg("alpha"), py::arg("variant") = "abs");
  m.def("verify_suite", [](double l1, double l2, double alpha) {
    return from_json(io::to_json(verify_suite(circle(l1, l2, alpha))));
  }, py::arg("l1"), py::arg("l2"), py::arg("alpha"), "Verification report as a list of dicts.");
  m.def("cone_sweep", [](double l1, double l2, double alpha, int J) {
    return from_json(io::to_json(cone_sweep(circle(l1, l2, alpha), J)));
  }, py::arg("l1"), py::arg("l2"), py::arg("alpha"), py::arg("J") = 20);
  m.def("cylinder_sweep", [](double b1, double h) { return from_json(io::to_json(cylinder_sweep(b1, h))); },
        py::arg("b1"), py::arg("h"));

  m.def("torsion_log_from_json", [](const std::string& text) {
    const auto doc = io::complex_from_json(io::Json::parse(text));
    if (const auto v = validate_complex(doc.complex); !v) throw std::invalid_argument(v.message);
    const auto h = doc.homology ? *doc.homology : empty_homology(doc.complex);
    if (const auto v = validate_homology(doc.complex, h); !v) throw std::invalid_argument(v.message);
    return torsion_log(doc.complex, h).value();
  }, py::arg("text"), "log tau of a chain complex given as JSON text.");

  m.def("run_cli", [](std::vector<std::string> args) {
    args.insert(args.begin(), "torsionlab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    int status;
    {
      py::gil_scoped_release release;
      status = cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(status, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line tool; returns (status, stdout, stderr).");

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
