#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasihelm/oracle.hpp"
#include "quasihelm/wholeline.hpp"

namespace py = pybind11;
using namespace quasihelm;

namespace {

MediumSpec make_medium(const std::string& preset, double mu, double rho,
                       double theta1, double theta2, double a) {
  CutVector theta =
      theta1 > 0.0 ? CutVector(theta1, theta2) : paper_cut_vector();
  if (preset == "paper-trig") {
    MediumSpec m = paper_medium();
    m.theta = theta;
    m.a = a;
    return m;
  }
  if (preset == "constant") return constant_medium(mu, rho, theta, a);
  throw ConfigError("unknown medium preset: " + preset);
}

PipelineConfig make_config(const std::string& method, double h, double h_theta,
                           long L_cells, const std::string& phi) {
  PipelineConfig cfg;
  if (method == "quasi1d")
    cfg.method = Method::quasi1d;
  else if (method == "2d")
    cfg.method = Method::two_d;
  else
    throw ConfigError("method must be 'quasi1d' or '2d'");
  cfg.h = h;
  cfg.h_theta = h_theta;
  cfg.L_cells = L_cells;
  if (phi == "cos")
    cfg.phi = [](double s) { return std::cos(2.0 * M_PI * s); };
  else if (phi != "one")
    throw ConfigError("phi must be 'one' or 'cos'");
  return cfg;
}

struct PyHalfLineResult {
  Complex lambda;
  double rho_P;
  double cond_Psi;
  double riccati_residual;
  CVector eigenvalues;
  std::vector<double> x;
  CVector u;
};

PyHalfLineResult run_halfline_py(const MediumSpec& medium,
                                 const std::string& method, Complex omega,
                                 double h, double h_theta, long L_cells,
                                 const std::string& phi, int samples) {
  ExteriorMedium exterior{medium.mu_p, medium.rho_p, medium.theta};
  PipelineConfig cfg = make_config(method, h, h_theta, L_cells, phi);
  HalfLineRun run = run_halfline(exterior, Frequency(omega), cfg);
  PyHalfLineResult res;
  res.lambda = run.lambda();
  res.rho_P = run.rho_P();
  res.cond_Psi = run.P.cond_Psi;
  res.riccati_residual = riccati_residual(run.T, run.P.P);
  res.eigenvalues = run.P.lambdas;
  double x_max = run.halfline.x_max();
  SampledField f = run.halfline_field(x_max);
  res.x.resize(samples + 1);
  res.u.resize(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    res.x[i] = x_max * double(i) / samples;
    res.u[i] = f.value(res.x[i] * (i == samples ? 0.999999 : 1.0));
  }
  return res;
}

struct PyWholeLineResult {
  Complex lambda_plus, lambda_minus;
  std::vector<double> x;
  CVector u;
};

PyWholeLineResult run_wholeline_py(const MediumSpec& medium, Complex omega_c,
                                   double h, double window, int samples) {
  Frequency omega(omega_c);
  PipelineConfig side;
  side.h = h >= 1e-2 ? h : 1e-2;  // transverse resolution for the sides
  side.h_theta = h;
  side.L_cells = std::max<long>(
      1, long(std::ceil((window - medium.a) * medium.theta.theta2)) + 1);
  HalfLineRun plus =
      run_halfline(reflect_translate_medium(medium, Side::plus), omega, side);
  HalfLineRun minus =
      run_halfline(reflect_translate_medium(medium, Side::minus), omega, side);
  InteriorSolution interior =
      solve_interior(medium, omega, plus.lambda(), minus.lambda(), h);
  WholeLineSolution u = assemble_whole_line(
      std::move(interior), std::move(plus.halfline), std::move(minus.halfline));
  PyWholeLineResult res;
  res.lambda_plus = plus.lambda();
  res.lambda_minus = minus.lambda();
  res.x.resize(samples + 1);
  res.u.resize(samples + 1);
  for (int i = 0; i <= samples; ++i) {
    res.x[i] = -window + 2.0 * window * double(i) / samples;
    res.u[i] = u.evaluate(res.x[i]);
  }
  return res;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Helmholtz solver for locally perturbed quasiperiodic media";

  py::register_exception<ConfigError>(m, "QhConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalFailure",
                                         PyExc_RuntimeError);

  py::class_<MediumSpec>(m, "Medium", "Locally perturbed quasiperiodic medium")
      .def_property_readonly(
          "theta",
          [](const MediumSpec& mspec) {
            return py::make_tuple(mspec.theta.theta1, mspec.theta.theta2);
          })
      .def_readonly("a", &MediumSpec::a)
      .def("mu", &MediumSpec::mu, py::arg("x"),
           "Whole-line mu coefficient at x")
      .def("rho", &MediumSpec::rho, py::arg("x"),
           "Whole-line rho coefficient at x");

  m.def("medium", &make_medium, py::arg("preset") = "paper-trig",
        py::arg("mu") = 1.0, py::arg("rho") = 1.0, py::arg("theta1") = 0.0,
        py::arg("theta2") = 0.0, py::arg("a") = 1.0,
        "Build a medium preset ('paper-trig' or 'constant'). theta defaults "
        "to (cos pi/3, sin pi/3).");

  py::class_<PyHalfLineResult>(m, "HalfLineResult")
      .def_readonly("lambda_", &PyHalfLineResult::lambda,
                    "DtN coefficient lambda+")
      .def_readonly("rho_P", &PyHalfLineResult::rho_P,
                    "spectral radius of the discrete propagation operator")
      .def_readonly("cond_Psi", &PyHalfLineResult::cond_Psi)
      .def_readonly("riccati_residual", &PyHalfLineResult::riccati_residual)
      .def_readonly("eigenvalues", &PyHalfLineResult::eigenvalues,
                    "selected eigenvalues (|lambda| < 1), sorted")
      .def_readonly("x", &PyHalfLineResult::x)
      .def_readonly("u", &PyHalfLineResult::u);

  m.def("solve_halfline", &run_halfline_py, py::arg("medium"),
        py::arg("method") = "quasi1d", py::arg("omega") = Complex(8.0, 0.25),
        py::arg("h") = 1.0 / 32, py::arg("h_theta") = 0.0,
        py::arg("L_cells") = 4, py::arg("phi") = "one",
        py::arg("samples") = 512,
        "Solve the exterior half-line problem: DtN coefficient, propagation "
        "operator spectrum and the reconstructed solution.");

  py::class_<PyWholeLineResult>(m, "WholeLineResult")
      .def_readonly("lambda_plus", &PyWholeLineResult::lambda_plus)
      .def_readonly("lambda_minus", &PyWholeLineResult::lambda_minus)
      .def_readonly("x", &PyWholeLineResult::x)
      .def_readonly("u", &PyWholeLineResult::u);

  m.def("solve_wholeline", &run_wholeline_py, py::arg("medium"),
        py::arg("omega") = Complex(8.0, 0.25), py::arg("h") = 2e-3,
        py::arg("window") = 6.0, py::arg("samples") = 2000,
        "Solve the whole-line problem with DtN transparent boundaries and "
        "sample the assembled solution.");

  m.def(
      "sample_broken_line",
      [](double theta1, double theta2, double M, double step) {
        return sample_broken_line(CutVector(theta1, theta2), M, step);
      },
      py::arg("theta1"), py::arg("theta2"), py::arg("M"), py::arg("step"),
      "Wrapped cut-line samples {(x theta1 mod 1, x theta2 mod 1)}.");

  m.def(
      "reference_spectral_radius",
      [](const MediumSpec& medium, Complex omega, int n_samples, double target,
         double h_ref) {
        ExteriorMedium exterior{medium.mu_p, medium.rho_p, medium.theta};
        TruncationPolicy policy;
        policy.target = target;
        return reference_spectral_radius(exterior, Frequency(omega), n_samples,
                                         policy, h_ref);
      },
      py::arg("medium"), py::arg("omega") = Complex(8.0, 0.25),
      py::arg("n_samples") = 256, py::arg("target") = 1e-10,
      py::arg("h_ref") = 5e-4,
      "Rectangle-rule estimate of the exact spectral radius of the "
      "propagation operator.");

  m.def(
      "convergence_study",
      [](const MediumSpec& medium, const std::string& method, Complex omega,
         const std::vector<double>& h_list, double target, double h_ref) {
        ExteriorMedium exterior{medium.mu_p, medium.rho_p, medium.theta};
        Method meth = method == "2d" ? Method::two_d : Method::quasi1d;
        TruncationPolicy policy;
        policy.target = target;
        ConvergenceReport rep = convergence_study(meth, exterior,
                                                  Frequency(omega), h_list,
                                                  policy, h_ref);
        return py::make_tuple(rep.inv_h, rep.errors, rep.slope);
      },
      py::arg("medium"), py::arg("method") = "quasi1d",
      py::arg("omega") = Complex(8.0, 0.25),
      py::arg("h_list") = std::vector<double>{1.0 / 32, 1.0 / 64, 1.0 / 128},
      py::arg("target") = 1e-10, py::arg("h_ref") = 5e-4,
      "Relative H1 errors of the half-line solution against a truncated "
      "reference; returns (inv_h, errors, slope).");
}
