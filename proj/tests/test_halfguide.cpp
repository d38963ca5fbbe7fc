#include <doctest.h>

#include <cmath>

#include "quasihelm/oracle.hpp"
#include "quasihelm/pipeline.hpp"

using namespace quasihelm;

namespace {

ExteriorMedium constant_exterior(double mu, double rho, const CutVector& theta) {
  return ExteriorMedium{constant_coefficient(mu), constant_coefficient(rho), theta};
}

ExteriorMedium paper_exterior() {
  return ExteriorMedium{paper_trig_mu(), paper_trig_rho(), paper_cut_vector()};
}

}  // namespace

TEST_CASE("constant medium: DtN coefficient matches -i omega sqrt(mu rho)") {
  Frequency omega(Complex(8.0, 0.25));
  for (auto [mu, rho] : {std::pair{1.0, 1.0}, std::pair{2.0, 0.5}}) {
    PipelineConfig cfg;
    cfg.h = 1.0 / 32;
    cfg.h_theta = 1.0 / 64;
    HalfLineRun run = run_halfline(constant_exterior(mu, rho, paper_cut_vector()),
                                   omega, cfg);
    Complex expected = Complex(0, -1) * omega.omega * std::sqrt(mu * rho);
    CHECK(std::abs(run.lambda() - expected) <= 2e-3 * std::abs(expected));
    CHECK(run.lambda().imag() < 0.0);
  }
}

TEST_CASE("constant medium: half-line solution is the plane wave") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 32;
  cfg.h_theta = 1.0 / 128;
  cfg.L_cells = 4;
  HalfLineRun run =
      run_halfline(constant_exterior(1.0, 1.0, paper_cut_vector()), omega, cfg);
  CHECK(std::abs(run.halfline.evaluate(0.0) - 1.0) <= 1e-13);
  double sup = 0.0;
  for (int k = 0; k <= 200; ++k) {
    double x = run.halfline.x_max() * k / 200.0;
    Complex exact = std::exp(Complex(0, 1) * omega.omega * x);
    sup = std::max(sup, std::abs(run.halfline.evaluate(x) - exact));
  }
  CHECK(sup <= 5e-3);
}

TEST_CASE("traces decay geometrically with the spectral radius") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 24;
  HalfLineRun run = run_halfline(paper_exterior(), omega, cfg);
  double rho = run.rho_P();
  CHECK(rho < 1.0);
  CVector phi = run.phi;
  for (long l = 1; l <= 8; ++l) {
    double norm = run.P.apply_power(phi, l).norm();
    CHECK(norm <= run.P.cond_Psi * std::pow(rho, double(l)) * phi.norm() * 1.0001);
  }
}

TEST_CASE("half-guide reconstruction: trace and interface consistency") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.method = Method::two_d;
  cfg.h = 1.0 / 16;
  cfg.L_cells = 3;
  HalfLineRun run = run_halfline(paper_exterior(), omega, cfg);
  REQUIRE(run.guide.has_value());
  const HalfGuideSolution& g = *run.guide;

  // Bottom trace is phi (identically one) at the mesh nodes.
  for (int i = 0; i < 16; ++i)
    CHECK(std::abs(g.evaluate(double(i) / 16, 0.0) - 1.0) <= 1e-12);

  // Value at an interface agrees from both neighbouring cells.
  for (double y1 : {0.1, 0.55, 0.9}) {
    Complex below = g.evaluate(y1, 1.0 - 1e-13);
    Complex above = g.evaluate(y1, 1.0 + 1e-13);
    CHECK(std::abs(below - above) <= 1e-9 * std::max(1.0, std::abs(below)));
  }

  // Cell energies decay roughly like the spectral radius.
  auto norms = g.cell_norms(16);
  CHECK(norms[1] <= norms[0]);
  CHECK(norms[2] <= norms[1]);
  double rho = run.rho_P();
  CHECK(norms[2] / norms[1] == doctest::Approx(rho).epsilon(0.35));
}

TEST_CASE("zero boundary data produces the zero solution") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 12;
  HalfLineRun run = run_halfline(paper_exterior(), omega, cfg);
  Mesh1D mesh_theta = make_theta_mesh(run.theta, cfg.h, 1);
  auto solver = make_cell_solver(paper_exterior(), omega, mesh_theta);
  std::vector<CellSolutions1D> dof_cells;
  for (int p = 0; p < run.space.N; ++p)
    dof_cells.push_back(solver(run.space.dof_point(p)));
  CVector zero = CVector::Zero(run.space.N);
  HalfGuideSolution g = reconstruct_halfguide_quasi1d(
      run.P, std::move(dof_cells), run.space, zero, 2, run.theta);
  CHECK(std::abs(g.evaluate(0.3, 0.7)) == 0.0);
  CHECK(std::abs(g.evaluate(0.9, 1.5)) == 0.0);
}

TEST_CASE("constant-medium half-guide is the plane wave, trace by trace") {
  Frequency omega(Complex(8.0, 0.25));
  CutVector theta = paper_cut_vector();
  PipelineConfig cfg;
  cfg.method = Method::two_d;
  cfg.h = 1.0 / 32;
  cfg.L_cells = 3;
  HalfLineRun run = run_halfline(
      ExteriorMedium{constant_coefficient(1.0), constant_coefficient(1.0), theta},
      omega, cfg);
  REQUIRE(run.guide.has_value());
  // Trace on interface l is exp(i omega l / theta2) times the data; the
  // per-cell discretization error compounds over the cells.
  for (long l = 0; l <= 3; ++l) {
    Complex expected = std::exp(Complex(0, 1) * omega.omega * double(l) /
                                theta.theta2);
    Complex got = run.space.evaluate01(run.guide->traces[l], 0.25);
    CHECK(std::abs(got - expected) <= 3.5e-2 * (l + 1) * std::abs(expected));
  }
  // And the field itself is exp(i omega y2 / theta2).
  double sup = 0.0;
  for (double y1 : {0.1, 0.6})
    for (double y2 : {0.3, 1.4, 2.7}) {
      Complex expected = std::exp(Complex(0, 1) * omega.omega * y2 / theta.theta2);
      sup = std::max(sup, std::abs(run.guide->evaluate(y1, y2) - expected));
    }
  CHECK(sup <= 5e-2);
}

TEST_CASE("quasi-1d and 2d half-guide fields agree on the cut line") {
  Frequency omega(Complex(8.0, 0.25));
  auto sup_gap = [&](int m) {
    PipelineConfig cfg2;
    cfg2.method = Method::two_d;
    cfg2.h = 1.0 / m;
    cfg2.L_cells = 3;
    HalfLineRun run2 = run_halfline(paper_exterior(), omega, cfg2);

    PipelineConfig cfg1;
    cfg1.method = Method::quasi1d;
    cfg1.h = 1.0 / m;
    cfg1.L_cells = 3;
    HalfLineRun run1 = run_halfline(paper_exterior(), omega, cfg1);

    HalfLineFrom2D line2{&*run2.guide, 0.0};
    double sup = 0.0, scale = 0.0;
    for (int k = 0; k <= 150; ++k) {
      double x = run1.halfline.x_max() * k / 150.0 * 0.999;
      sup = std::max(sup, std::abs(line2.evaluate(x) - run1.halfline.evaluate(x)));
      scale = std::max(scale, std::abs(run1.halfline.evaluate(x)));
    }
    return sup / scale;
  };
  double g32 = sup_gap(32), g64 = sup_gap(64);
  CHECK(g32 <= 0.4);  // the 2d field carries the larger share of the gap
  CHECK(g64 < g32);
}

TEST_CASE("DtN coefficient is invariant under admissible boundary data") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 64;
  HalfLineRun one = run_halfline(paper_exterior(), omega, cfg);
  cfg.phi = [](double s) { return std::cos(2.0 * M_PI * s); };
  HalfLineRun cos_run = run_halfline(paper_exterior(), omega, cfg);
  CHECK(std::abs(one.lambda() - cos_run.lambda()) <=
        2e-2 * std::abs(one.lambda()));
}

TEST_CASE("half-line solution is invariant under admissible boundary data") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 64;
  HalfLineRun one = run_halfline(paper_exterior(), omega, cfg);
  cfg.phi = [](double s) { return std::cos(2.0 * M_PI * s); };
  HalfLineRun cos_run = run_halfline(paper_exterior(), omega, cfg);
  double x_hi = 4.0 / paper_cut_vector().theta2;
  double rel = relative_h1_error(one.halfline_field(x_hi),
                                 cos_run.halfline_field(x_hi), 0.0, x_hi);
  CHECK(rel <= 5e-2);
}

TEST_CASE("second-order elements sharpen the DtN coefficient") {
  Frequency omega(Complex(8.0, 0.25));
  Complex expected = Complex(0, -1) * omega.omega;
  auto rel_err = [&](int order) {
    PipelineConfig cfg;
    cfg.h = 1.0 / 16;
    cfg.h_theta = 1.0 / 24;
    cfg.order = order;
    HalfLineRun run = run_halfline(
        ExteriorMedium{constant_coefficient(1.0), constant_coefficient(1.0),
                       paper_cut_vector()},
        omega, cfg);
    return std::abs(run.lambda() - expected) / std::abs(expected);
  };
  double e1 = rel_err(1), e2 = rel_err(2);
  CHECK(e2 < 0.2 * e1);
}

TEST_CASE("nonphysical DtN sign is rejected") {
  TransverseSpace space = TransverseSpace::uniform(2, 1);
  DtnQuad T;
  T.T00 = Complex(0, 1) * CMatrix::Identity(2, 2);
  T.T10 = CMatrix::Zero(2, 2);
  T.T01 = T.T11 = CMatrix::Zero(2, 2);
  PropagationOperator P;
  P.lambdas = CVector::Zero(2);
  P.Psi = CMatrix::Identity(2, 2);
  P.P = CMatrix::Zero(2, 2);
  P.psi_lu = Eigen::PartialPivLU<CMatrix>(P.Psi);
  CVector phi = CVector::Ones(2);
  CHECK_THROWS_AS(
      dtn_coefficient(T, P, space, phi, paper_cut_vector()), NumericalError);
}

TEST_CASE("boundary data must satisfy phi(0) = 1") {
  Frequency omega(Complex(8.0, 0.25));
  PipelineConfig cfg;
  cfg.h = 1.0 / 8;
  HalfLineRun run = run_halfline(paper_exterior(), omega, cfg);
  CVector bad = 2.0 * CVector::Ones(run.space.N);
  CHECK_THROWS_AS(
      dtn_coefficient(run.T, run.P, run.space, bad, run.theta), ConfigError);
}
