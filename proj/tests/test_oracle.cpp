#include <doctest.h>

#include <cmath>

#include "quasihelm/oracle.hpp"

using namespace quasihelm;

namespace {

ExteriorMedium constant_exterior(double mu, double rho) {
  return ExteriorMedium{constant_coefficient(mu), constant_coefficient(rho),
                        paper_cut_vector()};
}

ExteriorMedium paper_exterior() {
  return ExteriorMedium{paper_trig_mu(), paper_trig_rho(), paper_cut_vector()};
}

}  // namespace

TEST_CASE("truncation length follows the decay estimate") {
  TruncationPolicy policy;  // target 1e-10
  double L = policy.length(2.5, 0.5, 0.25);
  double expected = -std::log(1e-10) / (std::sqrt(0.5 / 2.5) * 0.25);
  CHECK(L == doctest::Approx(expected).epsilon(1e-12));
  CHECK(L == doctest::Approx(205.9).epsilon(1e-3));
  CHECK(std::exp(-std::sqrt(0.5 / 2.5) * 0.25 * L) <= 1e-10 * 1.0000001);
}

TEST_CASE("oversized truncated domains are refused with a suggestion") {
  TruncationPolicy policy;
  policy.max_dofs = 1000;
  CHECK_THROWS_AS(solve_truncated_halfline(0.0, paper_exterior(),
                                           Frequency(Complex(8.0, 0.25)), policy),
                  NumericalError);
}

TEST_CASE("constant-medium reference matches the outgoing wave") {
  Frequency omega(Complex(8.0, 2.0));  // strong absorption keeps L small
  Reference1D ref =
      solve_truncated_halfline(0.0, constant_exterior(1.0, 1.0), omega);
  CHECK(std::abs(ref.u.evaluate(0.99 * ref.L)) <= 1e-7);
  double sup = 0.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 3.0}) {
    Complex exact = std::exp(Complex(0, 1) * omega.omega * x);
    sup = std::max(sup, std::abs(ref.u.evaluate(x) - exact));
  }
  CHECK(sup <= 1e-4);
}

TEST_CASE("references at s and s + 1 coincide") {
  Frequency omega(Complex(8.0, 2.0));
  Reference1D a = solve_truncated_halfline(0.37, paper_exterior(), omega);
  Reference1D b = solve_truncated_halfline(1.37, paper_exterior(), omega);
  double sup = 0.0;
  for (double x : {0.2, 1.1, 2.7})
    sup = std::max(sup, std::abs(a.u.evaluate(x) - b.u.evaluate(x)));
  CHECK(sup <= 1e-10);
}

TEST_CASE("doubling the truncation barely moves the reference") {
  Frequency omega(Complex(8.0, 1.0));
  TruncationPolicy near, far;
  near.target = 1e-10;
  far.target = 1e-20;  // doubles L
  Reference1D a = solve_truncated_halfline(0.0, paper_exterior(), omega, near);
  Reference1D b = solve_truncated_halfline(0.0, paper_exterior(), omega, far);
  double x_hi = 4.0 / paper_cut_vector().theta2;
  double rel = relative_h1_error(a.field(x_hi), b.field(x_hi), 0.0, x_hi);
  CHECK(rel <= 1e-9);
}

TEST_CASE("relative H1 error on trivial comparisons") {
  Frequency omega(Complex(8.0, 2.0));
  Reference1D ref =
      solve_truncated_halfline(0.0, constant_exterior(1.0, 1.0), omega);
  double x_hi = 2.0;
  SampledField f = ref.field(x_hi);
  CHECK(relative_h1_error(f, f, 0.0, x_hi) == doctest::Approx(0.0));

  SampledField doubled = f;
  doubled.value = [f](double x) { return 2.0 * f.value(x); };
  doubled.deriv = [f](double x) { return 2.0 * f.deriv(x); };
  CHECK(relative_h1_error(doubled, f, 0.0, x_hi) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("H1 error integration is exact for piecewise-linear fields") {
  // u_h(x) = x on breakpoints {0, 1}; u_ref = 0. H1 norm^2 of x on (0,1) is
  // 1/3 + 1 = 4/3; of the reference... use u_ref = x/2: difference x/2:
  // ||x/2||_H1^2 = 1/12 + 1/4 = 1/3, ||x/2||_H1^2 same -> ratio 1.
  SampledField lin{[](double x) { return Complex(x); },
                   [](double) { return Complex(1.0); },
                   {0.0, 1.0}};
  SampledField half{[](double x) { return Complex(0.5 * x); },
                    [](double) { return Complex(0.5); },
                    {0.0, 0.5, 1.0}};
  double rel = relative_h1_error(lin, half, 0.0, 1.0);
  CHECK(rel == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("constant-medium spectral radius reference hits the closed form") {
  // The attainable floor in double precision sits near 1e-10 (solver
  // round-off); check at a small multiple of it.
  Frequency omega(Complex(0.0, 1.5));
  TruncationPolicy policy;
  double expected = std::exp(-omega.omega.imag() / paper_cut_vector().theta2);
  double r2 = reference_spectral_radius(constant_exterior(1.0, 1.0), omega, 2,
                                        policy, 1e-4);
  CHECK(std::abs(r2 - expected) <= 2e-9);
  // The integrand is constant in s, so the sample count cannot matter.
  double r5 = reference_spectral_radius(constant_exterior(1.0, 1.0), omega, 5,
                                        policy, 1e-4);
  CHECK(r5 == doctest::Approx(r2).epsilon(1e-13));
}

TEST_CASE("band counting on synthetic spectra") {
  PropagationOperator P;
  P.lambdas = CVector(4);
  P.lambdas << Complex(0.7, 0.0), Complex(0.0, 0.71), Complex(-0.69, 0.0),
      Complex(0.3, 0.3);
  CHECK(spectrum_band_count(P, 0.7, 0.05) == 3);
  P.lambdas.setZero();
  CHECK(spectrum_band_count(P, 0.7, 0.05) == 0);
  CHECK_THROWS_AS(spectrum_band_count(P, 0.0, 0.05), ConfigError);
}

TEST_CASE("slope fit recovers exact power laws") {
  std::vector<double> inv_h{16, 32, 64, 128};
  std::vector<double> errors;
  for (double ih : inv_h) errors.push_back(3.7 * std::pow(1.0 / ih, 2.0));
  CHECK(fit_loglog_slope(inv_h, errors) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("convergence study on the constant medium superconverges") {
  Frequency omega(Complex(8.0, 0.25));
  ConvergenceReport report = convergence_study(
      Method::quasi1d, constant_exterior(1.0, 1.0), omega,
      {1.0 / 16, 1.0 / 32, 1.0 / 64});
  CHECK(report.errors.size() == 3);
  CHECK(report.errors[1] < report.errors[0]);
  CHECK(report.errors[2] < report.errors[1]);
  CHECK(report.slope >= 1.5);
}

TEST_CASE("unsorted h lists are rejected") {
  Frequency omega(Complex(8.0, 0.25));
  CHECK_THROWS_AS(convergence_study(Method::quasi1d, constant_exterior(1.0, 1.0),
                                    omega, {1.0 / 32, 1.0 / 16}),
                  ConfigError);
}
