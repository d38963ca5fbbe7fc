#include <doctest.h>

#include <cmath>
#include <random>

#include "quasihelm/fem1d.hpp"
#include "quasihelm/media.hpp"

using namespace quasihelm;

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

// Piecewise-linear function given by (breakpoint, value) pairs; exact
// integration of products of two such functions, used as the independent
// oracle for the subdivided quadrature.
struct PiecewiseLinear {
  std::vector<double> xs, ys;

  double operator()(double x) const {
    if (x <= xs.front()) return ys.front();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (x <= xs[i + 1]) {
        double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] + t * (ys[i + 1] - ys[i]);
      }
    return ys.back();
  }
};

// Exact integral of f*g over [a, b] where f and g are linear on every
// subinterval of the merged breakpoint set (antiderivative of a quadratic).
double integrate_product_exact(const PiecewiseLinear& f, const PiecewiseLinear& g,
                               double a, double b) {
  std::vector<double> pts{a, b};
  for (double x : f.xs)
    if (x > a && x < b) pts.push_back(x);
  for (double x : g.xs)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = pts[i], hi = pts[i + 1], len = hi - lo;
    if (len <= 0) continue;
    double f0 = f(lo), f1 = f(hi), g0 = g(lo), g1 = g(hi);
    // Int_0^1 (f0 + (f1-f0)t)(g0 + (g1-g0)t) dt, scaled by len.
    total += len * (f0 * g0 + 0.5 * (f0 * (g1 - g0) + g0 * (f1 - f0)) +
                    (f1 - f0) * (g1 - g0) / 3.0);
  }
  return total;
}

PiecewiseLinear hat(double center, double width) {
  return PiecewiseLinear{{center - width, center, center + width}, {0.0, 1.0, 0.0}};
}

}  // namespace

TEST_CASE("subdivided quadrature integrates constants and monomials") {
  std::vector<double> breaks{0.0, 0.3, 0.31, 0.8, 1.0};
  auto one = quadrature_on_subdivided_interval(breaks, 1,
                                               [](double) { return Complex(1.0); });
  CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-14));
  auto sq = quadrature_on_subdivided_interval(
      breaks, 2, [](double s) { return Complex(s * s); });
  CHECK(sq.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("subdivided quadrature matches the piecewise product oracle") {
  PiecewiseLinear f = hat(0.4, 0.25);
  PiecewiseLinear g = hat(0.5, 0.25);  // shifted hat
  double exact = integrate_product_exact(f, g, 0.0, 1.0);
  std::vector<double> breaks;
  for (double x : {0.0, 0.15, 0.25, 0.4, 0.5, 0.65, 0.75, 1.0}) breaks.push_back(x);
  auto got = quadrature_on_subdivided_interval(
      breaks, 2, [&](double s) { return Complex(f(s) * g(s)); });
  CHECK(got.real() == doctest::Approx(exact).epsilon(1e-14));
  CHECK(got.imag() == doctest::Approx(0.0));
}

TEST_CASE("P1 element matrices match the textbook stencil") {
  double h = 0.37;
  Complex omega(2.0, 0.5);
  Mesh1D mesh = Mesh1D::uniform(0.0, h, 1, 1);
  auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                 [](double) { return 1.0; }, Frequency(omega), mesh);
  Complex w2 = omega * omega;
  CHECK(std::abs(A.get(0, 0) - (1.0 / h - w2 * h / 3.0)) < 1e-14 / h);
  CHECK(std::abs(A.get(0, 1) - (-1.0 / h - w2 * h / 6.0)) < 1e-14 / h);
  CHECK(std::abs(A.get(1, 0) - A.get(0, 1)) == 0.0);
  CHECK(std::abs(A.get(1, 1) - A.get(0, 0)) == 0.0);
}

TEST_CASE("uniform constant-coefficient assembly equals the closed stencil") {
  int n = 16;
  double h = 1.0 / n;
  Complex omega(3.0, 1.0);
  Mesh1D mesh = Mesh1D::uniform(0.0, 1.0, n, 1);
  auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                 [](double) { return 1.0; }, Frequency(omega), mesh);
  Complex w2 = omega * omega;
  for (int i = 1; i < n; ++i) {
    CHECK(std::abs(A.get(i, i) - (2.0 / h - w2 * 2.0 * h / 3.0)) < 1e-12 / h);
    CHECK(std::abs(A.get(i, i - 1) - (-1.0 / h - w2 * h / 6.0)) < 1e-12 / h);
  }
}

TEST_CASE("assembled matrices are complex symmetric") {
  auto mu = paper_trig_mu();
  auto rho = paper_trig_rho();
  CutVector theta = paper_cut_vector();
  Mesh1D mesh = Mesh1D::uniform(0.0, theta.cell_length(), 37, 2);
  auto A = assemble_helmholtz_1d(
      [&](double x) { return trace_coefficient(mu, theta, 0.2, x); },
      [&](double x) { return trace_coefficient(rho, theta, 0.2, x); },
      Frequency(Complex(8.0, 0.25)), mesh);
  for (int i = 0; i < A.size(); ++i)
    for (int j = std::max(0, i - 2); j <= std::min(A.size() - 1, i + 2); ++j)
      CHECK(std::abs(A.get(i, j) - A.get(j, i)) == 0.0);
}

TEST_CASE("assembly agrees with an independent quadrature of the weak form") {
  auto mu = paper_trig_mu();
  auto rho = paper_trig_rho();
  CutVector theta = paper_cut_vector();
  Complex omega(8.0, 0.25);
  Mesh1D mesh = Mesh1D::uniform(0.0, theta.cell_length(), 64, 1);
  auto mu1 = [&](double x) { return trace_coefficient(mu, theta, 0.0, x); };
  auto rho1 = [&](double x) { return trace_coefficient(rho, theta, 0.0, x); };
  auto A = assemble_helmholtz_1d(mu1, rho1, Frequency(omega), mesh);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int n = mesh.num_dofs();
  CVector u(n), v(n);
  for (int i = 0; i < n; ++i) {
    u[i] = dist(rng);
    v[i] = dist(rng);
  }
  FeFunction1D uf{mesh, u}, vf{mesh, v};
  // High-order composite Gauss, independent of the assembly loop.
  const GaussRule& rule = gauss_rule(8);
  Complex direct = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    double a = mesh.nodes[e], len = mesh.nodes[e + 1] - a;
    for (std::size_t g = 0; g < rule.points.size(); ++g) {
      double x = a + len * rule.points[g];
      double w = len * rule.weights[g];
      direct += w * (mu1(x) * uf.derivative(x) * vf.derivative(x) -
                     rho1(x) * omega * omega * uf.evaluate(x) * vf.evaluate(x));
    }
  }
  Complex assembled = v.transpose() * A.apply(u);
  CHECK(std::abs(assembled - direct) <= 1e-6 * std::abs(direct));
}

TEST_CASE("omega = 0 yields the Neumann stiffness with constant kernel") {
  Mesh1D mesh = Mesh1D::uniform(0.0, 1.0, 9, 1);
  // Assemble the pure stiffness by passing rho = 0 weight through omega^2 = 0:
  // Frequency forbids Im = 0, so assemble with rho = 0 instead.
  auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                 [](double) { return 0.0; },
                                 Frequency(Complex(0.0, 1.0)), mesh);
  CVector ones = CVector::Ones(mesh.num_dofs());
  CHECK(A.apply(ones).norm() <= 1e-13);
  // Positive semidefinite on a few random real vectors.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    CVector x(mesh.num_dofs());
    for (int i = 0; i < x.size(); ++i) x[i] = dist(rng);
    Complex q = x.transpose() * A.apply(x);
    CHECK(q.real() >= -1e-12);
    CHECK(std::abs(q.imag()) <= 1e-12);
  }
}

TEST_CASE("non-finite coefficients are rejected") {
  Mesh1D mesh = Mesh1D::uniform(0.0, 1.0, 4, 1);
  CHECK_THROWS_AS(
      assemble_helmholtz_1d([](double) { return std::nan(""); },
                            [](double) { return 1.0; },
                            Frequency(Complex(1.0, 1.0)), mesh),
      NumericalError);
}

TEST_CASE("dirichlet solve propagates prescribed values exactly") {
  Mesh1D mesh = Mesh1D::uniform(0.0, 1.0, 12, 1);
  auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                 [](double) { return 1.0; },
                                 Frequency(Complex(2.0, 0.4)), mesh);
  Complex g0(0.3, -0.1), g1(-1.2, 2.0);
  std::pair<int, Complex> bc[] = {{0, g0}, {mesh.num_dofs() - 1, g1}};
  CVector u = solve_dirichlet(A, CVector::Zero(mesh.num_dofs()), bc);
  CHECK(u[0] == g0);
  CHECK(u[mesh.num_dofs() - 1] == g1);

  std::pair<int, Complex> zero_bc[] = {{0, Complex(0.0)},
                                       {mesh.num_dofs() - 1, Complex(0.0)}};
  CVector z = solve_dirichlet(A, CVector::Zero(mesh.num_dofs()), zero_bc);
  CHECK(z.norm() == 0.0);
}

TEST_CASE("dirichlet solve reproduces the constant-coefficient cell solution") {
  // -u'' - w^2 u = 0, u(0) = 1, u(ell) = 0: u = sin(w(ell-x))/sin(w ell).
  Complex omega(8.0, 0.25);
  double ell = 2.0 / std::sqrt(3.0);
  auto sup_err = [&](int n) {
    Mesh1D mesh = Mesh1D::uniform(0.0, ell, n, 1);
    auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                   [](double) { return 1.0; }, Frequency(omega),
                                   mesh);
    std::pair<int, Complex> bc[] = {{0, Complex(1.0)},
                                    {mesh.num_dofs() - 1, Complex(0.0)}};
    CVector u = solve_dirichlet(A, CVector::Zero(mesh.num_dofs()), bc);
    double max_err = 0.0;
    for (int i = 0; i < mesh.num_dofs(); ++i) {
      Complex exact =
          std::sin(omega * (ell - mesh.dof_point(i))) / std::sin(omega * ell);
      max_err = std::max(max_err, std::abs(u[i] - exact));
    }
    return max_err;
  };
  double e64 = sup_err(64), e128 = sup_err(128);
  CHECK(e128 <= e64 / 3.2);  // nodal O(h^2)
  CHECK(e64 <= 400.0 * (ell / 64) * (ell / 64));
}

TEST_CASE("banded solve matches a dense solve") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int n = 25, band = 2;
  BandedComplexMatrix B(n, band, band);
  CMatrix D = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - band); j <= std::min(n - 1, i + band); ++j) {
      Complex v(dist(rng), dist(rng));
      if (i == j) v += 6.0;  // keep it comfortably nonsingular
      B.set(i, j, v);
      D(i, j) = v;
    }
  CVector rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = Complex(dist(rng), dist(rng));
  CVector x_banded = B.solve(rhs);
  CVector x_dense = D.partialPivLu().solve(rhs);
  CHECK((x_banded - x_dense).norm() <= 1e-11 * x_dense.norm());
  CHECK((B.apply(x_banded) - rhs).norm() <= 1e-11 * rhs.norm());
}

TEST_CASE("second-order elements converge at third order in H1-ish sense") {
  Complex omega(4.0, 0.5);
  double ell = 1.0;
  auto exact_err = [&](int n) {
    Mesh1D mesh = Mesh1D::uniform(0.0, ell, n, 2);
    auto A = assemble_helmholtz_1d([](double) { return 1.0; },
                                   [](double) { return 1.0; }, Frequency(omega),
                                   mesh);
    std::pair<int, Complex> bc[] = {{0, Complex(1.0)},
                                    {mesh.num_dofs() - 1, Complex(0.0)}};
    CVector u = solve_dirichlet(A, CVector::Zero(mesh.num_dofs()), bc);
    double max_err = 0.0;
    for (int i = 0; i < mesh.num_dofs(); ++i) {
      Complex exact =
          std::sin(omega * (ell - mesh.dof_point(i))) / std::sin(omega * ell);
      max_err = std::max(max_err, std::abs(u[i] - exact));
    }
    return max_err;
  };
  double e16 = exact_err(16), e32 = exact_err(32);
  CHECK(e32 <= e16 / 6.0);  // at least ~h^3 at the nodes
}

TEST_CASE("transverse space identifies the endpoints") {
  TransverseSpace space = TransverseSpace::uniform(8, 1);
  CHECK(space.N == 8);
  CVector c = CVector::Zero(space.N);
  c[0] = 1.0;
  CHECK(std::abs(space.evaluate01(c, 0.0) - 1.0) == 0.0);
  CHECK(std::abs(space.evaluate(c, 1.0) - 1.0) == 0.0);  // wraps to 0
  CHECK(std::abs(space.evaluate01(c, 0.96875) - 0.75) <= 1e-13);

  // Nodal property on all dofs.
  for (int p = 0; p < space.N; ++p) {
    CVector e = CVector::Zero(space.N);
    e[p] = 1.0;
    for (int q = 0; q < space.N; ++q)
      CHECK(std::abs(space.evaluate01(e, space.dof_point(q)) -
                     (p == q ? 1.0 : 0.0)) <= 1e-13);
  }
}

TEST_CASE("periodic mass matrix is the circulant stencil") {
  int n = 10;
  TransverseSpace space = TransverseSpace::uniform(n, 1);
  RMatrix M = space.mass_matrix();
  double h = 1.0 / n;
  for (int p = 0; p < n; ++p) {
    CHECK(M(p, p) == doctest::Approx(2.0 * h / 3.0).epsilon(1e-13));
    CHECK(M(p, (p + 1) % n) == doctest::Approx(h / 6.0).epsilon(1e-13));
    CHECK(M(p, (p + n - 1) % n) == doctest::Approx(h / 6.0).epsilon(1e-13));
  }
}

TEST_CASE("gauss rules hit known node counts and symmetry") {
  for (int order : {1, 2, 3, 4, 5, 8}) {
    const GaussRule& r = gauss_rule(order);
    REQUIRE(int(r.points.size()) == order);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    // Exact for degree 2*order-1.
    int deg = 2 * order - 1;
    double val = 0.0;
    for (int g = 0; g < order; ++g)
      val += r.weights[g] * std::pow(r.points[g], deg);
    CHECK(val == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-12));
  }
}

TEST_CASE("pi is irrational enough for the sampler") {
  // Smoke check tying the constants together.
  CHECK(std::abs(paper_cut_vector().theta2 - std::sin(kPi / 3.0)) < 1e-15);
}
