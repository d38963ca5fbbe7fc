#include "quasihelm/wholeline.hpp"

#include <algorithm>
#include <cmath>

namespace quasihelm {

namespace {

// Mesh over [lo, hi] with nodes at the given internal breakpoints and uniform
// refinement of each segment to steps <= h.
Mesh1D mesh_with_breaks(double lo, double hi, std::vector<double> breaks, double h,
                        int order) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return b - a < 1e-13; }),
               breaks.end());
  Mesh1D mesh;
  mesh.order = order;
  mesh.nodes.push_back(lo);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (b <= lo || a >= hi) continue;
    a = std::max(a, lo);
    b = std::min(b, hi);
    int n = std::max(1, int(std::ceil((b - a) / h - 1e-12)));
    for (int k = 1; k <= n; ++k) mesh.nodes.push_back(a + (b - a) * k / n);
  }
  mesh.nodes.back() = hi;
  return mesh;
}

}  // namespace

InteriorSolution solve_interior(const MediumSpec& medium, const Frequency& omega,
                                Complex lambda_plus, Complex lambda_minus,
                                double h, int order) {
  if (!(lambda_plus.imag() < 0.0) || !(lambda_minus.imag() < 0.0))
    throw NumericalError("wholeline", "DtN coefficients must have Im < 0");
  double a = medium.a;
  std::vector<double> breaks;
  for (const auto* pc : {&medium.mu_i, &medium.rho_i})
    for (double b : pc->breaks)
      if (b > -a && b < a) breaks.push_back(b);
  Mesh1D mesh = mesh_with_breaks(-a, a, std::move(breaks), h, order);

  auto mu = [&](double x) { return medium.mu(x); };
  auto rho = [&](double x) { return medium.rho(x); };
  BandedComplexMatrix A = assemble_helmholtz_1d(mu, rho, omega, mesh);
  int last = mesh.num_dofs() - 1;
  A.add(last, last, lambda_plus);
  A.add(0, 0, lambda_minus);

  // The source has a flat-top exponential shape; integrate with order 6.
  CVector load = assemble_load_1d(medium.source, mesh, 6);
  InteriorSolution sol;
  sol.a = a;
  sol.u = FeFunction1D{std::move(mesh), A.solve(load)};
  return sol;
}

WholeLineSolution assemble_whole_line(InteriorSolution interior,
                                      HalfLineSolution w_plus,
                                      HalfLineSolution w_minus) {
  return WholeLineSolution{std::move(interior), std::move(w_plus),
                           std::move(w_minus)};
}

Complex WholeLineSolution::evaluate(double x) const {
  double av = a();
  if (x < -av) return interior.value_minus_a() * w_minus.evaluate(-av - x);
  if (x > av) return interior.value_plus_a() * w_plus.evaluate(x - av);
  return interior.at(x);
}

Complex WholeLineSolution::derivative(double x) const {
  double av = a();
  if (x < -av) return -interior.value_minus_a() * w_minus.derivative(-av - x);
  if (x > av) return interior.value_plus_a() * w_plus.derivative(x - av);
  return interior.u.derivative(x);
}

SampledField WholeLineSolution::field(double x_lo, double x_hi) const {
  SampledField f;
  const WholeLineSolution* self = this;
  f.value = [self](double x) { return self->evaluate(x); };
  f.deriv = [self](double x) { return self->derivative(x); };
  double av = a();
  std::vector<double> pts{x_lo, x_hi, -av, av};
  for (double node : interior.u.mesh.nodes) pts.push_back(node);
  for (double b : w_plus.breakpoints(std::max(0.0, x_hi - av)))
    pts.push_back(av + b);
  for (double b : w_minus.breakpoints(std::max(0.0, -av - x_lo)))
    pts.push_back(-av - b);
  std::sort(pts.begin(), pts.end());
  for (double& p : pts) p = std::clamp(p, x_lo, x_hi);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            pts.end());
  f.breakpoints = std::move(pts);
  return f;
}

double WholeLineSolution::flux_jump_plus(const MediumSpec& medium) const {
  double av = a();
  Complex inner = medium.mu_i(av - 1e-12) * interior.u.derivative(av - 1e-12);
  Complex outer = medium.mu(av + 1e-12) * derivative(av + 1e-12);
  return std::abs(inner - outer);
}

double WholeLineSolution::flux_jump_minus(const MediumSpec& medium) const {
  double av = a();
  Complex inner = medium.mu_i(-av + 1e-12) * interior.u.derivative(-av + 1e-12);
  Complex outer = medium.mu(-av - 1e-12) * derivative(-av - 1e-12);
  return std::abs(inner - outer);
}

}  // namespace quasihelm
