#include "quasihelm/halfguide.hpp"

#include <algorithm>
#include <cmath>

namespace quasihelm {

Complex HalfLineSolution::evaluate(double x) const {
  long l = std::clamp<long>(long(std::floor(x * theta.theta2)), 0, L_cells - 1);
  double t = x - double(l) / theta.theta2;
  t = std::clamp(t, 0.0, theta.cell_length());
  const CellSolutions1D& c = cells[l];
  return w0[l] * FeFunction1D{c.mesh, c.e0}.evaluate(t) +
         w1[l] * FeFunction1D{c.mesh, c.e1}.evaluate(t);
}

Complex HalfLineSolution::derivative(double x) const {
  long l = std::clamp<long>(long(std::floor(x * theta.theta2)), 0, L_cells - 1);
  double t = x - double(l) / theta.theta2;
  t = std::clamp(t, 0.0, theta.cell_length());
  const CellSolutions1D& c = cells[l];
  return w0[l] * FeFunction1D{c.mesh, c.e0}.derivative(t) +
         w1[l] * FeFunction1D{c.mesh, c.e1}.derivative(t);
}

std::vector<double> HalfLineSolution::breakpoints(double x_hi) const {
  std::vector<double> pts{0.0};
  for (long l = 0; l < L_cells; ++l) {
    double offset = double(l) / theta.theta2;
    if (offset > x_hi) break;
    for (double node : cells[l].mesh.nodes) {
      double x = offset + node;
      if (x < x_hi) pts.push_back(x);
    }
  }
  pts.push_back(x_hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            pts.end());
  return pts;
}

HalfLineSolution reconstruct_halfline(
    const PropagationOperator& P,
    const std::function<CellSolutions1D(double)>& cell_solver,
    const TransverseSpace& space, const CVector& phi, long L_cells,
    const CutVector& theta) {
  if (L_cells < 1) throw ConfigError("need at least one cell");
  double beta = theta.slope();
  HalfLineSolution u;
  u.theta = theta;
  u.L_cells = L_cells;
  u.cells.reserve(L_cells);
  u.w0.resize(L_cells);
  u.w1.resize(L_cells);
  for (long l = 0; l < L_cells; ++l) {
    double s_l = wrap01(double(l) * beta);
    u.cells.push_back(cell_solver(s_l));
    CVector trace_l = P.apply_power(phi, l);
    CVector trace_l1 = P.apply_power(phi, l + 1);
    u.w0[l] = space.evaluate(trace_l, double(l) * beta);
    u.w1[l] = space.evaluate(trace_l1, double(l + 1) * beta);
  }
  return u;
}

HalfGuideSolution reconstruct_halfguide(const PropagationOperator& P,
                                        const CellSolutions2D& cells2d,
                                        const CVector& phi, long L_cells,
                                        const CutVector& theta) {
  if (L_cells < 1) throw ConfigError("need at least one cell");
  HalfGuideSolution g;
  g.method = HalfGuideSolution::Method::two_d;
  g.theta = theta;
  g.L_cells = L_cells;
  g.mesh2d = cells2d.mesh;
  g.traces.resize(L_cells + 1);
  for (long l = 0; l <= L_cells; ++l) g.traces[l] = P.apply_power(phi, l);
  g.cell_fields.resize(L_cells);
  for (long l = 0; l < L_cells; ++l)
    g.cell_fields[l] = cells2d.V0 * g.traces[l] + cells2d.V1 * g.traces[l + 1];
  return g;
}

HalfGuideSolution reconstruct_halfguide_quasi1d(
    const PropagationOperator& P, std::vector<CellSolutions1D> dof_cells,
    const TransverseSpace& space, const CVector& phi, long L_cells,
    const CutVector& theta) {
  if (L_cells < 1) throw ConfigError("need at least one cell");
  if (static_cast<int>(dof_cells.size()) != space.N)
    throw ConfigError("need one cell solve per transverse dof");
  HalfGuideSolution g;
  g.method = HalfGuideSolution::Method::quasi_1d;
  g.theta = theta;
  g.L_cells = L_cells;
  g.space = space;
  g.dof_cells = std::move(dof_cells);
  g.traces.resize(L_cells + 1);
  for (long l = 0; l <= L_cells; ++l) g.traces[l] = P.apply_power(phi, l);
  return g;
}

namespace {

// Interpolated quasi-1d evaluation of E^j(psi) at a point of the unit cell.
Complex fibered_value(const HalfGuideSolution& g, const CVector& psi, int j,
                      double s, double x, bool derivative) {
  const TransverseSpace& sp = *g.space;
  double beta = g.theta.slope();
  double sw = wrap01(s);
  int e = sp.mesh.locate(sw);
  int d = sp.mesh.order;
  double x0 = sp.mesh.nodes[e], len = sp.mesh.nodes[e + 1] - x0;
  std::vector<double> phi(d + 1);
  lagrange_basis(d, (sw - x0) / len, phi);
  Complex interp = 0.0;
  for (int a = 0; a <= d; ++a) {
    int dof = sp.mesh.dof_index(e, a) % sp.N;
    const CellSolutions1D& cell = g.dof_cells[dof];
    FeFunction1D f{cell.mesh, j == 0 ? cell.e0 : cell.e1};
    interp += phi[a] * (derivative ? f.derivative(x) : f.evaluate(x));
  }
  Complex weight = sp.evaluate(psi, s + j * beta);
  return weight * interp;
}

}  // namespace

Complex HalfGuideSolution::evaluate(double y1, double y2) const {
  long l = std::clamp<long>(long(std::floor(y2)), 0, L_cells - 1);
  double y2loc = std::clamp(y2 - double(l), 0.0, 1.0);
  if (method == Method::two_d)
    return evaluate_p1(*mesh2d, cell_fields[l], y1, y2loc);
  double s = s_theta(theta, y1, y2loc);
  double x = y2loc / theta.theta2;
  return fibered_value(*this, traces[l], 0, s, x, false) +
         fibered_value(*this, traces[l + 1], 1, s, x, false);
}

std::vector<double> HalfGuideSolution::cell_norms(int n) const {
  std::vector<double> norms(L_cells, 0.0);
  for (long l = 0; l < L_cells; ++l) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double y1 = (i + 0.5) / n, y2loc = (j + 0.5) / n;
        Complex u, du;
        if (method == Method::two_d) {
          u = evaluate_p1(*mesh2d, cell_fields[l], y1, y2loc);
          du = evaluate_p1_dtheta(*mesh2d, cell_fields[l], theta, y1, y2loc);
        } else {
          double s = s_theta(theta, y1, y2loc);
          double x = y2loc / theta.theta2;
          u = fibered_value(*this, traces[l], 0, s, x, false) +
              fibered_value(*this, traces[l + 1], 1, s, x, false);
          // d/dx along the fiber is exactly Dtheta U.
          du = fibered_value(*this, traces[l], 0, s, x, true) +
               fibered_value(*this, traces[l + 1], 1, s, x, true);
        }
        acc += (std::norm(u) + std::norm(du)) / double(n) / double(n);
      }
    }
    norms[l] = std::sqrt(acc);
  }
  return norms;
}

DtnResult dtn_coefficient(const DtnQuad& T, const PropagationOperator& P,
                          const TransverseSpace& space, const CVector& phi,
                          const CutVector& theta) {
  Complex phi0 = space.evaluate01(phi, 0.0);
  if (std::abs(phi0 - 1.0) > 1e-12)
    throw ConfigError("boundary data must satisfy phi(0) = 1");

  DtnResult res;
  res.Lambda = T.T00 + T.T10 * P.P;
  CVector b = res.Lambda * phi;
  Eigen::PartialPivLU<RMatrix> mass_lu(space.mass_matrix());
  RVector re = mass_lu.solve(b.real());
  RVector im = mass_lu.solve(b.imag());
  res.lambda_plus = Complex(re[0], im[0]) / theta.theta2;
  if (!(res.lambda_plus.imag() < 0.0))
    throw NumericalError("halfguide",
                         "nonphysical DtN sign: Im(lambda) = " +
                             std::to_string(res.lambda_plus.imag()));
  return res;
}

Complex HalfLineFrom2D::evaluate(double x) const {
  const auto& g = *guide;
  return g.evaluate(wrap01(s0 + x * g.theta.theta1), x * g.theta.theta2);
}

Complex HalfLineFrom2D::derivative(double x) const {
  const auto& g = *guide;
  double y2 = x * g.theta.theta2;
  long l = std::clamp<long>(long(std::floor(y2)), 0, g.L_cells - 1);
  double y2loc = std::clamp(y2 - double(l), 0.0, 1.0);
  return evaluate_p1_dtheta(*g.mesh2d, g.cell_fields[l], g.theta,
                            wrap01(s0 + x * g.theta.theta1), y2loc);
}

std::vector<double> HalfLineFrom2D::breakpoints(double x_hi) const {
  const auto& g = *guide;
  int m = g.mesh2d->m;
  double t1 = g.theta.theta1, t2 = g.theta.theta2;
  std::vector<double> pts{0.0, x_hi};
  auto add_range = [&](double rate, double offset) {
    // x values with offset + x * rate in (1/m) Z.
    if (std::abs(rate) < 1e-14) return;
    double k_lo = offset * m, k_hi = (offset + x_hi * rate) * m;
    if (k_lo > k_hi) std::swap(k_lo, k_hi);
    for (long k = long(std::ceil(k_lo)); k <= long(std::floor(k_hi)); ++k) {
      double x = (double(k) / m - offset) / rate;
      if (x > 0.0 && x < x_hi) pts.push_back(x);
    }
  };
  add_range(t2, 0.0);        // y2 grid lines
  add_range(t1, s0);         // y1 grid lines
  add_range(t1 - t2, s0);    // element diagonals
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a < 1e-14; }),
            pts.end());
  return pts;
}

}  // namespace quasihelm
