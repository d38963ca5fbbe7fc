#include "quasihelm/cell_quasi1d.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace quasihelm {

double coercivity_sign_margin(const DtnQuad& T, Complex omega, int trials,
                              unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int n = T.size();
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    CVector phi(n);
    for (int i = 0; i < n; ++i) phi[i] = dist(rng);
    if (phi.norm() == 0.0) continue;
    for (const CMatrix* M : {&T.T00, &T.T11}) {
      Complex q = phi.dot(*M * phi);  // conjugating dot; phi is real
      worst = std::max(worst, (q / omega).imag());
    }
  }
  return worst;
}

CellSolutions1D solve_cell_problems_1d(double s, const PeriodicCoefficient2D& mu_p,
                                       const PeriodicCoefficient2D& rho_p,
                                       const CutVector& theta, const Frequency& omega,
                                       const Mesh1D& mesh_theta) {
  double ell = theta.cell_length();
  if (std::abs(mesh_theta.x_min()) > 1e-14 * ell ||
      std::abs(mesh_theta.x_max() - ell) > 1e-14 * ell)
    throw ConfigError("cell mesh must span (0, 1/theta2)");

  auto mu = [&](double x) { return trace_coefficient(mu_p, theta, s, x); };
  auto rho = [&](double x) { return trace_coefficient(rho_p, theta, s, x); };

  CellSolutions1D cell;
  cell.s = s;
  cell.mesh = mesh_theta;
  cell.h_theta = ell / mesh_theta.num_elements();
  cell.stiffness = assemble_helmholtz_1d(mu, rho, omega, mesh_theta);

  int last = mesh_theta.num_dofs() - 1;
  CVector zero_load = CVector::Zero(mesh_theta.num_dofs());
  std::pair<int, Complex> bc0[] = {{0, Complex(1.0)}, {last, Complex(0.0)}};
  std::pair<int, Complex> bc1[] = {{0, Complex(0.0)}, {last, Complex(1.0)}};
  cell.e0 = solve_dirichlet(cell.stiffness, zero_load, bc0);
  cell.e1 = solve_dirichlet(cell.stiffness, zero_load, bc1);
  return cell;
}

std::array<Complex, 4> local_dtn_values(const CellSolutions1D& cell,
                                        const CutVector& theta) {
  CVector Ae0 = cell.stiffness.apply(cell.e0);
  CVector Ae1 = cell.stiffness.apply(cell.e1);
  double t2 = theta.theta2;
  // t^{jk} = theta2 * <A e_j, conj-paired e_k>; order {t00, t01, t10, t11}.
  return {t2 * cell.e0.dot(Ae0), t2 * cell.e1.dot(Ae0), t2 * cell.e0.dot(Ae1),
          t2 * cell.e1.dot(Ae1)};
}

LocalDtnFunctions local_dtn_samples(std::span<const CellSolutions1D> cells,
                                    const CutVector& theta) {
  int N = static_cast<int>(cells.size());
  LocalDtnFunctions t;
  t.t00.resize(N);
  t.t01.resize(N);
  t.t10.resize(N);
  t.t11.resize(N);
  for (int p = 0; p < N; ++p) {
    auto v = local_dtn_values(cells[p], theta);
    t.t00[p] = v[0];
    t.t01[p] = v[1];
    t.t10[p] = v[2];
    t.t11[p] = v[3];
  }
  return t;
}

namespace {

std::vector<double> union_breakpoints(const TransverseSpace& space, double beta) {
  std::vector<double> pts;
  auto grid = space.full_grid();
  for (double s : grid) {
    pts.push_back(wrap01(s));
    pts.push_back(wrap01(s + beta));
    pts.push_back(wrap01(s - beta));
  }
  pts.push_back(0.0);
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts)
    if (out.empty() || p - out.back() > 1e-13) out.push_back(p);
  if (out.back() < 1.0 - 1e-13)
    out.push_back(1.0);
  else
    out.back() = 1.0;
  return out;
}

}  // namespace

DtnQuad assemble_dtn_quad_quasi1d(const LocalDtnFunctions& t,
                                  const TransverseSpace& space,
                                  const CutVector& theta,
                                  const Quasi1DOptions& options,
                                  const std::function<CellSolutions1D(double)>*
                                      fresh_solver) {
  int N = space.N;
  int d = space.mesh.order;
  double beta = theta.slope();
  int quad = options.quad_order > 0 ? options.quad_order : 2 * d + 1;
  if (options.fresh_cell_solves_at_quadrature && fresh_solver == nullptr)
    throw ConfigError("fresh-solve quadrature requested without a cell solver");

  DtnQuad T;
  T.T00 = CMatrix::Zero(N, N);
  T.T01 = CMatrix::Zero(N, N);
  T.T10 = CMatrix::Zero(N, N);
  T.T11 = CMatrix::Zero(N, N);

  auto breaks = union_breakpoints(space, beta);
  const GaussRule& rule = gauss_rule(quad);

  // Basis values of the periodic space at a point in [0,1): dof indices and
  // the d+1 local values.
  std::vector<double> phi(d + 1);
  auto basis_at = [&](double s, std::vector<int>& dofs, std::vector<double>& vals) {
    int e = space.mesh.locate(s);
    double x0 = space.mesh.nodes[e];
    double len = space.mesh.nodes[e + 1] - x0;
    lagrange_basis(d, (s - x0) / len, phi);
    dofs.resize(d + 1);
    vals.resize(d + 1);
    for (int a = 0; a <= d; ++a) {
      dofs[a] = space.mesh.dof_index(e, a) % N;
      vals[a] = phi[a];
    }
  };

  auto t_at = [&](const CVector& samples, double s) {
    return space.evaluate01(samples, s);
  };

  std::vector<int> row_dofs, col0_dofs, colp_dofs, colm_dofs;
  std::vector<double> row_vals, col0_vals, colp_vals, colm_vals;

  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    double a = breaks[k], len = breaks[k + 1] - a;
    if (len <= 0.0) continue;
    for (int g = 0; g < quad; ++g) {
      double s = a + len * rule.points[g];
      double w = len * rule.weights[g];
      double s_min = wrap01(s - beta), s_plu = wrap01(s + beta);

      Complex t00, t10, t01, t11;
      if (options.fresh_cell_solves_at_quadrature) {
        auto v0 = local_dtn_values((*fresh_solver)(s), theta);
        auto v1 = local_dtn_values((*fresh_solver)(s_min), theta);
        t00 = v0[0];
        t10 = v0[2];
        t01 = v1[1];
        t11 = v1[3];
      } else {
        t00 = t_at(t.t00, s);
        t10 = t_at(t.t10, s);
        t01 = t_at(t.t01, s_min);
        t11 = t_at(t.t11, s_min);
      }

      basis_at(s, row_dofs, row_vals);
      col0_dofs = row_dofs;
      col0_vals = row_vals;
      basis_at(s_plu, colp_dofs, colp_vals);
      basis_at(s_min, colm_dofs, colm_vals);

      for (int ra = 0; ra <= d; ++ra) {
        int p = row_dofs[ra];
        double wp = w * row_vals[ra];
        if (wp == 0.0) continue;
        for (int ca = 0; ca <= d; ++ca) {
          T.T00(p, col0_dofs[ca]) += wp * col0_vals[ca] * t00;
          T.T11(p, col0_dofs[ca]) += wp * col0_vals[ca] * t11;
          T.T10(p, colp_dofs[ca]) += wp * colp_vals[ca] * t10;
          T.T01(p, colm_dofs[ca]) += wp * colm_vals[ca] * t01;
        }
      }
    }
  }
  return T;
}

}  // namespace quasihelm
