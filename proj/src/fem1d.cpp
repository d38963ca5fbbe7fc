#include "quasihelm/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "lapack_shim.hpp"

namespace quasihelm {

namespace {

// Nodes/weights on [-1, 1] by Newton iteration on Legendre polynomials.
GaussRule compute_gauss_rule(int order) {
  GaussRule rule;
  rule.points.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double p0 = 0.0, p1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = x;
      for (int k = 2; k <= order; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node.
    p0 = 1.0;
    p1 = x;
    for (int k = 2; k <= order; ++k) {
      double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = order * (x * p1 - p0) / (x * x - 1.0);
    // Map to [0, 1].
    rule.points[i] = 0.5 * (1.0 + x);
    rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  std::sort(rule.points.begin(), rule.points.end());
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_rule(order)).first;
  return it->second;
}

Complex quadrature_on_subdivided_interval(std::span<const double> breakpoints,
                                          int order,
                                          const std::function<Complex(double)>& f) {
  const GaussRule& rule = gauss_rule(order);
  Complex total = 0.0;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    double a = breakpoints[k], b = breakpoints[k + 1];
    double len = b - a;
    if (len <= 0.0) continue;
    for (int g = 0; g < order; ++g)
      total += len * rule.weights[g] * f(a + len * rule.points[g]);
  }
  return total;
}

Mesh1D Mesh1D::uniform(double x0, double x1, int n_elements, int order) {
  if (n_elements < 1 || order < 1 || !(x1 > x0))
    throw ConfigError("invalid 1D mesh parameters");
  Mesh1D m;
  m.order = order;
  m.nodes.resize(n_elements + 1);
  for (int i = 0; i <= n_elements; ++i)
    m.nodes[i] = x0 + (x1 - x0) * double(i) / n_elements;
  m.nodes.back() = x1;
  return m;
}

double Mesh1D::dof_point(int k) const {
  int e = k / order, l = k % order;
  if (e >= num_elements()) {
    e = num_elements() - 1;
    l = order;
  }
  return nodes[e] + (nodes[e + 1] - nodes[e]) * double(l) / order;
}

int Mesh1D::locate(double x) const {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  int e = static_cast<int>(it - nodes.begin()) - 1;
  return std::clamp(e, 0, num_elements() - 1);
}

void lagrange_basis(int order, double t, std::span<double> values) {
  int n = order + 1;
  for (int i = 0; i < n; ++i) {
    double xi = double(i) / order;
    double v = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double xj = double(j) / order;
      v *= (t - xj) / (xi - xj);
    }
    values[i] = v;
  }
}

void lagrange_basis_derivative(int order, double t, std::span<double> derivs) {
  int n = order + 1;
  for (int i = 0; i < n; ++i) {
    double xi = double(i) / order;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      double xk = double(k) / order;
      double prod = 1.0 / (xi - xk);
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        double xj = double(j) / order;
        prod *= (t - xj) / (xi - xj);
      }
      sum += prod;
    }
    derivs[i] = sum;
  }
}

BandedComplexMatrix::BandedComplexMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku) {
  ab_ = CMatrix::Zero(2 * kl + ku + 1, n);
}

Complex BandedComplexMatrix::get(int i, int j) const {
  if (j - i > ku_ || i - j > kl_) return 0.0;
  return ab_(kl_ + ku_ + i - j, j);
}

void BandedComplexMatrix::add(int i, int j, Complex v) {
  ab_(kl_ + ku_ + i - j, j) += v;
}

void BandedComplexMatrix::set(int i, int j, Complex v) {
  ab_(kl_ + ku_ + i - j, j) = v;
}

CVector BandedComplexMatrix::apply(const CVector& x) const {
  CVector y = CVector::Zero(n_);
  for (int j = 0; j < n_; ++j) {
    int i0 = std::max(0, j - ku_), i1 = std::min(n_ - 1, j + kl_);
    Complex xj = x[j];
    for (int i = i0; i <= i1; ++i) y[i] += ab_(kl_ + ku_ + i - j, j) * xj;
  }
  return y;
}

CMatrix BandedComplexMatrix::solve(const CMatrix& rhs) const {
  CMatrix ab = ab_;
  CMatrix x = rhs;
  std::vector<lapack_int> ipiv(n_);
  lapack_int info = LAPACKE_zgbsv(
      LAPACK_COL_MAJOR, n_, kl_, ku_, static_cast<lapack_int>(rhs.cols()),
      ab.data(), static_cast<lapack_int>(ab.rows()), ipiv.data(), x.data(), n_);
  if (info != 0) {
    double pivot = 0.0;
    if (info > 0 && info <= n_) pivot = std::abs(ab(kl_ + ku_, info - 1));
    throw NumericalError("fem-core", "singular banded system (zgbsv info=" +
                                         std::to_string(info) + ", pivot magnitude " +
                                         std::to_string(pivot) + ")");
  }
  return x;
}

CVector BandedComplexMatrix::solve(const CVector& rhs) const {
  return solve(CMatrix(rhs)).col(0);
}

BandedComplexMatrix assemble_helmholtz_1d(const std::function<double(double)>& mu,
                                          const std::function<double(double)>& rho,
                                          const Frequency& omega, const Mesh1D& mesh) {
  int d = mesh.order;
  int band = d;
  BandedComplexMatrix A(mesh.num_dofs(), band, band);
  const GaussRule& rule = gauss_rule(std::max(2, d + 1));
  int nq = static_cast<int>(rule.points.size());
  Complex w2 = omega.omega_sq();
  std::vector<double> phi(d + 1), dphi(d + 1);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    double x0 = mesh.nodes[e], len = mesh.nodes[e + 1] - mesh.nodes[e];
    for (int g = 0; g < nq; ++g) {
      double t = rule.points[g];
      double x = x0 + len * t;
      double m = mu(x), r = rho(x);
      if (!std::isfinite(m) || !std::isfinite(r))
        throw NumericalError("fem-core", "non-finite coefficient sample at x=" +
                                             std::to_string(x));
      lagrange_basis(d, t, phi);
      lagrange_basis_derivative(d, t, dphi);
      double wq = rule.weights[g] * len;
      for (int a = 0; a <= d; ++a) {
        int p = mesh.dof_index(e, a);
        for (int b = 0; b <= d; ++b) {
          int q = mesh.dof_index(e, b);
          // Grouped so the value is bitwise symmetric in (a, b).
          Complex val = wq * (m * ((dphi[b] * dphi[a]) / (len * len)) -
                              r * w2 * (phi[b] * phi[a]));
          A.add(p, q, val);
        }
      }
    }
  }
  return A;
}

CVector assemble_load_1d(const std::function<double(double)>& f, const Mesh1D& mesh,
                         int quad_order) {
  int d = mesh.order;
  CVector load = CVector::Zero(mesh.num_dofs());
  const GaussRule& rule = gauss_rule(quad_order);
  std::vector<double> phi(d + 1);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    double x0 = mesh.nodes[e], len = mesh.nodes[e + 1] - mesh.nodes[e];
    for (std::size_t g = 0; g < rule.points.size(); ++g) {
      double t = rule.points[g];
      double fx = f(x0 + len * t);
      lagrange_basis(d, t, phi);
      double wq = rule.weights[g] * len;
      for (int a = 0; a <= d; ++a) load[mesh.dof_index(e, a)] += wq * fx * phi[a];
    }
  }
  return load;
}

CVector solve_dirichlet(const BandedComplexMatrix& A, const CVector& load,
                        std::span<const std::pair<int, Complex>> bc) {
  int n = A.size();
  std::vector<int> to_free(n, -1);
  std::vector<Complex> fixed(n, Complex(0.0));
  std::vector<bool> is_fixed(n, false);
  for (const auto& [dof, val] : bc) {
    is_fixed[dof] = true;
    fixed[dof] = val;
  }
  int nf = 0;
  for (int i = 0; i < n; ++i)
    if (!is_fixed[i]) to_free[i] = nf++;

  int band = std::max(A.lower_bandwidth(), A.upper_bandwidth());
  BandedComplexMatrix Af(nf, band, band);
  CVector rhs = CVector::Zero(nf);
  for (int i = 0; i < n; ++i) {
    if (is_fixed[i]) continue;
    int fi = to_free[i];
    rhs[fi] = load[i];
    int j0 = std::max(0, i - band), j1 = std::min(n - 1, i + band);
    for (int j = j0; j <= j1; ++j) {
      Complex v = A.get(i, j);
      if (v == Complex(0.0)) continue;
      if (is_fixed[j])
        rhs[fi] -= v * fixed[j];
      else
        Af.add(fi, to_free[j], v);
    }
  }
  CVector uf = nf > 0 ? Af.solve(rhs) : CVector();
  CVector u(n);
  for (int i = 0; i < n; ++i) u[i] = is_fixed[i] ? fixed[i] : uf[to_free[i]];
  return u;
}

Complex FeFunction1D::evaluate(double x) const {
  int e = mesh.locate(x);
  double x0 = mesh.nodes[e], len = mesh.nodes[e + 1] - mesh.nodes[e];
  double t = (x - x0) / len;
  int d = mesh.order;
  std::vector<double> phi(d + 1);
  lagrange_basis(d, t, phi);
  Complex v = 0.0;
  for (int a = 0; a <= d; ++a) v += coeffs[mesh.dof_index(e, a)] * phi[a];
  return v;
}

Complex FeFunction1D::derivative(double x) const {
  int e = mesh.locate(x);
  double x0 = mesh.nodes[e], len = mesh.nodes[e + 1] - mesh.nodes[e];
  double t = (x - x0) / len;
  int d = mesh.order;
  std::vector<double> dphi(d + 1);
  lagrange_basis_derivative(d, t, dphi);
  Complex v = 0.0;
  for (int a = 0; a <= d; ++a) v += coeffs[mesh.dof_index(e, a)] * (dphi[a] / len);
  return v;
}

TransverseSpace::TransverseSpace(Mesh1D m) : mesh(std::move(m)) {
  if (mesh.x_min() != 0.0 || mesh.x_max() != 1.0)
    throw ConfigError("transverse space must live on [0, 1]");
  N = mesh.num_dofs() - 1;
}

TransverseSpace TransverseSpace::uniform(int n_elements, int order) {
  return TransverseSpace(Mesh1D::uniform(0.0, 1.0, n_elements, order));
}

Complex TransverseSpace::evaluate01(const CVector& coeffs, double s) const {
  int e = mesh.locate(s);
  double x0 = mesh.nodes[e], len = mesh.nodes[e + 1] - mesh.nodes[e];
  double t = (s - x0) / len;
  int d = mesh.order;
  std::vector<double> phi(d + 1);
  lagrange_basis(d, t, phi);
  Complex v = 0.0;
  for (int a = 0; a <= d; ++a) {
    int dof = mesh.dof_index(e, a) % N;  // identify dof N with dof 0
    v += coeffs[dof] * phi[a];
  }
  return v;
}

Complex TransverseSpace::evaluate(const CVector& coeffs, double s) const {
  return evaluate01(coeffs, wrap01(s));
}

RMatrix TransverseSpace::mass_matrix() const {
  int d = mesh.order;
  RMatrix M = RMatrix::Zero(N, N);
  const GaussRule& rule = gauss_rule(d + 1);
  std::vector<double> phi(d + 1);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    double len = mesh.nodes[e + 1] - mesh.nodes[e];
    for (std::size_t g = 0; g < rule.points.size(); ++g) {
      lagrange_basis(d, rule.points[g], phi);
      double wq = rule.weights[g] * len;
      for (int a = 0; a <= d; ++a)
        for (int b = 0; b <= d; ++b)
          M(mesh.dof_index(e, a) % N, mesh.dof_index(e, b) % N) +=
              wq * phi[a] * phi[b];
    }
  }
  return M;
}

CVector TransverseSpace::interpolate(const std::function<Complex(double)>& f) const {
  CVector c(N);
  for (int p = 0; p < N; ++p) c[p] = f(dof_point(p));
  return c;
}

std::vector<double> TransverseSpace::full_grid() const {
  std::vector<double> g(mesh.num_dofs());
  for (int k = 0; k < mesh.num_dofs(); ++k) g[k] = mesh.dof_point(k);
  return g;
}

}  // namespace quasihelm
