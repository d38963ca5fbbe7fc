#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "quasihelm/media.hpp"
#include "quasihelm/types.hpp"

namespace quasihelm {

// Gauss-Legendre rule on [0, 1]; `order` points, exact for degree 2*order-1.
struct GaussRule {
  std::vector<double> points;
  std::vector<double> weights;
};
const GaussRule& gauss_rule(int order);

// Gauss-Legendre of the given order applied on each subinterval of a sorted
// breakpoint list.
Complex quadrature_on_subdivided_interval(std::span<const double> breakpoints,
                                          int order,
                                          const std::function<Complex(double)>& f);

// 1D Lagrange mesh: `nodes` are the element vertices; each element carries
// order+1 equispaced dof points (shared at vertices).
struct Mesh1D {
  std::vector<double> nodes;
  int order = 1;

  static Mesh1D uniform(double x0, double x1, int n_elements, int order = 1);

  int num_elements() const { return static_cast<int>(nodes.size()) - 1; }
  int num_dofs() const { return num_elements() * order + 1; }
  double x_min() const { return nodes.front(); }
  double x_max() const { return nodes.back(); }
  int dof_index(int element, int local) const { return element * order + local; }
  double dof_point(int k) const;
  // Element containing x (clamped to the span).
  int locate(double x) const;
};

// Lagrange basis on the reference element [0, 1] with equispaced nodes.
void lagrange_basis(int order, double t, std::span<double> values);
void lagrange_basis_derivative(int order, double t, std::span<double> derivs);

// Complex band matrix in LAPACK zgbsv storage (extra kl rows for pivoting
// fill). Entry (i, j) lives at ab(kl + ku + i - j, j).
class BandedComplexMatrix {
public:
  BandedComplexMatrix() = default;
  BandedComplexMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  Complex get(int i, int j) const;
  void add(int i, int j, Complex v);
  void set(int i, int j, Complex v);

  CVector apply(const CVector& x) const;
  // Solves A X = B by banded LU with partial pivoting (overwrites neither).
  CMatrix solve(const CMatrix& rhs) const;
  CVector solve(const CVector& rhs) const;

private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  CMatrix ab_;
};

// Assembles A[p,q] = Int(mu phi_q' phi_p' - rho omega^2 phi_q phi_p) with
// per-element Gauss quadrature of order max(2, order + 1). Complex symmetric.
BandedComplexMatrix assemble_helmholtz_1d(const std::function<double(double)>& mu,
                                          const std::function<double(double)>& rho,
                                          const Frequency& omega, const Mesh1D& mesh);

// Load vector Int(f phi_p) with the given quadrature order per element.
CVector assemble_load_1d(const std::function<double(double)>& f, const Mesh1D& mesh,
                         int quad_order);

// Solves A u = load with prescribed dofs eliminated symmetrically; constrained
// entries of the result equal the prescribed values exactly.
CVector solve_dirichlet(const BandedComplexMatrix& A, const CVector& load,
                        std::span<const std::pair<int, Complex>> bc);

// FE function on a Mesh1D (coefficients on the dof points).
struct FeFunction1D {
  Mesh1D mesh;
  CVector coeffs;

  Complex evaluate(double x) const;
  Complex derivative(double x) const;
};

// Periodic Lagrange space on (0, 1): dofs s_0 < ... < s_N with s_0 = 0,
// s_N = 1 identified, dimension N. Coefficient index 0 is the identified dof.
struct TransverseSpace {
  Mesh1D mesh;
  int N = 0;

  static TransverseSpace uniform(int n_elements, int order = 1);
  explicit TransverseSpace(Mesh1D m);
  TransverseSpace() = default;

  double dof_point(int p) const { return mesh.dof_point(p); }
  // Periodic evaluation of a member function at any real s.
  Complex evaluate(const CVector& coeffs, double s) const;
  Complex evaluate01(const CVector& coeffs, double s01) const;  // s in [0,1)
  RMatrix mass_matrix() const;
  // Nodal interpolation (coefficients = samples at dof points).
  CVector interpolate(const std::function<Complex(double)>& f) const;
  // Dof grid including both endpoints {s_0, ..., s_N}.
  std::vector<double> full_grid() const;
};

}  // namespace quasihelm
