#include "quasihelm/cell_2d.hpp"

#include <Eigen/SparseLU>

#include "quasihelm/parallel.hpp"

namespace quasihelm {

CellSolutions2D solve_cell_problems_2d(const PeriodicCoefficient2D& mu,
                                       const PeriodicCoefficient2D& rho,
                                       const CutVector& theta,
                                       const Frequency& omega,
                                       const PeriodicTriMesh& mesh) {
  const int m = mesh.m;
  const int n_dofs = mesh.num_identified_dofs();
  const int N = m;

  CellSolutions2D cells;
  cells.mesh = mesh;
  cells.A_full = assemble_directional_helmholtz_2d(mu, rho, theta, omega, mesh);

  // Dirichlet faces: y2 = 0 (dofs 0..m-1) and y2 = 1 (dofs m*m..m*m+m-1).
  std::vector<int> boundary;
  boundary.reserve(2 * m);
  for (int p = 0; p < m; ++p) boundary.push_back(mesh.bottom_dof(p));
  for (int p = 0; p < m; ++p) boundary.push_back(mesh.top_dof(p));

  std::vector<int> to_interior(n_dofs, -1);
  std::vector<bool> is_boundary(n_dofs, false);
  for (int b : boundary) is_boundary[b] = true;
  int n_int = 0;
  for (int i = 0; i < n_dofs; ++i)
    if (!is_boundary[i]) to_interior[i] = n_int++;

  SparseCMatrix A_II(n_int, n_int);
  CMatrix rhs = CMatrix::Zero(n_int, 2 * m);  // one column per boundary dof
  {
    std::vector<int> boundary_col(n_dofs, -1);
    for (int b = 0; b < 2 * m; ++b) boundary_col[boundary[b]] = b;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(cells.A_full.nonZeros());
    for (int k = 0; k < cells.A_full.outerSize(); ++k) {
      for (SparseCMatrix::InnerIterator it(cells.A_full, k); it; ++it) {
        int r = static_cast<int>(it.row()), c = static_cast<int>(it.col());
        if (is_boundary[r]) continue;
        if (is_boundary[c])
          rhs(to_interior[r], boundary_col[c]) -= it.value();
        else
          trip.emplace_back(to_interior[r], to_interior[c], it.value());
      }
    }
    A_II.setFromTriplets(trip.begin(), trip.end());
  }

  Eigen::SparseLU<SparseCMatrix> lu;
  lu.analyzePattern(A_II);
  lu.factorize(A_II);
  if (lu.info() != Eigen::Success)
    throw NumericalError("cell-dtn-2d", "singular interior system in cell solve");

  // One factorization shared across the 2N right-hand sides.
  CMatrix interior(n_int, 2 * m);
  parallel_for(0, 2 * m, [&](int c) { interior.col(c) = lu.solve(rhs.col(c)); });

  cells.V0 = CMatrix::Zero(n_dofs, N);
  cells.V1 = CMatrix::Zero(n_dofs, N);
  for (int p = 0; p < N; ++p) {
    for (int i = 0; i < n_dofs; ++i) {
      if (to_interior[i] >= 0) {
        cells.V0(i, p) = interior(to_interior[i], p);
        cells.V1(i, p) = interior(to_interior[i], m + p);
      }
    }
    cells.V0(mesh.bottom_dof(p), p) = 1.0;  // trace phi_p on y2 = 0, exactly
    cells.V1(mesh.top_dof(p), p) = 1.0;     // trace phi_p on y2 = 1, exactly
  }
  return cells;
}

DtnQuad assemble_dtn_quad_2d(const CellSolutions2D& cells) {
  DtnQuad T;
  {
    CMatrix W0 = cells.A_full * cells.V0;
    T.T00 = cells.V0.adjoint() * W0;
    T.T01 = cells.V1.adjoint() * W0;
  }
  CMatrix W1 = cells.A_full * cells.V1;
  T.T10 = cells.V0.adjoint() * W1;
  T.T11 = cells.V1.adjoint() * W1;
  return T;
}

}  // namespace quasihelm
