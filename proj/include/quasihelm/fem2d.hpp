#pragma once

#include <Eigen/Sparse>
#include <array>
#include <utility>
#include <vector>

#include "quasihelm/media.hpp"
#include "quasihelm/types.hpp"

namespace quasihelm {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

// Structured periodic triangulation of (0,1)^2: m x m squares, each split
// along the lower-left/upper-right diagonal. Nodes (i, j) at (i/m, j/m).
// The dof set identifies y1 = 0 with y1 = 1 (the lateral periodic faces);
// the y2 faces keep their own dofs (they carry Dirichlet data).
struct PeriodicTriMesh {
  int m = 0;

  static PeriodicTriMesh unit_cell(int m);

  int num_nodes() const { return (m + 1) * (m + 1); }
  int num_identified_dofs() const { return m * (m + 1); }
  int num_triangles() const { return 2 * m * m; }
  double h() const { return 1.0 / m; }

  int dof(int i, int j) const { return j * m + (i % m); }
  // Matching node pairs under translation by e1 resp. e2.
  std::vector<std::pair<int, int>> identification_pairs_y1() const;
  std::vector<std::pair<int, int>> identification_pairs_y2() const;

  // Bottom/top face dofs in transverse order (index p corresponds to the
  // transverse dof at s = p/m).
  int bottom_dof(int p) const { return dof(p, 0); }
  int top_dof(int p) const { return dof(p, m); }
};

// A[p,q] = Int((mu (theta . grad phi_q)(theta . grad phi_p)
//              - rho omega^2 phi_q phi_p)) on the y1-identified dof set.
SparseCMatrix assemble_directional_helmholtz_2d(const PeriodicCoefficient2D& mu,
                                                const PeriodicCoefficient2D& rho,
                                                const CutVector& theta,
                                                const Frequency& omega,
                                                const PeriodicTriMesh& mesh);

// P1 point evaluation on the identified dof vector; local cell coordinates
// y1 in [0,1) (wrapped), y2 in [0,1].
Complex evaluate_p1(const PeriodicTriMesh& mesh, const CVector& coeffs, double y1,
                    double y2);
// Directional derivative theta . grad of the same function (piecewise const).
Complex evaluate_p1_dtheta(const PeriodicTriMesh& mesh, const CVector& coeffs,
                           const CutVector& theta, double y1, double y2);

}  // namespace quasihelm
