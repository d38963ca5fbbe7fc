#pragma once

#include "quasihelm/dtn.hpp"
#include "quasihelm/fem1d.hpp"
#include "quasihelm/fem2d.hpp"
#include "quasihelm/media.hpp"

namespace quasihelm {

// Lifted cell problems on (0,1)^2 with y1-periodic lateral conditions: for
// each transverse basis function phi_p, E0(phi_p) carries trace phi_p on
// y2 = 0 and 0 on y2 = 1, E1(phi_p) the opposite. Columns of V0/V1 hold the
// identified-dof coefficients. The un-eliminated bilinear form A_full is kept
// for the weak DtN assembly.
struct CellSolutions2D {
  PeriodicTriMesh mesh;
  SparseCMatrix A_full;
  CMatrix V0, V1;  // num_identified_dofs x N

  int transverse_dim() const { return mesh.m; }
  TransverseSpace trace_space() const {
    return TransverseSpace::uniform(mesh.m, 1);
  }
};

CellSolutions2D solve_cell_problems_2d(const PeriodicCoefficient2D& mu,
                                       const PeriodicCoefficient2D& rho,
                                       const CutVector& theta,
                                       const Frequency& omega,
                                       const PeriodicTriMesh& mesh);

// T^{jk}[p,q] = Int(mu Dtheta E^j(phi_q) Dtheta conj(E^k(phi_p))
//                  - rho omega^2 E^j(phi_q) conj(E^k(phi_p))).
DtnQuad assemble_dtn_quad_2d(const CellSolutions2D& cells);

}  // namespace quasihelm
