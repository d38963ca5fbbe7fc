#pragma once

#include <functional>
#include <vector>

#include "quasihelm/dtn.hpp"
#include "quasihelm/fem1d.hpp"
#include "quasihelm/media.hpp"

namespace quasihelm {

// Discrete 1D cell problems at transverse offset s on I_theta = (0, 1/theta2):
// e0(0) = 1, e0(1/theta2) = 0 and e1(0) = 0, e1(1/theta2) = 1, imposed by
// constraint elimination. The pre-elimination stiffness is kept so local DtN
// values can be formed with the same quadrature as the assembly.
struct CellSolutions1D {
  double s = 0.0;
  Mesh1D mesh;
  CVector e0, e1;
  double h_theta = 0.0;
  BandedComplexMatrix stiffness;

  FeFunction1D e0_function() const { return FeFunction1D{mesh, e0}; }
  FeFunction1D e1_function() const { return FeFunction1D{mesh, e1}; }
};

CellSolutions1D solve_cell_problems_1d(double s, const PeriodicCoefficient2D& mu_p,
                                       const PeriodicCoefficient2D& rho_p,
                                       const CutVector& theta, const Frequency& omega,
                                       const Mesh1D& mesh_theta);

// Nodal samples of the local DtN functions t^{jk}(s_p) on the transverse dof
// set, t^{jk}(s) = theta2 * Int(mu e_j' conj(e_k)' - rho omega^2 e_j conj(e_k)).
struct LocalDtnFunctions {
  CVector t00, t01, t10, t11;  // length N, indexed by transverse dof
};

// t^{jk} values of a single cell solve.
std::array<Complex, 4> local_dtn_values(const CellSolutions1D& cell,
                                        const CutVector& theta);

LocalDtnFunctions local_dtn_samples(std::span<const CellSolutions1D> cells,
                                    const CutVector& theta);

struct Quasi1DOptions {
  int quad_order = 0;  // 0: use 2*order+1 (exact for the interpolated integrand)
  // Diagnostic path: solve a fresh cell problem at every quadrature node
  // instead of interpolating the nodal t^{jk} samples.
  bool fresh_cell_solves_at_quadrature = false;
};

// Weighted-translation assembly
//   T^{jk}[p,q] = Int_0^1 t^{jk}(s - k b) phi_q(s + (j-k) b) phi_p(s) ds,
// b = theta1/theta2, with breakpoints from the dof grid and both +-b shifts.
DtnQuad assemble_dtn_quad_quasi1d(const LocalDtnFunctions& t,
                                  const TransverseSpace& space,
                                  const CutVector& theta,
                                  const Quasi1DOptions& options = {},
                                  const std::function<CellSolutions1D(double)>*
                                      fresh_solver = nullptr);

}  // namespace quasihelm
