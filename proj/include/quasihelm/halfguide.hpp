#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "quasihelm/cell_2d.hpp"
#include "quasihelm/cell_quasi1d.hpp"
#include "quasihelm/riccati.hpp"

namespace quasihelm {

// Half-line solution assembled cell by cell: on cell l (x in [l/theta2,
// (l+1)/theta2)) it equals w0[l] e0_{s_l} + w1[l] e1_{s_l} with s_l = l b mod 1
// and weights w0[l] = (P^l phi)(l b), w1[l] = (P^{l+1} phi)((l+1) b).
struct HalfLineSolution {
  CutVector theta{1.0, 1.0};
  long L_cells = 0;
  std::vector<CellSolutions1D> cells;
  std::vector<Complex> w0, w1;

  double x_max() const { return L_cells / theta.theta2; }
  Complex evaluate(double x) const;
  Complex derivative(double x) const;
  // Dof points of every cell mesh mapped into x coordinates, up to x_hi.
  std::vector<double> breakpoints(double x_hi) const;
};

HalfLineSolution reconstruct_halfline(
    const PropagationOperator& P,
    const std::function<CellSolutions1D(double)>& cell_solver,
    const TransverseSpace& space, const CVector& phi, long L_cells,
    const CutVector& theta);

// Half-guide solution, cell by cell: U(. + l e2)|_{C0} = E0(P^l phi) +
// E1(P^{l+1} phi). The 2d variant stores combined identified-dof coefficient
// vectors; the quasi-1d variant evaluates through the fibered formula.
struct HalfGuideSolution {
  enum class Method { two_d, quasi_1d };
  Method method = Method::two_d;
  CutVector theta{1.0, 1.0};
  long L_cells = 0;
  std::vector<CVector> traces;  // phi^(l) = P^l phi, l = 0..L_cells

  // 2d representation
  std::optional<PeriodicTriMesh> mesh2d;
  std::vector<CVector> cell_fields;  // per-cell identified-dof coefficients

  // quasi-1d representation
  std::optional<TransverseSpace> space;
  std::vector<CellSolutions1D> dof_cells;  // cell solves at the dof points

  // U(y1, y2) with y2 in [0, L_cells].
  Complex evaluate(double y1, double y2) const;
  // H1_theta-type cell energy norms sqrt(Int |D U|^2 + |U|^2) per cell,
  // sampled by quadrature (used to check the geometric decay).
  std::vector<double> cell_norms(int samples_per_dim = 32) const;
};

HalfGuideSolution reconstruct_halfguide(const PropagationOperator& P,
                                        const CellSolutions2D& cells2d,
                                        const CVector& phi, long L_cells,
                                        const CutVector& theta);

HalfGuideSolution reconstruct_halfguide_quasi1d(
    const PropagationOperator& P, std::vector<CellSolutions1D> dof_cells,
    const TransverseSpace& space, const CVector& phi, long L_cells,
    const CutVector& theta);

// DtN operator and coefficient: Lambda = T00 + T10 P (weak-form matrix) and
// lambda_plus = (Lambda phi)(0) / theta2, the evaluation going through the
// mass-matrix Riesz representative in the transverse space.
struct DtnResult {
  CMatrix Lambda;
  Complex lambda_plus;
};

DtnResult dtn_coefficient(const DtnQuad& T, const PropagationOperator& P,
                          const TransverseSpace& space, const CVector& phi,
                          const CutVector& theta);

// Half-line extraction from a 2d half-guide reconstruction: evaluates
// U((s0 + x theta1) mod 1, x theta2) by point location (the fibered
// cross-check against the quasi-1d reconstruction).
struct HalfLineFrom2D {
  const HalfGuideSolution* guide;
  double s0 = 0.0;

  Complex evaluate(double x) const;
  Complex derivative(double x) const;  // d/dx along the line = Dtheta U
  std::vector<double> breakpoints(double x_hi) const;
};

}  // namespace quasihelm
