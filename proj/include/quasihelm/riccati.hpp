#pragma once

#include "quasihelm/dtn.hpp"
#include "quasihelm/types.hpp"

namespace quasihelm {

// All 2N eigenpairs of lambda^2 T10 psi + lambda (T00 + T11) psi + T01 psi = 0,
// kept in projective (alpha, beta) form so that eigenvalues saturating to 0 or
// infinity (the 2d method drives T10 towards a smoothing matrix) stay
// well-defined: lambda = alpha / beta. Sorted by (|lambda|, arg lambda).
struct QepSpectrum {
  CVector alphas, betas;  // normalized: |alpha|^2 + |beta|^2 = 1
  CVector eigenvalues;    // alpha / beta (may overflow to inf)
  CMatrix eigenvectors;   // N x 2N, unit columns
  double min_unit_circle_distance = 0.0;
  // Closure of the multiset under lambda -> 1/lambda, measured in the chordal
  // metric on the Riemann sphere (0 and infinity are legitimate partners).
  double worst_pairing_defect = 0.0;

  int count_inside_unit_disk() const;  // |alpha| < |beta|
};

struct QepOptions {
  double pairing_tol = 1e-6;
  double unit_circle_margin = 1e-8;
  double eigen_residual_tol = 1e-10;
  // Relative smallest singular value of T10 below which the linearization
  // matrix B is declared numerically singular. The quasi-1d operators keep
  // T10 well conditioned; the 2d method legitimately loses this and disables
  // the guard (see pipeline).
  double b_singularity_tol = 1e-14;
};

QepSpectrum solve_qep(const DtnQuad& T, const QepOptions& options = {});

// The N eigenpairs inside the unit disk and the reconstructed matrix
// P = Psi diag(lambda) Psi^{-1} acting on transverse coefficient vectors.
struct PropagationOperator {
  CVector lambdas;  // N, sorted by (|lambda|, arg lambda)
  CMatrix Psi;      // N x N
  CMatrix P;
  double cond_Psi = 0.0;

  double spectral_radius() const;
  // P^l phi through the eigendecomposition (stable over many cells).
  CVector apply_power(const CVector& phi, long l) const;

  Eigen::PartialPivLU<CMatrix> psi_lu;
};

struct SelectOptions {
  double cond_threshold = 1e12;
};

PropagationOperator select_and_build(const QepSpectrum& spectrum,
                                     const SelectOptions& options = {});

double spectral_radius(const PropagationOperator& P);

// || T10 P^2 + (T00 + T11) P + T01 ||_F / || T01 ||_F.
double riccati_residual(const DtnQuad& T, const CMatrix& P);

}  // namespace quasihelm
