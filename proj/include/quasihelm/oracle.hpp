#pragma once

#include <functional>
#include <vector>

#include "quasihelm/fem1d.hpp"
#include "quasihelm/media.hpp"
#include "quasihelm/pipeline.hpp"
#include "quasihelm/riccati.hpp"

namespace quasihelm {

// Truncation length for reference solves: exp(-sqrt(rho_-/mu_+) Im(omega) L)
// <= target.
struct TruncationPolicy {
  double target = 1e-10;
  double max_dofs = 6.4e7;

  double length(double mu_plus, double rho_minus, double im_omega) const;
};

// Direct FE reference on (0, L) with u(0) = 1, u(L) = 0.
struct Reference1D {
  FeFunction1D u;
  double L = 0.0;

  SampledField field(double x_hi) const;
};

Reference1D solve_truncated_halfline(double s, const ExteriorMedium& medium,
                                     const Frequency& omega,
                                     const TruncationPolicy& policy = {},
                                     double h_ref = 5e-4);

// ||u_h - u_ref||_H1 / ||u_ref||_H1 on (x_lo, x_hi), integrated exactly on the
// union-refined grid of both fields.
double relative_h1_error(const SampledField& u_h, const SampledField& u_ref,
                         double x_lo, double x_hi);

// Rectangle-rule estimate of exp(Int_0^1 log |p(s)| ds) with
// p(s) = u^+_{s - theta1/theta2}(1/theta2) from truncated reference solves.
double reference_spectral_radius(const ExteriorMedium& medium,
                                 const Frequency& omega, int n_samples = 256,
                                 const TruncationPolicy& policy = {},
                                 double h_ref = 5e-4);

// Number of eigenvalues within the relative band of the reference circle.
int spectrum_band_count(const PropagationOperator& P, double radius_ref,
                        double band = 0.05);

// Direct FE solve of the whole-line problem on (-a-L, a+L) with homogeneous
// Dirichlet truncation; serves as the oracle for assembled solutions.
struct ReferenceWholeLine {
  FeFunction1D u;
  double L = 0.0;

  SampledField field(double x_lo, double x_hi) const;
};

ReferenceWholeLine solve_truncated_wholeline(const MediumSpec& medium,
                                             const Frequency& omega,
                                             const TruncationPolicy& policy = {},
                                             double h_ref = 2e-3);

struct ConvergenceReport {
  std::vector<double> inv_h;
  std::vector<double> errors;
  double slope = 0.0;  // fitted rate p in error ~ C h^p
};

ConvergenceReport convergence_study(Method method, const ExteriorMedium& medium,
                                    const Frequency& omega,
                                    const std::vector<double>& h_list,
                                    const TruncationPolicy& policy = {},
                                    double h_ref = 5e-4);

double fit_loglog_slope(const std::vector<double>& inv_h,
                        const std::vector<double>& errors);

}  // namespace quasihelm
