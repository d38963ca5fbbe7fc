#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "quasihelm/halfguide.hpp"

namespace quasihelm {

enum class Method { quasi1d, two_d };

// A field on (0, x_max) that can be compared in H1: pointwise value and
// derivative plus the breakpoints between which both are polynomial.
struct SampledField {
  std::function<Complex(double)> value;
  std::function<Complex(double)> deriv;
  std::vector<double> breakpoints;
};

struct PipelineConfig {
  Method method = Method::quasi1d;
  double h = 1.0 / 32;   // transverse mesh step
  double h_theta = 0.0;  // theta-direction step; 0 means h
  int order = 1;         // Lagrange degree of the quasi-1d spaces
  long L_cells = 4;
  std::function<double(double)> phi;  // boundary data, phi(0) = 1; default 1
  Quasi1DOptions quasi1d;
  QepOptions qep;
  SelectOptions select;
};

// Everything the half-line pipeline produces for one exterior medium:
// cell problems -> DtN quad -> Riccati -> reconstruction -> DtN coefficient.
struct HalfLineRun {
  Method method = Method::quasi1d;
  CutVector theta{1.0, 1.0};
  TransverseSpace space;
  CVector phi;
  DtnQuad T;
  QepSpectrum qep;
  PropagationOperator P;
  DtnResult dtn;

  HalfLineSolution halfline;                 // quasi-1d reconstruction
  std::optional<HalfGuideSolution> guide;    // 2d field (always set for two_d)

  Complex lambda() const { return dtn.lambda_plus; }
  double rho_P() const { return P.spectral_radius(); }

  // Half-line view for error measurement; keeps pointers into *this.
  SampledField halfline_field(double x_hi) const;
};

HalfLineRun run_halfline(const ExteriorMedium& medium, const Frequency& omega,
                         const PipelineConfig& config);

// Cell solver bound to a medium (used for fresh per-s solves).
std::function<CellSolutions1D(double)> make_cell_solver(
    const ExteriorMedium& medium, const Frequency& omega, const Mesh1D& mesh_theta);

Mesh1D make_theta_mesh(const CutVector& theta, double h_theta, int order);

}  // namespace quasihelm
