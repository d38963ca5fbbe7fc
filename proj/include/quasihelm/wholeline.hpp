#pragma once

#include "quasihelm/halfguide.hpp"
#include "quasihelm/pipeline.hpp"

namespace quasihelm {

// Interior solve on (-a, a) with DtN boundary terms lambda+- folded into the
// bilinear form; mesh nodes are placed on the coefficient discontinuities.
struct InteriorSolution {
  FeFunction1D u;
  double a = 0.0;

  Complex at(double x) const { return u.evaluate(x); }
  Complex value_minus_a() const { return u.evaluate(u.mesh.x_min()); }
  Complex value_plus_a() const { return u.evaluate(u.mesh.x_max()); }
};

InteriorSolution solve_interior(const MediumSpec& medium, const Frequency& omega,
                                Complex lambda_plus, Complex lambda_minus,
                                double h, int order = 1);

// Piecewise assembly of the whole-line solution: u^i inside, u^i(+-a) times
// the half-line factors outside (the half-line solutions live in the
// translated/reflected coordinates of reflect_translate_medium).
struct WholeLineSolution {
  InteriorSolution interior;
  HalfLineSolution w_plus;   // w(t) = u^+(a + t)
  HalfLineSolution w_minus;  // w(t) = u^-(-a - t)

  double a() const { return interior.a; }
  Complex evaluate(double x) const;
  Complex derivative(double x) const;
  SampledField field(double x_lo, double x_hi) const;

  // |mu u'(a-) - mu u'(a+)| by one-sided FE derivative recovery.
  double flux_jump_plus(const MediumSpec& medium) const;
  double flux_jump_minus(const MediumSpec& medium) const;
};

WholeLineSolution assemble_whole_line(InteriorSolution interior,
                                      HalfLineSolution w_plus,
                                      HalfLineSolution w_minus);

}  // namespace quasihelm
