#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "quasihelm/types.hpp"

namespace quasihelm {

// Cut direction of a quasiperiodic medium of order 2. Irrationality of
// theta1/theta2 cannot be verified in floating point; the flag records the
// caller's assertion.
struct CutVector {
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool assert_irrational = true;

  CutVector(double t1, double t2, bool irrational = true);
  static CutVector from_angle(double radians, bool irrational = true);

  double slope() const { return theta1 / theta2; }  // beta = theta1/theta2
  double cell_length() const { return 1.0 / theta2; }
};

// 1-periodic coefficient on R^2 with declared ellipticity bounds.
struct PeriodicCoefficient2D {
  std::function<double(double, double)> evaluator;
  double lower_bound = 0.0;
  double upper_bound = 0.0;

  double operator()(double y1, double y2) const { return evaluator(y1, y2); }
};

struct Frequency {
  Complex omega;
  explicit Frequency(Complex w);
  Complex omega_sq() const { return omega * omega; }
};

// Piecewise-constant interior coefficient: values[i] on (breaks[i], breaks[i+1]).
struct PiecewiseConstant {
  std::vector<double> breaks;
  std::vector<double> values;

  double operator()(double x) const;
  bool empty() const { return values.empty(); }
};

// Locally perturbed quasiperiodic medium: quasiperiodic traces of (mu_p, rho_p)
// outside (-a, a), piecewise interior coefficients and a compactly supported
// source inside.
struct MediumSpec {
  PeriodicCoefficient2D mu_p;
  PeriodicCoefficient2D rho_p;
  CutVector theta{1.0, 1.0};
  double a = 0.0;
  PiecewiseConstant mu_i;
  PiecewiseConstant rho_i;
  std::function<double(double)> source;

  // Whole-line coefficients (interior pieces inside (-a, a), traces outside).
  double mu(double x) const;
  double rho(double x) const;
};

// mu_{s,theta}(x) = mu_p((s,0) + x theta); 1-periodic in s.
double trace_coefficient(const PeriodicCoefficient2D& coef, const CutVector& theta,
                         double s, double x);

// Transverse coordinate: s_theta(y) = y1 - (y2/theta2) theta1, so that
// s_theta((s,0) + x theta) = s.
double s_theta(const CutVector& theta, double y1, double y2);

// {(x theta1 mod 1, x theta2 mod 1) : x = 0, step, 2 step, ..., <= M}.
std::vector<std::array<double, 2>> sample_broken_line(const CutVector& theta,
                                                      double M, double step);

enum class Side { plus, minus };

// Exterior medium moved to the origin so the plus-type half-line pipeline
// applies to either side: for plus, F(y) = F0(y + a theta); for minus,
// F(y) = F0(-y - a theta). The transformed half-line solution w satisfies
// w(x) = u^+(a + x) resp. w(x) = u^-(-a - x), and its DtN coefficient at 0
// equals lambda^+ resp. lambda^-.
struct ExteriorMedium {
  PeriodicCoefficient2D mu;
  PeriodicCoefficient2D rho;
  CutVector theta;
};

ExteriorMedium reflect_translate_medium(const MediumSpec& spec, Side side);

// Coefficient presets ("paper-trig", constant, tabulated-on-grid).
PeriodicCoefficient2D paper_trig_mu();
PeriodicCoefficient2D paper_trig_rho();
PeriodicCoefficient2D constant_coefficient(double c);

// Values on the uniform grid y = (i/rows, j/cols), bilinear periodic
// interpolation in between; table is row-major with values[i*cols + j].
PeriodicCoefficient2D tabulated_coefficient(std::vector<double> values, int rows,
                                            int cols);

// Interior perturbation and source used by the reference experiments
// (mu_i: 0.8339 | 2 | 0.8339 on thirds of (-1,1); rho_i: 1.8729 | 1.1271;
// f(x) = exp(100 (1 - 1/(1 - x^2))) on (-1,1)).
PiecewiseConstant step_interior_mu();
PiecewiseConstant step_interior_rho();
std::function<double(double)> paper_source();

CutVector paper_cut_vector();  // (cos pi/3, sin pi/3)

// Full medium presets.
MediumSpec paper_medium();
MediumSpec constant_medium(double mu, double rho, const CutVector& theta,
                           double a = 1.0);

}  // namespace quasihelm
