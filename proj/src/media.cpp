#include "quasihelm/media.hpp"

#include <cmath>
#include <memory>

namespace quasihelm {

CutVector::CutVector(double t1, double t2, bool irrational)
    : theta1(t1), theta2(t2), assert_irrational(irrational) {
  if (!(t1 > 0.0) || !(t2 > 0.0))
    throw ConfigError("cut vector components must be positive");
}

CutVector CutVector::from_angle(double radians, bool irrational) {
  return CutVector(std::cos(radians), std::sin(radians), irrational);
}

Frequency::Frequency(Complex w) : omega(w) {
  if (!(w.imag() > 0.0))
    throw ConfigError("frequency must have positive imaginary part");
}

double PiecewiseConstant::operator()(double x) const {
  if (empty()) throw ConfigError("empty piecewise coefficient");
  if (x <= breaks.front()) return values.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (x < breaks[i + 1]) return values[i];
  return values.back();
}

double MediumSpec::mu(double x) const {
  if (std::abs(x) < a && !mu_i.empty()) return mu_i(x);
  return mu_p(x * theta.theta1, x * theta.theta2);
}

double MediumSpec::rho(double x) const {
  if (std::abs(x) < a && !rho_i.empty()) return rho_i(x);
  return rho_p(x * theta.theta1, x * theta.theta2);
}

double trace_coefficient(const PeriodicCoefficient2D& coef, const CutVector& theta,
                         double s, double x) {
  return coef(s + x * theta.theta1, x * theta.theta2);
}

double s_theta(const CutVector& theta, double y1, double y2) {
  return y1 - (y2 / theta.theta2) * theta.theta1;
}

std::vector<std::array<double, 2>> sample_broken_line(const CutVector& theta,
                                                      double M, double step) {
  if (!(step > 0.0)) throw ConfigError("broken-line step must be positive");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(static_cast<std::size_t>(M / step) + 2);
  for (long k = 0;; ++k) {
    double x = k * step;
    if (x > M) break;
    pts.push_back({wrap01(x * theta.theta1), wrap01(x * theta.theta2)});
  }
  return pts;
}

ExteriorMedium reflect_translate_medium(const MediumSpec& spec, Side side) {
  double a = spec.a;
  double t1 = spec.theta.theta1, t2 = spec.theta.theta2;
  auto shift = [a, t1, t2](const PeriodicCoefficient2D& c, Side s) {
    PeriodicCoefficient2D out;
    out.lower_bound = c.lower_bound;
    out.upper_bound = c.upper_bound;
    auto ev = c.evaluator;
    if (s == Side::plus)
      out.evaluator = [ev, a, t1, t2](double y1, double y2) {
        return ev(y1 + a * t1, y2 + a * t2);
      };
    else
      out.evaluator = [ev, a, t1, t2](double y1, double y2) {
        return ev(-y1 - a * t1, -y2 - a * t2);
      };
    return out;
  };
  return ExteriorMedium{shift(spec.mu_p, side), shift(spec.rho_p, side), spec.theta};
}

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

PeriodicCoefficient2D paper_trig_mu() {
  PeriodicCoefficient2D c;
  c.evaluator = [](double y1, double y2) {
    return 1.5 + std::cos(kTwoPi * y1) * std::cos(kTwoPi * y2);
  };
  c.lower_bound = 0.5;
  c.upper_bound = 2.5;
  return c;
}

PeriodicCoefficient2D paper_trig_rho() {
  PeriodicCoefficient2D c;
  c.evaluator = [](double y1, double y2) {
    return 1.5 + 0.5 * std::sin(kTwoPi * y1) + 0.5 * std::sin(kTwoPi * y2);
  };
  c.lower_bound = 0.5;
  c.upper_bound = 2.5;
  return c;
}

PeriodicCoefficient2D constant_coefficient(double c) {
  if (!(c > 0.0)) throw ConfigError("constant coefficient must be positive");
  PeriodicCoefficient2D out;
  out.evaluator = [c](double, double) { return c; };
  out.lower_bound = c;
  out.upper_bound = c;
  return out;
}

PeriodicCoefficient2D tabulated_coefficient(std::vector<double> values, int rows,
                                            int cols) {
  if (rows < 1 || cols < 1 || values.size() != std::size_t(rows) * std::size_t(cols))
    throw ConfigError("tabulated coefficient: table size mismatch");
  double lo = values[0], hi = values[0];
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("tabulated coefficient entries must be positive finite");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  PeriodicCoefficient2D out;
  out.lower_bound = lo;
  out.upper_bound = hi;
  auto table = std::make_shared<std::vector<double>>(std::move(values));
  out.evaluator = [table, rows, cols](double y1, double y2) {
    double u = wrap01(y1) * rows, v = wrap01(y2) * cols;
    int i0 = static_cast<int>(u), j0 = static_cast<int>(v);
    if (i0 >= rows) i0 = rows - 1;
    if (j0 >= cols) j0 = cols - 1;
    double fu = u - i0, fv = v - j0;
    int i1 = (i0 + 1) % rows, j1 = (j0 + 1) % cols;
    const auto& t = *table;
    double v00 = t[std::size_t(i0) * cols + j0], v10 = t[std::size_t(i1) * cols + j0];
    double v01 = t[std::size_t(i0) * cols + j1], v11 = t[std::size_t(i1) * cols + j1];
    return (1 - fu) * ((1 - fv) * v00 + fv * v01) + fu * ((1 - fv) * v10 + fv * v11);
  };
  return out;
}

PiecewiseConstant step_interior_mu() {
  return PiecewiseConstant{{-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0},
                           {0.8339, 2.0, 0.8339}};
}

PiecewiseConstant step_interior_rho() {
  return PiecewiseConstant{{-1.0, 0.0, 1.0}, {1.8729, 1.1271}};
}

std::function<double(double)> paper_source() {
  return [](double x) {
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(100.0 * (1.0 - 1.0 / (1.0 - x * x)));
  };
}

CutVector paper_cut_vector() {
  constexpr double kPi = 3.14159265358979323846264338328;
  return CutVector::from_angle(kPi / 3.0);
}

MediumSpec paper_medium() {
  MediumSpec m{paper_trig_mu(), paper_trig_rho(), paper_cut_vector(), 1.0,
               step_interior_mu(), step_interior_rho(), paper_source()};
  return m;
}

MediumSpec constant_medium(double mu, double rho, const CutVector& theta, double a) {
  MediumSpec m{constant_coefficient(mu), constant_coefficient(rho), theta, a,
               PiecewiseConstant{{-a, a}, {mu}}, PiecewiseConstant{{-a, a}, {rho}},
               [](double) { return 0.0; }};
  return m;
}

}  // namespace quasihelm
