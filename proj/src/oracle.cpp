#include "quasihelm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "quasihelm/parallel.hpp"

namespace quasihelm {

double TruncationPolicy::length(double mu_plus, double rho_minus,
                                double im_omega) const {
  if (!(im_omega > 0.0)) throw ConfigError("truncation needs Im(omega) > 0");
  double alpha = std::sqrt(rho_minus / mu_plus);
  return -std::log(target) / (alpha * im_omega);
}

Reference1D solve_truncated_halfline(double s, const ExteriorMedium& medium,
                                     const Frequency& omega,
                                     const TruncationPolicy& policy,
                                     double h_ref) {
  double L = policy.length(medium.mu.upper_bound, medium.rho.lower_bound,
                           omega.omega.imag());
  double n_dofs = L / h_ref;
  if (n_dofs > policy.max_dofs) {
    double L_max = policy.max_dofs * h_ref;
    double alpha = std::sqrt(medium.rho.lower_bound / medium.mu.upper_bound);
    double suggested = std::exp(-alpha * omega.omega.imag() * L_max);
    throw NumericalError(
        "oracle-harness",
        "truncated domain needs " + std::to_string(long(n_dofs)) +
            " dofs; coarsen the target to about " + std::to_string(suggested) +
            " or increase h_ref");
  }

  Mesh1D mesh = Mesh1D::uniform(0.0, L, std::max(2, int(std::ceil(L / h_ref))), 1);
  auto mu = [&](double x) { return trace_coefficient(medium.mu, medium.theta, s, x); };
  auto rho = [&](double x) {
    return trace_coefficient(medium.rho, medium.theta, s, x);
  };
  BandedComplexMatrix A = assemble_helmholtz_1d(mu, rho, omega, mesh);
  CVector load = CVector::Zero(mesh.num_dofs());
  std::pair<int, Complex> bc[] = {{0, Complex(1.0)},
                                  {mesh.num_dofs() - 1, Complex(0.0)}};
  Reference1D ref;
  ref.L = L;
  ref.u = FeFunction1D{std::move(mesh), solve_dirichlet(A, load, bc)};
  return ref;
}

SampledField Reference1D::field(double x_hi) const {
  SampledField f;
  auto fe = std::make_shared<FeFunction1D>(u);
  f.value = [fe](double x) { return fe->evaluate(x); };
  f.deriv = [fe](double x) { return fe->derivative(x); };
  f.breakpoints.push_back(0.0);
  for (double node : fe->mesh.nodes) {
    if (node >= x_hi) break;
    f.breakpoints.push_back(node);
  }
  f.breakpoints.push_back(x_hi);
  f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end()),
                      f.breakpoints.end());
  return f;
}

ReferenceWholeLine solve_truncated_wholeline(const MediumSpec& medium,
                                             const Frequency& omega,
                                             const TruncationPolicy& policy,
                                             double h_ref) {
  // mu_+ and rho_- come from the declared coefficient bounds.
  double L = policy.length(medium.mu_p.upper_bound, medium.rho_p.lower_bound,
                           omega.omega.imag());
  double a = medium.a;
  if (2.0 * (a + L) / h_ref > policy.max_dofs)
    throw NumericalError("oracle-harness",
                         "whole-line truncated domain too large; coarsen the "
                         "target or increase h_ref");

  std::vector<double> nodes;
  std::vector<double> breaks{-a, a};
  for (const auto* pc : {&medium.mu_i, &medium.rho_i})
    for (double b : pc->breaks)
      if (b > -a && b < a) breaks.push_back(b);
  breaks.push_back(-a - L);
  breaks.push_back(a + L);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x < 1e-13; }),
               breaks.end());
  Mesh1D mesh;
  mesh.order = 1;
  mesh.nodes.push_back(breaks.front());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double lo = breaks[i], hi = breaks[i + 1];
    int n = std::max(1, int(std::ceil((hi - lo) / h_ref - 1e-12)));
    for (int k = 1; k <= n; ++k) mesh.nodes.push_back(lo + (hi - lo) * k / n);
  }

  auto mu = [&](double x) { return medium.mu(x); };
  auto rho = [&](double x) { return medium.rho(x); };
  BandedComplexMatrix A = assemble_helmholtz_1d(mu, rho, omega, mesh);
  CVector load = assemble_load_1d(medium.source, mesh, 6);
  std::pair<int, Complex> bc[] = {{0, Complex(0.0)},
                                  {mesh.num_dofs() - 1, Complex(0.0)}};
  ReferenceWholeLine ref;
  ref.L = L;
  ref.u = FeFunction1D{std::move(mesh), solve_dirichlet(A, load, bc)};
  return ref;
}

SampledField ReferenceWholeLine::field(double x_lo, double x_hi) const {
  SampledField f;
  auto fe = std::make_shared<FeFunction1D>(u);
  f.value = [fe](double x) { return fe->evaluate(x); };
  f.deriv = [fe](double x) { return fe->derivative(x); };
  f.breakpoints.push_back(x_lo);
  for (double node : fe->mesh.nodes)
    if (node > x_lo && node < x_hi) f.breakpoints.push_back(node);
  f.breakpoints.push_back(x_hi);
  return f;
}

namespace {

// Exact integrals of a complex linear segment delta(t) = a (1-t) + b t.
double segment_l2(Complex a, Complex b, double len) {
  return len * (std::norm(a) + std::norm(b) + (a * std::conj(b)).real()) / 3.0;
}

}  // namespace

double relative_h1_error(const SampledField& u_h, const SampledField& u_ref,
                         double x_lo, double x_hi) {
  // Both solutions are transferred onto the first field's own grid (nodal
  // interpolation) and the H1 norm of the piecewise-linear difference is
  // integrated exactly. Comparing through the method grid keeps quadrature
  // noise out of slope fits and measures the accuracy the reconstruction
  // actually delivers at its representation points.
  std::vector<double> grid{x_lo, x_hi};
  for (double b : u_h.breakpoints)
    if (b > x_lo && b < x_hi) grid.push_back(b);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return b - a < 1e-14; }),
             grid.end());

  std::vector<Complex> vh(grid.size()), vr(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vh[i] = u_h.value(grid[i]);
    vr[i] = u_ref.value(grid[i]);
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    double len = grid[k + 1] - grid[k];
    if (len <= 0.0) continue;
    Complex da = vh[k] - vr[k], db = vh[k + 1] - vr[k + 1];
    num += segment_l2(da, db, len) + std::norm(db - da) / len;
    den += segment_l2(vr[k], vr[k + 1], len) +
           std::norm(vr[k + 1] - vr[k]) / len;
  }
  if (!(den > 0.0))
    throw NumericalError("oracle-harness", "reference norm vanishes on window");
  return std::sqrt(num / den);
}

double reference_spectral_radius(const ExteriorMedium& medium,
                                 const Frequency& omega, int n_samples,
                                 const TruncationPolicy& policy, double h_ref) {
  if (n_samples < 1) throw ConfigError("need at least one sample");
  double beta = medium.theta.slope();
  double x_eval = medium.theta.cell_length();
  std::vector<double> log_abs(n_samples);
  parallel_for(0, n_samples, [&](int j) {
    double s = wrap01(double(j) / n_samples - beta);
    Reference1D ref = solve_truncated_halfline(s, medium, omega, policy, h_ref);
    double p = std::abs(ref.u.evaluate(x_eval));
    if (p == 0.0)
      throw NumericalError("oracle-harness",
                           "p(s) = 0 at s = " + std::to_string(s));
    log_abs[j] = std::log(p);
  });
  double mean = 0.0;
  for (double v : log_abs) mean += v / n_samples;
  return std::exp(mean);
}

int spectrum_band_count(const PropagationOperator& P, double radius_ref,
                        double band) {
  if (!(radius_ref > 0.0)) throw ConfigError("reference radius must be positive");
  int count = 0;
  for (int i = 0; i < P.lambdas.size(); ++i)
    if (std::abs(std::abs(P.lambdas[i]) - radius_ref) / radius_ref <= band)
      ++count;
  return count;
}

double fit_loglog_slope(const std::vector<double>& inv_h,
                        const std::vector<double>& errors) {
  // error ~ C h^p: least-squares slope of log(error) against log(h).
  std::size_t n = inv_h.size();
  if (n < 2 || errors.size() != n)
    throw ConfigError("slope fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(errors[i] > 0.0))
      throw NumericalError("oracle-harness", "non-positive error in slope fit");
    double x = -std::log(inv_h[i]);  // log(h)
    double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(Method method, const ExteriorMedium& medium,
                                    const Frequency& omega,
                                    const std::vector<double>& h_list,
                                    const TruncationPolicy& policy,
                                    double h_ref) {
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i)
    if (h_list[i] <= h_list[i + 1])
      throw ConfigError("h list must be sorted decreasing");

  double x_hi = 4.0 * medium.theta.cell_length();
  Reference1D ref = solve_truncated_halfline(0.0, medium, omega, policy, h_ref);
  SampledField ref_field = ref.field(x_hi);

  ConvergenceReport report;
  for (double h : h_list) {
    PipelineConfig cfg;
    cfg.method = method;
    cfg.h = h;
    cfg.L_cells = 4;
    HalfLineRun run;
    try {
      run = run_halfline(medium, omega, cfg);
    } catch (const NumericalError& err) {
      throw NumericalError(err.module(), std::string(err.what()) +
                                             " (at 1/h = " +
                                             std::to_string(1.0 / h) + ")");
    }
    report.inv_h.push_back(1.0 / h);
    report.errors.push_back(
        relative_h1_error(run.halfline_field(x_hi), ref_field, 0.0, x_hi));
  }
  report.slope = fit_loglog_slope(report.inv_h, report.errors);
  return report;
}

}  // namespace quasihelm
