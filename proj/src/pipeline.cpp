#include "quasihelm/pipeline.hpp"

#include <cmath>

#include "quasihelm/parallel.hpp"

namespace quasihelm {

Mesh1D make_theta_mesh(const CutVector& theta, double h_theta, int order) {
  double ell = theta.cell_length();
  int n = std::max(2, int(std::lround(ell / h_theta)));
  return Mesh1D::uniform(0.0, ell, n, order);
}

std::function<CellSolutions1D(double)> make_cell_solver(
    const ExteriorMedium& medium, const Frequency& omega, const Mesh1D& mesh_theta) {
  return [medium, omega, mesh_theta](double s) {
    return solve_cell_problems_1d(s, medium.mu, medium.rho, medium.theta, omega,
                                  mesh_theta);
  };
}

HalfLineRun run_halfline(const ExteriorMedium& medium, const Frequency& omega,
                         const PipelineConfig& config) {
  if (!(config.h > 0.0)) throw ConfigError("mesh step must be positive");
  double h_theta = config.h_theta > 0.0 ? config.h_theta : config.h;

  HalfLineRun run;
  run.method = config.method;
  run.theta = medium.theta;

  Mesh1D mesh_theta = make_theta_mesh(medium.theta, h_theta, config.order);
  auto cell_solver = make_cell_solver(medium, omega, mesh_theta);

  std::optional<CellSolutions2D> cells2d;
  if (config.method == Method::quasi1d) {
    int n_elems = std::max(2, int(std::lround(1.0 / config.h)));
    run.space = TransverseSpace::uniform(n_elems, config.order);

    std::vector<CellSolutions1D> dof_cells(run.space.N);
    parallel_for(0, run.space.N, [&](int p) {
      dof_cells[p] = cell_solver(run.space.dof_point(p));
    });
    LocalDtnFunctions t = local_dtn_samples(dof_cells, medium.theta);
    run.T = assemble_dtn_quad_quasi1d(
        t, run.space, medium.theta, config.quasi1d,
        config.quasi1d.fresh_cell_solves_at_quadrature ? &cell_solver : nullptr);
  } else {
    if (config.order != 1)
      throw ConfigError("the 2d method is built on P1 triangles (order = 1)");
    int m = std::max(2, int(std::lround(1.0 / config.h)));
    cells2d = solve_cell_problems_2d(medium.mu, medium.rho, medium.theta, omega,
                                     PeriodicTriMesh::unit_cell(m));
    run.space = cells2d->trace_space();
    run.T = assemble_dtn_quad_2d(*cells2d);
  }

  QepOptions qep_options = config.qep;
  if (config.method == Method::two_d) {
    // The discrete 2d operators are smoothing: T10 legitimately loses its
    // conditioning under refinement and the pencil develops (0, inf) pairs.
    qep_options.b_singularity_tol = 0.0;
  }
  run.qep = solve_qep(run.T, qep_options);
  run.P = select_and_build(run.qep, config.select);

  if (config.phi)
    run.phi = run.space.interpolate(
        [&](double s) { return Complex(config.phi(s), 0.0); });
  else
    run.phi = CVector::Ones(run.space.N);

  run.dtn = dtn_coefficient(run.T, run.P, run.space, run.phi, medium.theta);

  run.halfline = reconstruct_halfline(run.P, cell_solver, run.space, run.phi,
                                      config.L_cells, medium.theta);
  if (config.method == Method::two_d)
    run.guide = reconstruct_halfguide(run.P, *cells2d, run.phi, config.L_cells,
                                      medium.theta);
  return run;
}

SampledField HalfLineRun::halfline_field(double x_hi) const {
  SampledField f;
  if (method == Method::two_d) {
    auto view = std::make_shared<HalfLineFrom2D>(HalfLineFrom2D{&*guide, 0.0});
    f.value = [view](double x) { return view->evaluate(x); };
    f.deriv = [view](double x) { return view->derivative(x); };
    f.breakpoints = view->breakpoints(x_hi);
  } else {
    const HalfLineSolution* u = &halfline;
    f.value = [u](double x) { return u->evaluate(x); };
    f.deriv = [u](double x) { return u->derivative(x); };
    f.breakpoints = u->breakpoints(x_hi);
  }
  return f;
}

}  // namespace quasihelm
