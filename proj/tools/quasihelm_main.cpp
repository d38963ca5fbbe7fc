// Command-line front end: halfline | wholeline | convergence | spectrum |
// fibrage experiments with CSV artifacts. Exit codes: 0 success, 2 config
// error, 3 numerical failure.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "quasihelm/config.hpp"
#include "quasihelm/csv.hpp"
#include "quasihelm/oracle.hpp"
#include "quasihelm/wholeline.hpp"

namespace qh = quasihelm;
namespace fs = std::filesystem;

namespace {

std::string out_path(const qh::RunConfig& rc, const std::string& name) {
  fs::create_directories(rc.out_dir);
  return (fs::path(rc.out_dir) / name).string();
}

double window_or_default(const qh::RunConfig& rc) {
  return rc.window > 0.0 ? rc.window : 4.0 * rc.medium.theta.cell_length();
}

qh::ExteriorMedium pure_exterior(const qh::RunConfig& rc) {
  return qh::ExteriorMedium{rc.medium.mu_p, rc.medium.rho_p, rc.medium.theta};
}

void write_summary(const qh::RunConfig& rc, const qh::HalfLineRun& run) {
  qh::CsvWriter csv(out_path(rc, "summary.csv"),
                    {"lambda_re", "lambda_im", "rho_P", "cond_Psi",
                     "pairing_defect", "riccati_residual"});
  csv.row({run.lambda().real(), run.lambda().imag(), run.rho_P(), run.P.cond_Psi,
           run.qep.worst_pairing_defect, qh::riccati_residual(run.T, run.P.P)});
}

int run_halfline_experiment(const qh::RunConfig& rc) {
  qh::HalfLineRun run = qh::run_halfline(pure_exterior(rc), rc.omega, rc.pipeline);
  double x_hi = std::min(window_or_default(rc), run.halfline.x_max());
  qh::CsvWriter csv(out_path(rc, "u.csv"), {"x", "u_re", "u_im"});
  for (long i = 0; i <= rc.export_samples; ++i) {
    double x = x_hi * double(i) / double(rc.export_samples);
    qh::Complex u = run.method == qh::Method::two_d
                        ? qh::HalfLineFrom2D{&*run.guide, 0.0}.evaluate(x)
                        : run.halfline.evaluate(x);
    csv.row({x, u.real(), u.imag()});
  }
  write_summary(rc, run);

  if (rc.export_field) {
    // Half-guide field on a vertex grid, cell by cell.
    qh::HalfGuideSolution guide =
        run.guide.has_value()
            ? *run.guide
            : [&]() {
                qh::Mesh1D mesh_theta = qh::make_theta_mesh(
                    run.theta,
                    rc.pipeline.h_theta > 0 ? rc.pipeline.h_theta : rc.pipeline.h,
                    rc.pipeline.order);
                auto solver =
                    qh::make_cell_solver(pure_exterior(rc), rc.omega, mesh_theta);
                std::vector<qh::CellSolutions1D> cells;
                for (int p = 0; p < run.space.N; ++p)
                  cells.push_back(solver(run.space.dof_point(p)));
                return qh::reconstruct_halfguide_quasi1d(
                    run.P, std::move(cells), run.space, run.phi,
                    rc.pipeline.L_cells, run.theta);
              }();
    int m = run.guide.has_value() ? run.guide->mesh2d->m
                                  : std::max(2, int(std::lround(1.0 / rc.pipeline.h)));
    qh::CsvWriter field(out_path(rc, "field.csv"), {"y1", "y2", "u_re", "u_im"});
    for (long cell = 0; cell < rc.pipeline.L_cells; ++cell) {
      for (int j = (cell == 0 ? 0 : 1); j <= m; ++j) {
        for (int i = 0; i <= m; ++i) {
          double y1 = double(i) / m, y2 = double(cell) + double(j) / m;
          qh::Complex u = guide.evaluate(y1, y2);
          field.row({y1, y2, u.real(), u.imag()});
        }
      }
    }
  }
  std::cout << "lambda = " << run.lambda() << ", rho(P_h) = " << run.rho_P()
            << "\n";
  return 0;
}

int run_wholeline_experiment(const qh::RunConfig& rc) {
  double W = rc.window > 0.0 ? rc.window : 6.0;
  double a = rc.medium.a;
  long cells = std::max<long>(
      rc.pipeline.L_cells,
      long(std::ceil((W - a) * rc.medium.theta.theta2)) + 1);

  qh::PipelineConfig side_cfg = rc.pipeline;
  side_cfg.L_cells = cells;
  qh::HalfLineRun plus = qh::run_halfline(
      qh::reflect_translate_medium(rc.medium, qh::Side::plus), rc.omega, side_cfg);
  qh::HalfLineRun minus = qh::run_halfline(
      qh::reflect_translate_medium(rc.medium, qh::Side::minus), rc.omega,
      side_cfg);

  qh::InteriorSolution interior = qh::solve_interior(
      rc.medium, rc.omega, plus.lambda(), minus.lambda(), rc.pipeline.h);
  qh::WholeLineSolution u = qh::assemble_whole_line(
      std::move(interior), std::move(plus.halfline), std::move(minus.halfline));

  qh::CsvWriter csv(out_path(rc, "u.csv"), {"x", "u_re", "u_im"});
  for (long i = 0; i <= rc.export_samples; ++i) {
    double x = -W + 2.0 * W * double(i) / double(rc.export_samples);
    qh::Complex v = u.evaluate(x);
    csv.row({x, v.real(), v.imag()});
  }
  qh::CsvWriter summary(out_path(rc, "summary.csv"),
                        {"lambda_plus_re", "lambda_plus_im", "lambda_minus_re",
                         "lambda_minus_im", "flux_jump_plus", "flux_jump_minus"});
  summary.row({plus.lambda().real(), plus.lambda().imag(), minus.lambda().real(),
               minus.lambda().imag(), u.flux_jump_plus(rc.medium),
               u.flux_jump_minus(rc.medium)});
  std::cout << "lambda+ = " << plus.lambda() << ", lambda- = " << minus.lambda()
            << "\n";
  return 0;
}

int run_convergence_experiment(const qh::RunConfig& rc) {
  qh::TruncationPolicy policy{rc.trunc_target};
  qh::ConvergenceReport report =
      qh::convergence_study(rc.pipeline.method, pure_exterior(rc), rc.omega,
                            rc.h_list, policy, rc.h_ref);
  qh::CsvWriter csv(out_path(rc, "convergence.csv"), {"inv_h", "error", "slope"});
  for (std::size_t i = 0; i < report.inv_h.size(); ++i)
    csv.row({report.inv_h[i], report.errors[i], report.slope});
  std::cout << "fitted slope = " << report.slope << "\n";
  return 0;
}

int run_spectrum_experiment(const qh::RunConfig& rc) {
  qh::ExteriorMedium medium = pure_exterior(rc);
  qh::HalfLineRun run = qh::run_halfline(medium, rc.omega, rc.pipeline);

  double radius_ref = rc.radius_ref;
  if (!(radius_ref > 0.0)) {
    qh::TruncationPolicy policy{rc.trunc_target};
    radius_ref = qh::reference_spectral_radius(medium, rc.omega, rc.n_samples,
                                               policy, rc.h_ref);
  }
  int n_band = qh::spectrum_band_count(run.P, radius_ref, rc.band);

  std::string method = rc.pipeline.method == qh::Method::two_d ? "2d" : "quasi1d";
  double inv_h = 1.0 / rc.pipeline.h;
  qh::CsvWriter csv(out_path(rc, "eigenvalues.csv"),
                    {"re_lambda", "im_lambda", "abs_lambda", "method", "inv_h"});
  for (Eigen::Index i = 0; i < run.P.lambdas.size(); ++i) {
    qh::Complex l = run.P.lambdas[i];
    csv.row({qh::csv_number(l.real()), qh::csv_number(l.imag()),
             qh::csv_number(std::abs(l)), method, qh::csv_number(inv_h)});
  }
  qh::CsvWriter summary(out_path(rc, "spectrum_summary.csv"),
                        {"inv_h", "rho_Ph", "radius_ref", "n_band"});
  summary.row({inv_h, run.rho_P(), radius_ref, double(n_band)});
  std::cout << "rho(P_h) = " << run.rho_P() << ", reference radius = "
            << radius_ref << ", N_h = " << n_band << "\n";
  return 0;
}

int run_fibrage_experiment(const qh::RunConfig& rc) {
  auto pts = qh::sample_broken_line(rc.medium.theta, rc.fibrage_M,
                                    rc.fibrage_step);
  qh::CsvWriter csv(out_path(rc, "points.csv"), {"y1", "y2"});
  for (const auto& p : pts) csv.row({p[0], p[1]});
  std::cout << pts.size() << " points\n";
  return 0;
}

int dispatch(const qh::RunConfig& rc) {
  switch (rc.kind) {
    case qh::ExperimentKind::halfline:
      return run_halfline_experiment(rc);
    case qh::ExperimentKind::wholeline:
      return run_wholeline_experiment(rc);
    case qh::ExperimentKind::convergence:
      return run_convergence_experiment(rc);
    case qh::ExperimentKind::spectrum:
      return run_spectrum_experiment(rc);
    case qh::ExperimentKind::fibrage:
      return run_fibrage_experiment(rc);
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz solver for locally perturbed quasiperiodic media"};
  app.require_subcommand(1);

  std::map<std::string, qh::ExperimentKind> kinds = {
      {"halfline", qh::ExperimentKind::halfline},
      {"wholeline", qh::ExperimentKind::wholeline},
      {"convergence", qh::ExperimentKind::convergence},
      {"spectrum", qh::ExperimentKind::spectrum},
      {"fibrage", qh::ExperimentKind::fibrage},
  };
  std::map<std::string, std::string> config_paths;
  for (auto& [name, kind] : kinds) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_paths[name], "key = value config file");
    sub->allow_extras();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string& name = sub->get_name();

  std::string config_echo;
  try {
    qh::KeyValueConfig kv;
    if (!config_paths[name].empty())
      kv = qh::KeyValueConfig::from_file(config_paths[name]);
    // Remaining tokens are --key value overrides.
    auto extras = sub->remaining();
    for (std::size_t i = 0; i < extras.size(); i += 2) {
      std::string key = extras[i];
      if (key.rfind("--", 0) != 0)
        throw qh::ConfigError("expected --key value, got: " + key);
      if (i + 1 >= extras.size())
        throw qh::ConfigError("missing value for " + key);
      kv.set(key.substr(2), extras[i + 1]);
    }
    qh::RunConfig rc = qh::build_run_config(kinds.at(name), kv);
    config_echo = rc.echo;
    return dispatch(rc);
  } catch (const qh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qh::NumericalError& e) {
    std::cerr << "numerical failure [" << e.module() << "]: " << e.what() << "\n";
    if (!config_echo.empty())
      std::cerr << "configuration was:\n" << config_echo;
    return 3;
  }
}
