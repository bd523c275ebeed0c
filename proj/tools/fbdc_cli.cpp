#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fbdc/experiments.hpp"
#include "fbdc/greens.hpp"
#include "json.hpp"

using namespace fbdc;
using json = nlohmann::json;

namespace {

struct Common {
  int phases = 4;
  double tol = 1e-9;
  std::string out, json_path;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--phases", c.phases, "correction phases, 1..4")->check(CLI::Range(1, 4));
  app->add_option("--tol", c.tol, "penalty iteration tolerance");
  app->add_option("--out", c.out, "CSV file for the table");
  app->add_option("--json", c.json_path, "JSON file for a flat run record");
}

json nan_safe(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void print_table(const Study& s, const std::vector<TableRow>& rows, const char* error_label) {
  std::printf("%s at %g\n", s.problem.c_str(), s.probe);
  std::printf("%6s %6s %5s %7s %20s %12s %7s\n", "nx", "nt", "phase", "niters", "value", error_label, "conv");
  for (const TableRow& r : rows)
    std::printf("%6d %6d %5d %7d %20.12f %12.3e %7.2f\n", r.nx, r.nt, r.phase, r.niters, r.value, r.error, r.conv);
}

void write_csv(const std::string& path, const std::vector<TableRow>& rows, const char* error_label) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "level,nx,nt,phase,niters,value," << error_label << ",conv\n";
  char buf[256];
  for (const TableRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%.17g,%.17g,%.17g\n", r.level, r.nx, r.nt, r.phase, r.niters,
                  r.value, r.error, r.conv);
    f << buf;
  }
}

int finish(const Study& s, const Common& c, json record, double seconds, const char* error_label) {
  const std::vector<TableRow> rows = table_rows(s);
  print_table(s, rows, error_label);
  int degraded = 0;
  bool comp = true, conv = true;
  for (const LevelResult& l : s.levels) {
    degraded += l.degraded;
    comp = comp && l.complementarity;
    conv = conv && l.converged;
  }
  if (!c.out.empty()) write_csv(c.out, rows, error_label);
  if (!c.json_path.empty()) {
    record["schema_version"] = 1;
    record["problem"] = s.problem;
    record["phases"] = c.phases;
    record["tol"] = c.tol;
    record["probe"] = s.probe;
    record["wall_seconds"] = seconds;
    record["complementarity"] = comp;
    record["converged"] = conv;
    record["degraded_steps"] = degraded;
    const TableRow& last = rows.back();
    record["final_value"] = last.value;
    record["final_" + std::string(error_label)] = nan_safe(last.error);
    record["final_conv"] = nan_safe(last.conv);
    std::ofstream(c.json_path) << record.dump(2) << "\n";
  }
  if (degraded > 0) std::fprintf(stderr, "warning: %d steps fell back to the uncorrected solution\n", degraded);
  return degraded > 0 || !comp || !conv ? 2 : 0;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deferred-correction penalty solver for free and moving boundary problems"};
  app.require_subcommand(1);

  Common bvp_c;
  std::vector<int> bvp_n{30, 60, 120, 240, 480};
  double bvp_rho = 1e12, bvp_probe = 0.2;
  CLI::App* bvp = app.add_subcommand("bvp-obstacle", "obstacle BVP with exact solution e^x - 1 right of x = 0");
  add_common(bvp, bvp_c);
  bvp->add_option("--n", bvp_n, "interval counts")->delimiter(',');
  bvp->add_option("--rho", bvp_rho, "penalty parameter");
  bvp->add_option("--probe", bvp_probe, "reported point");

  Common mb_c;
  std::vector<int> mb_nx{20, 40, 80, 160, 320}, mb_nt{40, 80, 160, 320, 640};
  double mb_rho = 1e8, mb_probe = 0.0;
  CLI::App* mb = app.add_subcommand("mb-test", "moving boundary problem with exact solution");
  add_common(mb, mb_c);
  mb->add_option("--nx", mb_nx, "interval counts")->delimiter(',');
  mb->add_option("--nt", mb_nt, "time steps")->delimiter(',');
  mb->add_option("--rho", mb_rho, "penalty parameter");
  mb->add_option("--probe", mb_probe, "reported point");

  Common am_c;
  AmericanConfig am_cfg;
  std::vector<int> am_nx{53, 104, 206, 410, 818}, am_nt{30, 60, 120, 240, 480};
  CLI::App* am = app.add_subcommand("american", "American put at the strike");
  add_common(am, am_c);
  am->add_option("--nx", am_nx, "grid nodes including both ends")->delimiter(',');
  am->add_option("--nt", am_nt, "time steps in sqrt(t)")->delimiter(',');
  am->add_option("--rho", am_cfg.rho, "penalty parameter");
  am->add_option("--sigma", am_cfg.market.sigma, "volatility");
  am->add_option("--r", am_cfg.market.r, "interest rate");
  am->add_option("--strike", am_cfg.market.K, "strike");
  am->add_option("--expiry", am_cfg.market.T, "time to expiry");
  am->add_option("--smax", am_cfg.stretch.s_max, "far-field boundary");
  am->add_option("--alpha", am_cfg.stretch.alpha, "grid stretching width");
  am->add_option("--beta", am_cfg.stretch.beta, "grid stretching strength");
  am->add_option("--tskip", am_cfg.t_skip, "steps without corrections after the startup");

  double gd_r = 0.1, gd_sigma = 0.2, gd_k = 1.0;
  std::string gd_json;
  CLI::App* gd = app.add_subcommand("greens-diag", "Green's function diagnostics");
  gd->add_option("--r", gd_r, "interest rate");
  gd->add_option("--sigma", gd_sigma, "volatility");
  gd->add_option("--k", gd_k, "time step in the discrete operator");
  gd->add_option("--json", gd_json, "JSON file for a flat run record");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*bvp) {
      const Study s = bvp_obstacle_study(bvp_n, bvp_rho, bvp_probe, bvp_c.phases, bvp_c.tol);
      json rec{{"n", bvp_n}, {"rho", bvp_rho}};
      return finish(s, bvp_c, rec, seconds_since(t0), "error");
    }
    if (*mb) {
      const Study s = moving_boundary_study(mb_nx, mb_nt, mb_rho, mb_probe, mb_c.phases, mb_c.tol);
      json rec{{"nx", mb_nx}, {"nt", mb_nt}, {"rho", mb_rho}};
      return finish(s, mb_c, rec, seconds_since(t0), "error");
    }
    if (*am) {
      am_cfg.phases = am_c.phases;
      am_cfg.tol = am_c.tol;
      am_cfg.stretch.K = am_cfg.market.K;
      const Study s = american_study(am_cfg, am_nx, am_nt);
      json rec{{"nx", am_nx},
               {"nt", am_nt},
               {"rho", am_cfg.rho},
               {"sigma", am_cfg.market.sigma},
               {"r", am_cfg.market.r},
               {"strike", am_cfg.market.K},
               {"expiry", am_cfg.market.T},
               {"smax", am_cfg.stretch.s_max},
               {"alpha", am_cfg.stretch.alpha},
               {"beta", am_cfg.stretch.beta},
               {"tskip", am_cfg.t_skip}};
      return finish(s, am_c, rec, seconds_since(t0), "change");
    }
    if (*gd) {
      const TransformedBsCoefficients c = transformed_bs(gd_r, gd_sigma, gd_k);
      std::printf("kappa %.6g lambda %.6g xi1 %.6g xi2 %.6g\n", c.kappa, c.lambda, c.xi1, c.xi2);
      std::vector<double> gap, peak;
      std::printf("%12s %14s\n", "gap", "max |G|");
      for (double g = 1e-1; g >= 0.99e-4; g /= std::sqrt(10.0)) {
        double mx = std::abs(analytic_green(c.xi1, c.xi2, 0.0, 1.0, g, g));
        for (int i = 0; i <= 4000; ++i)
          mx = std::max(mx, std::abs(analytic_green(c.xi1, c.xi2, 0.0, 1.0, i / 4000.0, g)));
        gap.push_back(g);
        peak.push_back(mx);
        std::printf("%12.3e %14.6e\n", g, mx);
      }
      const double s_analytic = loglog_slope(gap, peak);
      std::printf("decay slope of max |G| against the gap: %.3f\n", s_analytic);

      std::vector<double> h, row, col;
      std::printf("%6s %14s %14s\n", "N", "max|row 1|", "max|col 1|");
      for (int n : {60, 120, 240, 480}) {
        const BvpProblem pb = obstacle_bvp(n, 1e12);
        BandMatrix A = assemble_operator(pb.grid, pb.coeffs, pb.left_value, pb.right_value).L;
        A.affine(0.0, -1.0);
        const Eigen::MatrixXd inv = pde_block(A, pb.grid.cell_of(0.0) + 1).fullPivLu().inverse();
        h.push_back(2.0 / n);
        row.push_back(inv.row(0).cwiseAbs().maxCoeff());
        col.push_back(inv.col(0).cwiseAbs().maxCoeff());
        std::printf("%6d %14.6e %14.6e\n", n, row.back(), col.back());
      }
      const double s_row = loglog_slope(h, row), s_col = loglog_slope(h, col);
      std::printf("slopes against h: first row %.3f, first column %.3f\n", s_row, s_col);
      if (!gd_json.empty()) {
        json rec{{"schema_version", 1}, {"problem", "greens-diag"}, {"r", gd_r},
                 {"sigma", gd_sigma}, {"k", gd_k}, {"kappa", c.kappa},
                 {"lambda", c.lambda}, {"xi1", c.xi1}, {"xi2", c.xi2},
                 {"analytic_slope", s_analytic}, {"row_slope", s_row}, {"col_slope", s_col},
                 {"wall_seconds", seconds_since(t0)}};
        std::ofstream(gd_json) << rec.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
