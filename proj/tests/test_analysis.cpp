// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "acoustodg/analysis.hpp"
#include "acoustodg/reports.hpp"

using namespace adg;

namespace {

constexpr double kPi = 3.14159265358979323846;

ProblemSetup pressure_setup(int n, const std::string& density, int eps = 1) {
  ProblemSetup p;
  p.mesh = std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.0, n));
  p.formulation = Formulation::Pressure;
  p.coeff = builtin_density(density);
  p.eps = eps;
  return p;
}

// Neumann eigenvalues of the unit square, shifted: 1 + pi^2 (m^2 + n^2).
std::vector<double> unit_square_reference(int count) {
  std::vector<double> vals;
  for (int m = 0; m <= 8; ++m) {
    for (int n = 0; n <= 8; ++n) {
      if (m == 0 && n == 0) continue;
      vals.push_back(1.0 + kPi * kPi * (m * m + n * n));
    }
  }
  std::sort(vals.begin(), vals.end());
  vals.resize(count);
  return vals;
}

}  // namespace

TEST_CASE("fit recovers an exact quadratic model") {
  const std::vector<double> h = {1.0 / 10, 1.0 / 20, 1.0 / 30, 1.0 / 40};
  std::vector<double> lh;
  for (double hi : h) lh.push_back(5.0 + 3.0 * hi * hi);
  const ConvergenceFit fit = fit_convergence(h, lh);
  CHECK(std::abs(fit.order - 2.0) <= 1e-6);
  CHECK(std::abs(fit.lambda_extr - 5.0) <= 1e-8);
  CHECK(std::abs(fit.constant - 3.0) <= 1e-5);
  CHECK(fit.monotone);
}

TEST_CASE("fit reproduces the published first-row table values") {
  const std::vector<double> h = {1.0 / 10, 1.0 / 20, 1.0 / 30, 1.0 / 40};
  const std::vector<double> lh = {7.86806, 7.84149, 7.83652, 7.83478};
  const ConvergenceFit fit = fit_convergence(h, lh);
  CHECK(std::abs(fit.order - 1.98) <= 0.02);
  CHECK(std::abs(fit.lambda_extr - 7.83248) <= 5e-4);
}

TEST_CASE("fit handles a cubic model with tiny noise") {
  const std::vector<double> h = {0.2, 0.1, 0.05, 0.025};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> noise(-1e-12, 1e-12);
  std::vector<double> lh;
  for (double hi : h) lh.push_back(2.0 + hi * hi * hi + noise(rng));
  const ConvergenceFit fit = fit_convergence(h, lh);
  CHECK(std::abs(fit.order - 3.0) <= 0.02);
  CHECK(std::abs(fit.lambda_extr - 2.0) <= 1e-6);
}

TEST_CASE("fit with a known exact value uses the log-log regression") {
  const std::vector<double> h = {0.4, 0.2, 0.1};
  std::vector<double> lh;
  for (double hi : h) lh.push_back(3.0 + 0.7 * std::pow(hi, 4.0));
  const ConvergenceFit fit = fit_convergence(h, lh, 3.0);
  CHECK(std::abs(fit.order - 4.0) <= 1e-9);
  CHECK(fit.lambda_extr == 3.0);
  CHECK(std::abs(fit.constant - 0.7) <= 1e-9);
}

TEST_CASE("fit is scale equivariant in h") {
  const std::vector<double> h = {0.3, 0.15, 0.075, 0.0375};
  std::vector<double> lh;
  for (double hi : h) lh.push_back(4.0 + 1.3 * std::pow(hi, 2.7));
  const ConvergenceFit base = fit_convergence(h, lh);
  const double s = 3.7;
  std::vector<double> hs;
  for (double hi : h) hs.push_back(s * hi);
  const ConvergenceFit scaled = fit_convergence(hs, lh);
  CHECK(std::abs(scaled.order - base.order) <= 1e-7);
  CHECK(scaled.constant ==
        doctest::Approx(base.constant * std::pow(s, -base.order)).epsilon(1e-6));
  CHECK(scaled.lambda_extr == doctest::Approx(base.lambda_extr).epsilon(1e-10));
}

TEST_CASE("fit argument validation and the non-monotone warning") {
  CHECK_THROWS_AS(fit_convergence({0.1, 0.05}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(fit_convergence({0.1, 0.2, 0.05}, {1.0, 2.0, 3.0}), std::invalid_argument);
  const ConvergenceFit fit =
      fit_convergence({0.2, 0.1, 0.05, 0.025}, {5.01, 4.995, 5.002, 4.999});
  CHECK(!fit.monotone);
}

TEST_CASE("solve_problem finds the first unit-square Neumann frequency") {
  const ProblemSetup setup = pressure_setup(4, "const1");
  SolverSetup solver;
  const EigenRun run = solve_problem(setup, 2, 10.0 * 4, 3, solver);
  REQUIRE(run.filtered.entries.size() == 3);
  CHECK(run.filtered.entries[0].lambda.real() ==
        doctest::Approx(1.0 + kPi * kPi).epsilon(2e-3));
  CHECK(run.filtered.entries[1].lambda.real() ==
        doctest::Approx(1.0 + kPi * kPi).epsilon(2e-3));
  CHECK(run.filtered.entries[2].lambda.real() ==
        doctest::Approx(1.0 + 2 * kPi * kPi).epsilon(5e-3));
}

TEST_CASE("spurious scan: analytic reference, safe preset is clean") {
  SpuriousScanConfig cfg;
  cfg.problem = pressure_setup(8, "const1");
  cfg.degrees = {2, 3};
  cfg.presets = {"plus1-10"};
  cfg.nev = 6;
  cfg.reference = SpuriousScanConfig::Reference::Analytic;
  cfg.analytic = unit_square_reference(20);
  const SpuriousReport report = spurious_scan(cfg);
  REQUIRE(report.cells.size() == 2);
  for (const auto& cell : report.cells) {
    CHECK(cell.flag_count == 0);
    CHECK(cell.entries.size() == 6);
  }
}

TEST_CASE("spurious scan: gross under-penalization is flagged") {
  SpuriousScanConfig cfg;
  cfg.problem = pressure_setup(8, "const1");
  cfg.degrees = {1};
  cfg.presets = {"raw", "plus1-10"};
  cfg.base_a = 0.05;
  cfg.nev = 6;
  cfg.reference = SpuriousScanConfig::Reference::SameK;
  const SpuriousReport report = spurious_scan(cfg);
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].flag_count >= 1);   // raw 0.05
  CHECK(report.cells[1].flag_count == 0);   // plus1-10 matches itself
}

TEST_CASE("convergence harness on the unit square against analytic values") {
  ConvergenceConfig cfg;
  cfg.problem = pressure_setup(4, "const1");
  for (int n : {4, 6, 8}) {
    cfg.meshes.push_back(std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.0, n)));
    cfg.levels.push_back(n);
  }
  cfg.k = 1;
  cfg.preset = "raw";
  cfg.base_a = 10.0;
  cfg.n_eigs = 3;
  const ConvergenceReport report = run_convergence(cfg);
  REQUIRE(report.rows.size() == 3);
  for (const auto& row : report.rows) {
    CHECK(std::abs(row.fit.order - 2.0) <= 0.45);
  }
  // reports carry omega^2 = lambda - 1, the quantity the tables list
  CHECK(std::abs(report.rows[0].fit.lambda_extr - kPi * kPi) <= 5e-3);

  // serialization round trips contain the fitted data
  const std::string json = to_json(report);
  CHECK(json.find("\"order\"") != std::string::npos);
  const std::string csv = to_csv(report);
  CHECK(csv.rfind("index,level,h,dofs,omega2_h,err,order,omega2_extr", 0) == 0);
  const std::string svg = convergence_svg(report);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  const std::string text = to_text(report);
  CHECK(text.find("order") != std::string::npos);
}

TEST_CASE("benchmark structural invariants") {
  BenchConfig cfg;
  cfg.problem = pressure_setup(2, "const1");
  for (int n : {2, 4}) {
    cfg.meshes.push_back(std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.0, n)));
    cfg.levels.push_back(n);
  }
  cfg.k = 1;
  cfg.preset = "raw";
  cfg.base_a = 10.0;
  cfg.nev = 2;
  cfg.repeats = 3;
  const BenchReport report = run_benchmark(cfg);
  REQUIRE(report.rows.size() == 4);
  for (size_t i = 0; i < report.rows.size(); i += 2) {
    const BenchLevel& disp = report.rows[i];
    const BenchLevel& pres = report.rows[i + 1];
    CHECK(disp.formulation == "displacement");
    CHECK(pres.formulation == "pressure");
    CHECK(disp.dofs == 2 * pres.dofs);
    const int t = 2 * cfg.levels[i / 2] * cfg.levels[i / 2];
    const int nk = 3;  // k = 1
    CHECK(pres.nnz_m == static_cast<std::int64_t>(t) * nk * nk);
    CHECK(disp.nnz_m == static_cast<std::int64_t>(t) * 4 * nk * nk);
    CHECK(disp.sparsity_k > 0.0);
    CHECK(disp.sparsity_k <= 1.0);
    CHECK(disp.assembly_seconds >= 0.0);
    CHECK(pres.solve_seconds >= 0.0);
  }
  CHECK_THROWS_AS([&] {
    BenchConfig bad = cfg;
    bad.repeats = 2;
    run_benchmark(bad);
  }(), std::invalid_argument);

  const std::string json = to_json(report);
  CHECK(json.find("\"nnz_k\"") != std::string::npos);
  CHECK(to_csv(report).rfind("level,formulation", 0) == 0);
  CHECK(to_text(report).find("benchmark") != std::string::npos);
}

TEST_CASE("quadrature degree escalation leaves eigenvalues unchanged") {
  // the 2k+2 rule commits a variational crime for non-polynomial rho; it
  // must sit far below the discretization error
  ProblemSetup setup = pressure_setup(4, "rho2");
  SolverSetup solver;
  solver.want_vectors = false;
  const int k = 2;
  const double a_s = preset_value(setup, "plus1-10", k, 0.0);
  const EigenRun base = solve_problem(setup, k, a_s, 3, solver);
  setup.quadrature_degree = 2 * k + 4;
  const EigenRun fine = solve_problem(setup, k, a_s, 3, solver);
  for (int i = 0; i < 3; ++i) {
    const double a = base.filtered.entries[i].lambda.real();
    const double b = fine.filtered.entries[i].lambda.real();
    CHECK(std::abs(a - b) / b <= 1e-7);
  }
}

TEST_CASE("preset_value samples the mesh bounding box") {
  const ProblemSetup setup = pressure_setup(2, "rho2");
  // on the unit square rhobar = e^2
  CHECK(preset_value(setup, "max4", 1, 0.0) ==
        doctest::Approx(4.0 * std::exp(2.0)).epsilon(1e-10));
}
