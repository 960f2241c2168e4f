// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "acoustodg/assembly.hpp"
#include "acoustodg/coefficients.hpp"
#include "acoustodg/eigensolve.hpp"
#include "acoustodg/space.hpp"

namespace adg {

enum class Formulation { Displacement, Pressure };

enum class SolverChoice { Auto, Dense, Arnoldi };

/// Everything that fixes a discrete eigenproblem except the degree and the
/// stabilization value.
struct ProblemSetup {
  std::shared_ptr<const TriMesh> mesh;
  Formulation formulation = Formulation::Pressure;
  CoefficientField coeff;
  int eps = 1;
  BoundaryMode boundary_mode = BoundaryMode::WeakNormal;
  int quadrature_degree = 0;  // 0: 2k+2
};

struct SolverSetup {
  SolverChoice choice = SolverChoice::Auto;
  int dense_auto_threshold = 3000;  // Auto picks Dense at or below this ndof
  double sigma = 1.5;
  double tol = 1e-9;
  int max_restarts = 300;
  unsigned seed = 12345;
  double kernel_gap = 0.0;  // 0: filter default
  int cushion = 4;          // extra Arnoldi pairs to absorb filtered entries
  bool want_vectors = true;
};

/// One assembled-and-solved eigenproblem.
struct EigenRun {
  DgSpace space;
  SparseMatrix stiffness;
  SparseMatrix mass;
  Spectrum raw;       // as returned by the solver
  Spectrum filtered;  // physical part, first `nev`
  double a_s = 0.0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Assemble the chosen formulation, solve, and filter the first `nev`
/// physical eigenvalues.
EigenRun solve_problem(const ProblemSetup& problem, int k, double a_s, int nev,
                       const SolverSetup& solver);

/// a_S for a preset id on this problem's coefficient/mesh; bounds are sampled
/// on the mesh bounding box.
double preset_value(const ProblemSetup& problem, const std::string& preset, int k,
                    double base_a);

// --- spurious-eigenvalue scan ------------------------------------------------

struct SpuriousEntry {
  double lambda = 0.0;
  bool flagged = false;
  double nearest_ref = 0.0;    // 0 when no reference matched
  double rel_mismatch = -1.0;  // -1 when no reference matched
  double vector_correlation = -1.0;  // -1 when not computed
};

struct SpuriousCell {
  std::string preset;
  double a_s = 0.0;
  int k = 1;
  std::vector<SpuriousEntry> entries;
  int flag_count = 0;
};

struct SpuriousReport {
  std::string formulation;
  int eps = 1;
  std::string density;
  double match_tol = 0.0;
  std::string reference;  // human-readable description of the reference source
  std::vector<SpuriousCell> cells;
};

struct SpuriousScanConfig {
  ProblemSetup problem;
  SolverSetup solver;
  std::vector<std::string> presets;
  std::vector<int> degrees;
  double base_a = 4.0;  // used by the "raw" preset
  int nev = 10;
  /// Relative tolerance of the one-to-one sorted matching; computed values
  /// with no unused reference within it are flagged spurious.
  double match_tol = 0.025;
  enum class Reference { SameK, KPlus1, K3, Analytic } reference = Reference::SameK;
  std::string reference_preset = "plus1-10";
  std::vector<double> analytic;  // sorted reference values for Reference::Analytic
  bool with_vector_correlation = false;
};

SpuriousReport spurious_scan(const SpuriousScanConfig& cfg);

// --- convergence-order fitting -----------------------------------------------

struct ConvergenceFit {
  double order = 0.0;
  double lambda_extr = 0.0;
  double constant = 0.0;
  double fit_residual = 0.0;  // rms of lambda_h - model
  bool monotone = true;       // false: error sequence was not monotone
};

/// Fit lambda_h = lambda_extr + C h^t. With a known exact value the fit is a
/// log-log linear least squares for (C, t); otherwise t is seeded by
/// Richardson estimates on consecutive triples and the three parameters are
/// alternated to 1e-10 stationarity. Needs >= 3 meshes, h strictly
/// decreasing.
ConvergenceFit fit_convergence(const std::vector<double>& h,
                               const std::vector<double>& lambda_h,
                               std::optional<double> lambda_exact = std::nullopt);

/// Rows carry the paper-table eigenvalue convention: the squared frequency
/// omega^2 = Re(lambda) - 1. The fitted order is unaffected by the shift.
struct ConvergenceRow {
  int index = 0;
  std::vector<double> h;
  std::vector<int> dofs;
  std::vector<double> omega2_h;
  ConvergenceFit fit;  // fit.lambda_extr extrapolates the omega^2 values
};

struct ConvergenceReport {
  std::string formulation;
  int eps = 1;
  int k = 1;
  std::string density;
  std::string preset;
  std::vector<int> levels;
  std::vector<ConvergenceRow> rows;
};

struct ConvergenceConfig {
  ProblemSetup problem;  // mesh field ignored; meshes come from the family
  SolverSetup solver;
  std::vector<std::shared_ptr<const TriMesh>> meshes;  // decreasing h
  std::vector<int> levels;                             // labels for reporting
  int k = 1;
  std::string preset = "plus1-10";
  double base_a = 10.0;
  int n_eigs = 4;
  std::vector<double> lambda_exact;  // optional exact omega^2, per index
};

ConvergenceReport run_convergence(const ConvergenceConfig& cfg);

// --- cross-formulation benchmark ----------------------------------------------

struct BenchLevel {
  int level = 0;
  std::string formulation;
  int dofs = 0;
  std::int64_t nnz_k = 0;
  std::int64_t nnz_m = 0;
  double sparsity_k = 0.0;  // nnz / dofs^2
  double sparsity_m = 0.0;
  double assembly_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct BenchReport {
  int k = 1;
  int eps = 1;
  int repeats = 3;
  std::string density;
  std::vector<BenchLevel> rows;  // displacement and pressure per level
};

struct BenchConfig {
  ProblemSetup problem;  // formulation field ignored: both are run
  SolverSetup solver;
  std::vector<std::shared_ptr<const TriMesh>> meshes;
  std::vector<int> levels;
  int k = 1;
  std::string preset = "plus1-10";
  double base_a = 10.0;
  int nev = 5;
  int repeats = 3;
};

BenchReport run_benchmark(const BenchConfig& cfg);

}  // namespace adg
