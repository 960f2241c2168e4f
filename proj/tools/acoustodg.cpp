// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

// Command line front end: solve / spurious / convergence / bench.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "acoustodg/acoustodg.hpp"
#include "acoustodg/parallel.hpp"

namespace {

using namespace adg;

struct CommonOptions {
  std::string formulation = "pressure";
  int eps = 1;
  int k = 1;
  std::vector<double> rect;  // a b n
  std::string mesh_file;
  std::string density = "const1";
  double sound_speed = 1.0;
  std::string preset = "plus1-10";
  double base_a = 10.0;
  std::string boundary = "weak";
  int quad_degree = 0;
  int nev = 10;
  std::string solver = "auto";
  double sigma = 1.5;
  double tol = 1e-9;
  int cushion = 4;
  int dense_threshold = 3000;
  int max_restarts = 300;
  double kernel_gap = 0.0;
  unsigned seed = 12345;
  std::string output_dir = ".";
  std::string stamp;
  int threads = 0;
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--formulation", o.formulation, "displacement | pressure")
      ->check(CLI::IsMember({"displacement", "disp", "pressure"}));
  cmd->add_option("--eps", o.eps, "DG variant: 1 = SIP, 0 = IIP, -1 = NIP")
      ->check(CLI::IsMember({-1, 0, 1}));
  cmd->add_option("--rect", o.rect, "structured rectangle mesh: width height subdivisions")
      ->expected(3);
  cmd->add_option("--mesh", o.mesh_file, "mesh file (trimesh format)");
  cmd->add_option("--density", o.density,
                  "builtin id (const1, rho1, rho2, sincos, sincos-half, coscos-inv, expxy) "
                  "or an expression in x,y with + - * / ^, sin cos exp, pi e");
  cmd->add_option("--c", o.sound_speed, "sound speed");
  cmd->add_option("--preset", o.preset,
                  "stabilization preset (raw, rawN, sum1/2/4, max2/4/8 or Nrhobar, "
                  "plus1-N); a_S = preset * k^2");
  cmd->add_option("--a", o.base_a, "base value for the raw preset");
  cmd->add_option("--boundary", o.boundary, "weak | interior (u.n=0 enforcement)")
      ->check(CLI::IsMember({"weak", "interior"}));
  cmd->add_option("--quad-degree", o.quad_degree, "quadrature exactness (0: 2k+2)");
  cmd->add_option("--nev", o.nev, "number of physical eigenvalues to report");
  cmd->add_option("--solver", o.solver, "auto | dense | arnoldi")
      ->check(CLI::IsMember({"auto", "dense", "arnoldi"}));
  cmd->add_option("--sigma", o.sigma,
                  "shift for the Arnoldi path; displacement runs should place it inside "
                  "the physical range (e.g. 20), above the lambda=1 cluster");
  cmd->add_option("--tol", o.tol, "Arnoldi residual tolerance");
  cmd->add_option("--cushion", o.cushion, "extra Arnoldi pairs beyond nev");
  cmd->add_option("--dense-threshold", o.dense_threshold, "auto solver: dense at or below");
  cmd->add_option("--max-restarts", o.max_restarts, "Arnoldi restart cap");
  cmd->add_option("--kernel-gap", o.kernel_gap, "filter width around lambda=1 (0: default)");
  cmd->add_option("--seed", o.seed, "seed for randomized starts");
  cmd->add_option("--output-dir", o.output_dir, "directory for report files");
  cmd->add_option("--stamp", o.stamp, "file-name stamp (default: wall-clock timestamp)");
  cmd->add_option("--threads", o.threads, "worker cap (also ACOUSTODG_THREADS)");
  cmd->add_option("--config", "key = value config file; flags override it");
}

// Expands "--config file" into option tokens inserted right after the
// subcommand name, so that explicit flags (parsed later, TakeLast policy)
// override the file. Format: one "key = value" per line, '#' comments,
// values split on whitespace (vector options list their entries inline).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      break;
    }
  }
  if (config_path.empty()) return args;

  std::ifstream in(config_path);
  if (!in) throw ParseError("cannot open config file '" + config_path + "'");
  std::vector<std::string> expanded;
  size_t insert_at = 0;
  while (insert_at < args.size() && !args[insert_at].empty() && args[insert_at][0] == '-') {
    ++insert_at;
  }
  if (insert_at < args.size()) ++insert_at;  // keep the subcommand token first
  expanded.insert(expanded.end(), args.begin(), args.begin() + insert_at);

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw ParseError(config_path + ":" + std::to_string(lineno) +
                         ": expected 'key = value'");
      }
      continue;
    }
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    std::string rest;
    if (key.empty() || (key_in >> rest)) {
      throw ParseError(config_path + ":" + std::to_string(lineno) + ": bad key");
    }
    expanded.push_back("--" + key);
    std::istringstream values(line.substr(eq + 1));
    std::string token;
    int count = 0;
    while (values >> token) {
      expanded.push_back(token);
      ++count;
    }
    if (count == 0) {
      throw ParseError(config_path + ":" + std::to_string(lineno) + ": missing value");
    }
  }
  expanded.insert(expanded.end(), args.begin() + insert_at, args.end());
  return expanded;
}

std::shared_ptr<const TriMesh> load_mesh(const CommonOptions& o) {
  if (!o.mesh_file.empty()) {
    std::ifstream in(o.mesh_file);
    if (!in) {
      throw ParseError("cannot open mesh file '" + o.mesh_file + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return std::make_shared<TriMesh>(import_mesh(buf.str()));
  }
  if (o.rect.size() == 3) {
    return std::make_shared<TriMesh>(
        generate_rect_mesh(o.rect[0], o.rect[1], static_cast<int>(o.rect[2])));
  }
  throw ParseError("no mesh given: use --rect a b n or --mesh file");
}

CoefficientField make_coeff(const CommonOptions& o) {
  try {
    return builtin_density(o.density, o.sound_speed);
  } catch (const UnknownIdError&) {
    return parse_density(o.density, o.sound_speed);
  }
}

ProblemSetup make_problem(const CommonOptions& o, std::shared_ptr<const TriMesh> mesh) {
  ProblemSetup p;
  p.mesh = std::move(mesh);
  p.formulation = (o.formulation == "pressure") ? Formulation::Pressure
                                                : Formulation::Displacement;
  p.coeff = make_coeff(o);
  p.eps = o.eps;
  p.boundary_mode =
      o.boundary == "interior" ? BoundaryMode::InteriorOnly : BoundaryMode::WeakNormal;
  p.quadrature_degree = o.quad_degree;
  return p;
}

SolverSetup make_solver(const CommonOptions& o) {
  SolverSetup s;
  s.choice = o.solver == "dense"     ? SolverChoice::Dense
             : o.solver == "arnoldi" ? SolverChoice::Arnoldi
                                     : SolverChoice::Auto;
  s.dense_auto_threshold = o.dense_threshold;
  s.sigma = o.sigma;
  s.tol = o.tol;
  s.max_restarts = o.max_restarts;
  s.seed = o.seed;
  s.kernel_gap = o.kernel_gap;
  s.cushion = o.cushion;
  return s;
}

std::string stamp_or_now(const CommonOptions& o) {
  if (!o.stamp.empty()) return o.stamp;
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", std::localtime(&t));
  return buf;
}

void write_file(const std::string& dir, const std::string& name, const std::string& body) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << body;
  std::cout << "wrote " << path << "\n";
}

std::vector<std::shared_ptr<const TriMesh>> rect_family(const CommonOptions& o,
                                                        const std::vector<int>& levels) {
  double a = 1.0, b = 1.0;
  if (o.rect.size() == 3) {
    a = o.rect[0];
    b = o.rect[1];
  }
  std::vector<std::shared_ptr<const TriMesh>> meshes;
  for (int n : levels) {
    meshes.push_back(std::make_shared<TriMesh>(generate_rect_mesh(a, b, n)));
  }
  return meshes;
}

// --- subcommands ------------------------------------------------------------

int cmd_solve(const CommonOptions& o, bool export_matrices, int export_modes) {
  const auto mesh = load_mesh(o);
  const ProblemSetup problem = make_problem(o, mesh);
  const double a_s = preset_value(problem, o.preset, o.k, o.base_a);
  SolverSetup solver = make_solver(o);
  if (export_modes > 0) solver.want_vectors = true;
  const EigenRun run = solve_problem(problem, o.k, a_s, o.nev, solver);

  std::printf("%-5s %-14s %-14s %-12s\n", "i", "lambda", "omega^2", "residual");
  for (size_t i = 0; i < run.filtered.entries.size(); ++i) {
    const auto& e = run.filtered.entries[i];
    if (e.lambda.imag() != 0.0) {
      std::printf("%-5zu %-14.6f %-7.6f%+.1ei %-12.3e\n", i + 1, e.lambda.real(),
                  e.lambda.real() - 1.0, e.lambda.imag(), e.residual);
    } else {
      std::printf("%-5zu %-14.6f %-14.6f %-12.3e\n", i + 1, e.lambda.real(),
                  e.lambda.real() - 1.0, e.residual);
    }
  }
  if (run.filtered.partial) {
    std::printf("(partial: fewer than %d physical eigenvalues found)\n", o.nev);
  }
  const std::string stamp = stamp_or_now(o);
  write_file(o.output_dir, "solve-" + stamp + ".csv", run.filtered.to_csv());
  if (export_matrices) {
    write_file(o.output_dir, "stiffness-" + stamp + ".csr", run.stiffness.export_text());
    write_file(o.output_dir, "mass-" + stamp + ".csr", run.mass.export_text());
  }
  for (int i = 0; i < export_modes && i < static_cast<int>(run.filtered.entries.size());
       ++i) {
    const DgFunction f{run.space, run.filtered.entries[i].vector};
    if (f.coeffs.size() == 0) break;
    const std::string base = "mode" + std::to_string(i + 1) + "-" + stamp;
    write_file(o.output_dir, base + "-coeffs.csv", export_coefficients_csv(f));
    write_file(o.output_dir, base + "-samples.csv", export_samples_csv(f));
  }
  return 0;
}

int cmd_spurious(const CommonOptions& o, const std::vector<std::string>& presets,
                 const std::vector<int>& degrees, double match_tol,
                 const std::string& reference, bool with_vectors) {
  SpuriousScanConfig cfg;
  cfg.problem = make_problem(o, load_mesh(o));
  cfg.solver = make_solver(o);
  cfg.solver.want_vectors = with_vectors;
  cfg.presets = presets;
  cfg.degrees = degrees.empty() ? std::vector<int>{o.k} : degrees;
  cfg.base_a = o.base_a;
  cfg.nev = o.nev;
  cfg.match_tol = match_tol;
  cfg.with_vector_correlation = with_vectors;
  if (reference == "same-k") {
    cfg.reference = SpuriousScanConfig::Reference::SameK;
  } else if (reference == "k+1") {
    cfg.reference = SpuriousScanConfig::Reference::KPlus1;
  } else if (reference == "k3") {
    cfg.reference = SpuriousScanConfig::Reference::K3;
  } else {
    throw ParseError("unknown --reference '" + reference + "'");
  }

  const SpuriousReport report = spurious_scan(cfg);
  std::cout << to_text(report);
  const std::string stamp = stamp_or_now(o);
  write_file(o.output_dir, "spurious-" + stamp + ".json", to_json(report));
  write_file(o.output_dir, "spurious-" + stamp + ".csv", to_csv(report));
  return 0;
}

int cmd_convergence(const CommonOptions& o, const std::vector<int>& levels, int n_eigs,
                    const std::vector<double>& exact) {
  ConvergenceConfig cfg;
  cfg.problem = make_problem(o, nullptr);
  if (levels.size() < 3) throw ParseError("convergence needs at least three --N levels");
  cfg.meshes = rect_family(o, levels);
  cfg.problem.mesh = cfg.meshes.front();
  cfg.levels = levels;
  cfg.solver = make_solver(o);
  cfg.k = o.k;
  cfg.preset = o.preset;
  cfg.base_a = o.base_a;
  cfg.n_eigs = n_eigs;
  cfg.lambda_exact = exact;

  const ConvergenceReport report = run_convergence(cfg);
  std::cout << to_text(report);
  const std::string stamp = stamp_or_now(o);
  write_file(o.output_dir, "convergence-" + stamp + ".json", to_json(report));
  write_file(o.output_dir, "convergence-" + stamp + ".csv", to_csv(report));
  write_file(o.output_dir, "convergence-" + stamp + ".svg", convergence_svg(report));
  return 0;
}

int cmd_bench(const CommonOptions& o, const std::vector<int>& levels, int repeats) {
  BenchConfig cfg;
  cfg.problem = make_problem(o, nullptr);
  if (levels.empty()) throw ParseError("bench needs --N levels");
  cfg.meshes = rect_family(o, levels);
  cfg.problem.mesh = cfg.meshes.front();
  cfg.levels = levels;
  cfg.solver = make_solver(o);
  cfg.k = o.k;
  cfg.preset = o.preset;
  cfg.base_a = o.base_a;
  cfg.nev = o.nev;
  cfg.repeats = repeats;

  const BenchReport report = run_benchmark(cfg);
  std::cout << to_text(report);
  const std::string stamp = stamp_or_now(o);
  write_file(o.output_dir, "bench-" + stamp + ".json", to_json(report));
  write_file(o.output_dir, "bench-" + stamp + ".csv", to_csv(report));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interior-penalty DG eigensolver for the acoustic vibration problem"};
  app.require_subcommand(1);
  // later occurrences win: explicit flags override config-file values
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonOptions o;

  auto* solve = app.add_subcommand("solve", "solve one eigenproblem and print the spectrum");
  bool export_matrices = false;
  int export_modes = 0;
  add_common_options(solve, o);
  solve->add_option("--k", o.k, "polynomial degree");
  solve->add_flag("--export-matrices", export_matrices, "write K and M in csr text form");
  solve->add_option("--export-modes", export_modes,
                    "write coefficient and sampled-value CSVs for the first n modes");

  auto* spurious = app.add_subcommand("spurious", "stabilization-parameter spurious scan");
  std::vector<std::string> presets{"raw4", "plus1-4", "plus1-8", "plus1-10"};
  std::vector<int> degrees;
  double match_tol = 0.025;
  std::string reference = "same-k";
  bool with_vectors = false;
  add_common_options(spurious, o);
  spurious->add_option("--presets", presets, "comma-separated preset ids")->delimiter(',');
  spurious->add_option("--k", degrees, "polynomial degrees to scan");
  spurious->add_option("--match-tol", match_tol, "relative matching tolerance");
  spurious->add_option("--reference", reference, "same-k | k+1 | k3");
  spurious->add_flag("--with-vectors", with_vectors, "record eigenvector correlations");

  auto* convergence =
      app.add_subcommand("convergence", "eigenvalue convergence orders over a mesh family");
  std::vector<int> conv_levels;
  int n_eigs = 4;
  std::vector<double> exact;
  add_common_options(convergence, o);
  convergence->add_option("--k", o.k, "polynomial degree");
  convergence->add_option("--N", conv_levels, "mesh levels (subdivisions per side)");
  convergence->add_option("--n-eigs", n_eigs, "eigenvalues to track");
  convergence->add_option("--exact", exact, "known omega^2 values (optional, per index)");

  auto* bench = app.add_subcommand("bench", "displacement vs pressure cost benchmark");
  std::vector<int> bench_levels;
  int repeats = 5;
  add_common_options(bench, o);
  bench->add_option("--k", o.k, "polynomial degree");
  bench->add_option("--N", bench_levels, "mesh levels");
  bench->add_option("--repeats", repeats, "timing repeats (mean reported)");

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (o.threads > 0) set_thread_cap(o.threads);
    if (solve->parsed()) return cmd_solve(o, export_matrices, export_modes);
    if (spurious->parsed()) {
      return cmd_spurious(o, presets, degrees, match_tol, reference, with_vectors);
    }
    if (convergence->parsed()) return cmd_convergence(o, conv_levels, n_eigs, exact);
    if (bench->parsed()) return cmd_bench(o, bench_levels, repeats);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownIdError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
