// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "acoustodg/assembly.hpp"
#include "acoustodg/eigensolve.hpp"

namespace {

using namespace adg;

struct Pencil {
  DgSpace space;
  SparseMatrix k, m;
};

Pencil pressure_pencil(int n, int degree) {
  Pencil p;
  const auto mesh = std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.1, n));
  p.space = DgSpace(mesh, degree, Arity::Scalar);
  const CoefficientField rho = builtin_density("rho1");
  DgFormConfig cfg;
  cfg.a_s = 20.0 * degree * degree;
  p.k = assemble_stiffness_pressure(p.space, rho, cfg);
  p.m = assemble_mass_pressure(p.space, rho);
  return p;
}

void BM_ShiftInvertArnoldi(benchmark::State& state) {
  const Pencil p = pressure_pencil(static_cast<int>(state.range(0)), 2);
  ArnoldiOptions opts;
  opts.sigma = 1.5;
  opts.nev = 6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shift_invert_arnoldi(p.k, p.m, opts));
  }
}

void BM_DenseGeneralizedEig(benchmark::State& state) {
  const Pencil p = pressure_pencil(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_generalized_eig(p.k, p.m, p.space.block_size(), false));
  }
}

void BM_BlockCholesky(benchmark::State& state) {
  const Pencil p = pressure_pencil(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(BlockCholesky(p.m, p.space.block_size()));
  }
}

}  // namespace

BENCHMARK(BM_ShiftInvertArnoldi)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DenseGeneralizedEig)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlockCholesky)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
