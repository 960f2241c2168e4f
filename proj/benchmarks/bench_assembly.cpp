// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "acoustodg/assembly.hpp"

namespace {

using namespace adg;

void BM_AssembleStiffnessDisp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto mesh = std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.1, n));
  const DgSpace space(mesh, k, Arity::Vector2);
  const CoefficientField rho = builtin_density("rho1");
  DgFormConfig cfg;
  cfg.a_s = 20.0 * k * k;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness_disp(space, rho, cfg));
  }
  state.SetComplexityN(space.ndof());
}

void BM_AssembleStiffnessPressure(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const auto mesh = std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.1, n));
  const DgSpace space(mesh, k, Arity::Scalar);
  const CoefficientField rho = builtin_density("rho1");
  DgFormConfig cfg;
  cfg.a_s = 20.0 * k * k;
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_stiffness_pressure(space, rho, cfg));
  }
  state.SetComplexityN(space.ndof());
}

void BM_AssembleMassDisp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mesh = std::make_shared<TriMesh>(generate_rect_mesh(1.0, 1.1, n));
  const DgSpace space(mesh, 2, Arity::Vector2);
  const CoefficientField rho = builtin_density("rho2");
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_mass_disp(space, rho));
  }
}

}  // namespace

BENCHMARK(BM_AssembleStiffnessDisp)
    ->Args({8, 1})
    ->Args({16, 1})
    ->Args({32, 1})
    ->Args({8, 3})
    ->Args({16, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleStiffnessPressure)
    ->Args({8, 1})
    ->Args({16, 1})
    ->Args({32, 1})
    ->Args({8, 3})
    ->Args({16, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleMassDisp)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
