// Copyright 2026 The pst Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parallel kernels vs their serial references at measurement-like shapes.
// Run with --benchmark_filter=... to narrow; OMP_NUM_THREADS controls the
// parallel variants.

#include <benchmark/benchmark.h>

#include "pst/kernels.hpp"
#include "pst/random.hpp"

namespace {

using pst::Index;
using pst::Matrix;
using pst::Rng;
using pst::Vector;

struct Inputs {
  std::vector<Matrix> sensing;
  Matrix weights;
  Matrix rhs;
  Vector col_weights;
  Matrix coeffs;
};

Inputs make_inputs(Index n, Index m, Index q, Index r) {
  Rng rng(42);
  Inputs in;
  for (Index t = 0; t < q; ++t)
    in.sensing.push_back(pst::gaussian_matrix(n, m, rng));
  in.weights = pst::gaussian_matrix(m, q, rng).cwiseAbs();
  in.rhs = pst::gaussian_matrix(m, q, rng);
  in.col_weights = pst::gaussian_vector(q, rng).cwiseAbs();
  in.coeffs = pst::gaussian_matrix(r, q, rng);
  return in;
}

void BM_SecondMomentParallel(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 32, 4);
  for (auto _ : state) {
    Matrix out = pst::kernels::weighted_second_moment(in.sensing, in.weights, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SecondMomentParallel)->Arg(32)->Arg(64)->Arg(128);

void BM_SecondMomentSerial(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 32, 4);
  for (auto _ : state) {
    Matrix out =
        pst::kernels::serial::weighted_second_moment(in.sensing, in.weights, 1.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_SecondMomentSerial)->Arg(32)->Arg(64)->Arg(128);

void BM_GramSumParallel(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 32, 4);
  for (auto _ : state) {
    Matrix out = pst::kernels::weighted_gram_sum(in.sensing, in.col_weights);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_GramSumParallel)->Arg(32)->Arg(64)->Arg(128);

void BM_GramSumSerial(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 32, 4);
  for (auto _ : state) {
    Matrix out = pst::kernels::serial::weighted_gram_sum(in.sensing, in.col_weights);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_GramSumSerial)->Arg(32)->Arg(64)->Arg(128);

void BM_MatvecSumParallel(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 64, 4);
  for (auto _ : state) {
    Vector out = pst::kernels::weighted_matvec_sum(in.sensing, in.rhs, in.col_weights);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MatvecSumParallel)->Arg(64)->Arg(128)->Arg(256);

void BM_MatvecSumSerial(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 64, 4);
  for (auto _ : state) {
    Vector out =
        pst::kernels::serial::weighted_matvec_sum(in.sensing, in.rhs, in.col_weights);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_MatvecSumSerial)->Arg(64)->Arg(128)->Arg(256);

void BM_KronNormalParallel(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 16, 4);
  for (auto _ : state) {
    Matrix out = pst::kernels::kron_normal_matrix(in.sensing, in.coeffs, nullptr);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_KronNormalParallel)->Arg(24)->Arg(48)->Arg(96);

void BM_KronNormalSerial(benchmark::State& state) {
  const Index n = state.range(0);
  Inputs in = make_inputs(n, 2 * n, 16, 4);
  for (auto _ : state) {
    Matrix out = pst::kernels::serial::kron_normal_matrix(in.sensing, in.coeffs);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_KronNormalSerial)->Arg(24)->Arg(48)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
