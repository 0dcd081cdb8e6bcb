/*
 * Copyright 2026 The genmom Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <cstdint>

#include "genmom/distributions.hpp"
#include "genmom/information.hpp"
#include "genmom/risk.hpp"

namespace {

using namespace genmom;

void BM_BuildJointSampleMean(benchmark::State& state) {
  const auto d = quantize_gaussian({0.0, 1.0}, 7);
  const int n = static_cast<int>(state.range(0));
  JointOptions opts;
  opts.columns = ColumnMode::MergeEquivalent;
  for (auto _ : state) benchmark::DoNotOptimize(build_joint(d, n, sample_mean_kernel(), opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(enumeration_size(7, n)));
}
BENCHMARK(BM_BuildJointSampleMean)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_BuildJointNoisy(benchmark::State& state) {
  const auto d = quantize_gaussian({0.0, 1.0}, 4);
  const auto kernel = noisy_mean_kernel({-0.1, 0.0, 0.1}, {0.25, 0.5, 0.25});
  for (auto _ : state) benchmark::DoNotOptimize(build_joint(d, static_cast<int>(state.range(0)), kernel));
}
BENCHMARK(BM_BuildJointNoisy)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_InformationFunctionals(benchmark::State& state) {
  const auto d = quantize_gaussian({0.0, 1.0}, 5);
  const auto joint = build_joint(d, 6, noisy_mean_kernel({-0.1, 0.1}, {0.5, 0.5}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_information(joint));
    benchmark::DoNotOptimize(chi_square_information(joint));
    benchmark::DoNotOptimize(power_information(joint, 3.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(joint.cell_count()));
}
BENCHMARK(BM_InformationFunctionals)->Unit(benchmark::kMicrosecond);

void BM_MonteCarloGaussian(benchmark::State& state) {
  const LearningModel model{GaussianSpec{0.0, 1.0}, static_cast<int>(state.range(0)), sample_mean_kernel(),
                            truncated_square_loss(2.0 / 3.0)};
  const std::uint64_t replicates = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gen_values(model, replicates, 1, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(replicates));
}
BENCHMARK(BM_MonteCarloGaussian)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ExactMoments(benchmark::State& state) {
  const auto d = quantize_gaussian({0.0, 1.0}, 7);
  const LearningModel model{d, static_cast<int>(state.range(0)), sample_mean_kernel(), truncated_square_loss(2.0 / 3.0)};
  const int orders[] = {1, 2, 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(gen_moments_exact(model, orders));
}
BENCHMARK(BM_ExactMoments)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

namespace {

void BM_MonteCarloDiscrete(benchmark::State& state) {
  using namespace genmom;
  const auto d = make_discrete(std::vector<double>{-1.0, 0.2, 1.5, 2.0}, std::vector<double>{0.3, 0.4, 0.2, 0.1});
  const auto loss = truncated_square_loss(1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(-2.0 + 0.5 * i);
  const LearningKernel kernels[] = {sample_mean_kernel(), noisy_mean_kernel({-0.25, 0.0, 0.25}, {0.25, 0.5, 0.25}),
                                    gibbs_kernel(grid, 1.5, loss.evaluate), constant_kernel(0.3)};
  const LearningModel model{d, 4, kernels[state.range(0)], loss};
  const std::uint64_t replicates = 100000;
  for (auto _ : state) benchmark::DoNotOptimize(sample_gen_values(model, replicates, 1, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(replicates));
  state.SetLabel(model.kernel.name);
}
BENCHMARK(BM_MonteCarloDiscrete)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
