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

#ifndef GENMOM_EXPERIMENTS_HPP
#define GENMOM_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "genmom/bounds.hpp"
#include "genmom/distributions.hpp"

namespace genmom {

/// Gaussian mean estimation: Z ~ N(mean, variance), W = sample mean,
/// loss min((w - z)^2, c^2).
struct ExperimentConfig {
  GaussianSpec gaussian{0.0, 1.0};
  double c = 2.0 / 3.0;
  std::vector<int> n_values{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> moments{1, 2, 3, 4};
  int quant_bins = 7;
  double range_sigmas = kDefaultRangeSigmas;
  std::uint64_t mc_replicates = 1'000'000;
  std::uint64_t seed = 20210531;
  ValidityMode validity_mode = ValidityMode::Strict;
  std::string out_dir;  // empty: no files written

  /// Throws std::invalid_argument on n < 1, m < 1, K < 2, c <= 0, etc.
  void validate() const;
};

struct ExperimentRow {
  int n = 1;
  int m = 1;
  double true_moment = 0.0;  // Monte Carlo on the continuous model
  double true_stderr = 0.0;
  std::optional<double> exact_moment;  // quantized model, when enumerable
  std::optional<double> info_chi2;
  std::optional<double> info_mi;
  std::optional<double> bound_chi2;      // chi-square moment bound
  std::optional<double> bound_mi;        // m = 2: MI second-moment bound; m = 1: its square root
  std::optional<double> bound_expected;  // m = 1: power-information first-moment bound at q = 2
  bool valid_strict = false;
  bool valid_relaxed = false;
};

/// Rows sorted by (m, n).
[[nodiscard]] std::vector<ExperimentRow> run_gaussian_mean_experiment(const ExperimentConfig& config);

/// The Monte Carlo seed used for sample size n.
[[nodiscard]] std::uint64_t experiment_seed(const ExperimentConfig& config, int n) noexcept;

}  // namespace genmom

#endif  // GENMOM_EXPERIMENTS_HPP
