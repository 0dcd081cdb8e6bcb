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

#ifndef GENMOM_RISK_HPP
#define GENMOM_RISK_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genmom/distributions.hpp"
#include "genmom/information.hpp"

namespace genmom {

/// Loss with range [0, B]. sigma is the Hoeffding subgaussian parameter B/2.
struct LossSpec {
  std::string name;
  std::function<double(double w, double z)> evaluate;
  double upper_bound = 0.0;
  double sigma = 0.0;
  std::optional<double> truncation;  // set for min((w - z)^2, c^2)

  [[nodiscard]] double operator()(double w, double z) const { return evaluate(w, z); }
};

/// min((w - z)^2, c^2). Throws unless c > 0.
[[nodiscard]] LossSpec truncated_square_loss(double c);
/// Arbitrary loss with values in [0, upper_bound].
[[nodiscard]] LossSpec bounded_loss(std::string name, std::function<double(double, double)> evaluate,
                                    double upper_bound);

struct LearningModel {
  DataDistribution data{GaussianSpec{0.0, 1.0}};
  int n = 1;
  LearningKernel kernel;
  LossSpec loss;

  void validate() const;
  [[nodiscard]] bool has_discrete_data() const noexcept {
    return std::holds_alternative<DiscreteDistribution>(data);
  }
};

/// Exact population risk. Discrete data: finite sum. Gaussian data with a
/// truncated square loss: closed form. Anything else throws NoExactEvaluator.
[[nodiscard]] double population_risk(const LossSpec& loss, const DataDistribution& data, double w);
[[nodiscard]] double empirical_risk(const LossSpec& loss, double w, std::span<const double> s);
[[nodiscard]] double gen_value(const LearningModel& model, double w, std::span<const double> s);

enum class MomentMethod { Exact, MonteCarlo };

struct MomentEstimate {
  int order = 1;
  double value = 0.0;
  MomentMethod method = MomentMethod::Exact;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  bool stderr_unavailable = false;  // set when fewer than two replicates
};

/// Expectation of gen^m under P_{W,S} by exhaustive enumeration of the
/// discrete data law. Throws std::invalid_argument for non-discrete data and
/// EnumerationTooLarge past the cap.
[[nodiscard]] MomentEstimate gen_moment_exact(const LearningModel& model, int m,
                                              std::uint64_t cap = kDefaultEnumerationCap);
[[nodiscard]] std::vector<MomentEstimate> gen_moments_exact(const LearningModel& model, std::span<const int> orders,
                                                            std::uint64_t cap = kDefaultEnumerationCap);

/// Replicates are drawn in chunks of this size; chunk c uses its own
/// generator seeded from base_seed + c.
inline constexpr std::uint64_t kMonteCarloChunk = 4096;

/// N independent draws of gen(W, S). Chunks never straddle workers, so the
/// result does not depend on `workers` (0 = hardware concurrency).
[[nodiscard]] std::vector<double> sample_gen_values(const LearningModel& model, std::uint64_t replicates,
                                                    std::uint64_t base_seed, unsigned workers = 0);

[[nodiscard]] MomentEstimate moment_from_samples(std::span<const double> gen_samples, int m);
[[nodiscard]] MomentEstimate gen_moment_mc(const LearningModel& model, int m, std::uint64_t replicates,
                                           std::uint64_t base_seed);
[[nodiscard]] std::vector<MomentEstimate> gen_moments_mc(const LearningModel& model, std::span<const int> orders,
                                                         std::uint64_t replicates, std::uint64_t base_seed);

/// Empirical (1 - delta)-quantile of |gen|: the ceil((1 - delta) N)-th order
/// statistic (the minimum when delta = 1).
[[nodiscard]] double quantile_from_samples(std::span<const double> gen_samples, double delta);
[[nodiscard]] double gen_quantile_mc(const LearningModel& model, double delta, std::uint64_t replicates,
                                     std::uint64_t base_seed);

/// sigma^k k^{k/2} e^{k/e}: bound on E|X|^k for a sigma-subgaussian X.
[[nodiscard]] double subgaussian_abs_moment_bound(double sigma, int k);

}  // namespace genmom

#endif  // GENMOM_RISK_HPP
