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

#ifndef GENMOM_VERIFICATION_HPP
#define GENMOM_VERIFICATION_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "genmom/bounds.hpp"
#include "genmom/risk.hpp"

namespace genmom {

struct VerificationConfig {
  std::uint64_t seed = 7;
  int models = 100;
  int max_support = 4;
  int max_n = 5;
  std::uint64_t max_training_sets = 1024;
  std::vector<int> moments{1, 2, 3, 4};
  std::vector<double> holder_orders{2.0, 3.0};
  std::vector<double> deltas{0.1, 0.05, 0.01};
  double tolerance = 1e-9;
  double chain_tolerance = 1e-12;
};

/// The bound formulas the suite checks. Defaults to the library versions;
/// tests swap one out to confirm the suite notices.
struct BoundFormulas {
  std::function<BoundReport(double, int, int, double, double, ValidityMode)> power_moment = moment_bound_power;
  std::function<BoundReport(double, int, int, double, ValidityMode)> chi2_moment = moment_bound_chi2;
  std::function<BoundReport(double, int, double, double, ValidityMode)> expected_gen = expected_gen_bound;
  std::function<BoundReport(double, int, int, double, ValidityMode)> ratio_moment = moment_bound_ratio;
  std::function<BoundReport(double, int, double, ValidityMode)> mi_second_moment = second_moment_bound_mi;
  std::function<BoundReport(double, int, double, double, double, ValidityMode)> power_highprob = highprob_bound_power;
  std::function<BoundReport(double, int, double, double, ValidityMode)> chi2_highprob = highprob_bound_chi2;
};

struct BatteryModel {
  LearningModel model;
  std::string description;
};

/// Random discrete models: K in [2, max_support], n in [1, max_n] with
/// K^n <= max_training_sets, kernels cycling through sample mean, noisy
/// mean, Gibbs and constant, truncated square loss.
[[nodiscard]] std::vector<BatteryModel> make_battery(const VerificationConfig& config);

struct Violation {
  std::string check;
  std::string detail;
};

struct VerificationReport {
  int models = 0;
  std::uint64_t checks = 0;
  std::map<std::string, std::uint64_t> checks_by_name;
  std::vector<Violation> violations;

  [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
};

/// Throws std::invalid_argument("no models") on an empty battery.
[[nodiscard]] VerificationReport run_verification_suite(const VerificationConfig& config,
                                                        const BoundFormulas& formulas = {});
[[nodiscard]] VerificationReport run_verification_suite(const std::vector<BatteryModel>& battery,
                                                        const VerificationConfig& config,
                                                        const BoundFormulas& formulas = {});

}  // namespace genmom

#endif  // GENMOM_VERIFICATION_HPP
