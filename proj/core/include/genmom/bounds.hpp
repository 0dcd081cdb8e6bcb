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

#ifndef GENMOM_BOUNDS_HPP
#define GENMOM_BOUNDS_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genmom/information.hpp"
#include "genmom/risk.hpp"

namespace genmom {

/// Bound families. The comments give the identifiers used on the command
/// line and in serialized reports.
enum class BoundKind {
  HolderFunctional,        // thm1: |E F(L_P, L_E)| via Hölder against power information
  PowerMoment,             // thm2: m-th moment, power information of order t
  ChiSquareMoment,         // cor1: m-th moment, chi-square information
  ExpectedGen,             // cor2: first moment, power information
  DensityRatioMoment,      // eq9:  m-th moment, maximal density ratio R
  MutualInfoSecondMoment,  // thm3: second moment, mutual information
  PowerHighProb,           // thm4: single-draw bound, power information
  RenyiHighProb,           // eq12: single-draw bound, Rényi divergence
  ChiSquareHighProb,       // cor3: single-draw bound, chi-square information
};

[[nodiscard]] std::string_view bound_id(BoundKind kind) noexcept;
[[nodiscard]] std::optional<BoundKind> parse_bound_id(std::string_view id) noexcept;

/// strict: the integer/inequality side conditions exactly as the bounds are
/// stated. relaxed: mq >= 2 and non-integer beta > 2 are accepted.
enum class ValidityMode { Strict, Relaxed };

[[nodiscard]] std::string_view to_string(ValidityMode mode) noexcept;
[[nodiscard]] std::optional<ValidityMode> parse_validity_mode(std::string_view s) noexcept;

enum class ConditionScope { Both, StrictOnly, RelaxedOnly };

struct BoundCondition {
  std::string name;
  bool satisfied = false;
  ConditionScope scope = ConditionScope::Both;
};

struct BoundParameters {
  std::optional<int> m;
  std::optional<double> t;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<int> n;
  std::optional<double> sigma;
  std::optional<double> delta;
  std::optional<double> info_value;
  std::optional<std::string> info_kind;
  std::optional<double> ratio;       // R
  std::optional<double> beta;
  std::optional<double> best_order;  // m* for the single-draw bounds
};

/// A bound value with the side conditions it was derived under. Never
/// throws on a failed condition; `valid()` reports it instead.
struct BoundReport {
  BoundKind kind = BoundKind::PowerMoment;
  double value = 0.0;
  BoundParameters parameters;
  std::vector<BoundCondition> conditions;
  ValidityMode mode = ValidityMode::Strict;

  [[nodiscard]] bool valid_in(ValidityMode m) const noexcept;
  [[nodiscard]] bool valid() const noexcept { return valid_in(mode); }
};

// All bound functions throw std::invalid_argument on sigma <= 0, n < 1,
// m < 1, order <= 1, negative information, delta outside (0, 1) or R < 1.

/// sigma^m (mq/n)^{m/2} e^{m/e} (I_P^{(t)} + 1)^{1/t}, q = t/(t-1).
[[nodiscard]] BoundReport moment_bound_power(double sigma, int n, int m, double t, double info_pt,
                                             ValidityMode mode = ValidityMode::Strict);
/// sigma^m (2m/n)^{m/2} e^{m/e} sqrt(I_chi2 + 1).
[[nodiscard]] BoundReport moment_bound_chi2(double sigma, int n, int m, double info_chi2,
                                            ValidityMode mode = ValidityMode::Strict);
/// sigma sqrt(q/n) e^{1/e} (I_P^{(t)} + 1)^{1/t} with t = q/(q-1).
[[nodiscard]] BoundReport expected_gen_bound(double sigma, int n, double q, double info_pt,
                                             ValidityMode mode = ValidityMode::Strict);
/// sigma^m (2m/n)^{m/2} e^{m/e} R.
[[nodiscard]] BoundReport moment_bound_ratio(double sigma, int n, int m, double ratio,
                                             ValidityMode mode = ValidityMode::Strict);
/// (sigma^2 / n)(16 I(W;S) + 9).
[[nodiscard]] BoundReport second_moment_bound_mi(double sigma, int n, double mi,
                                                 ValidityMode mode = ValidityMode::Strict);

/// m* = log((I_P^{(t)} + 1)^{1/t} / delta), the moment order minimizing the
/// Markov-inequality bound.
[[nodiscard]] double optimal_moment_order(double t, double delta, double info_pt);

/// e^{1/e+1/2} sqrt(2 t sigma^2 / (n (t-1))) sqrt(log((I+1)^{1/t}) + log(1/delta)).
[[nodiscard]] BoundReport highprob_bound_power(double sigma, int n, double t, double delta, double info_pt,
                                               ValidityMode mode = ValidityMode::Strict);
/// e^{1/e+1/2} sqrt(2 sigma^2 (D_alpha + log(1/delta)) / n).
[[nodiscard]] BoundReport highprob_bound_renyi(double sigma, int n, double alpha, double delta, double d_alpha,
                                               ValidityMode mode = ValidityMode::Strict);
/// e^{1/e+1/2} 2 sigma sqrt((log sqrt(I_chi2 + 1) + log(1/delta)) / n).
[[nodiscard]] BoundReport highprob_bound_chi2(double sigma, int n, double delta, double info_chi2,
                                              ValidityMode mode = ValidityMode::Strict);

struct PowerVsChi2Comparison {
  double threshold = 0.0;            // (2(t-1)/t)^{m t (t-1)/(t-2)} - 1
  bool chi2_tighter = false;         // info_pt >= threshold
  bool order_condition_integer = false;  // m t / (t-1) is a positive integer
};

/// When does the chi-square moment bound beat the order-t power bound.
/// Throws unless t > 2 and m >= 1.
[[nodiscard]] PowerVsChi2Comparison compare_power_vs_chi2(int m, double t, double info_pt);

struct Chi2VsMiComparison {
  bool mi_tighter = false;          // 16 log(x+1) + 9 <= 4 e^{2/e} sqrt(x+1)
  double stated_threshold = 94.0;   // sufficient condition as published
  bool meets_stated_threshold = false;
  double crossover = 0.0;           // bisected root of the inequality
  double margin_at_stated = 0.0;    // 4 e^{2/e} sqrt(95) - 16 log 95 - 9
};

/// f(x) = 4 e^{2/e} sqrt(x+1) - 16 log(x+1) - 9.
[[nodiscard]] double chi2_mi_gap(double info_chi2);
/// Root of chi2_mi_gap in [90, 100], located by bisection to 1e-12.
[[nodiscard]] double chi2_mi_crossover();
[[nodiscard]] Chi2VsMiComparison compare_chi2_vs_mi(double info_chi2);

struct HolderCheck {
  double lhs = 0.0;                // |E_{P_{W,S}} F(L_P(W), L_E(W,S))|
  double rhs = 0.0;                // product-measure q-norm of F times info factor
  double product_norm = 0.0;       // E_{P_W x P_S}[|F|^q]^{1/q}
  double info_factor = 0.0;        // (I_P^{(t)} + 1)^{1/t}
};

using RiskFunctional = std::function<double(double population_risk, double empirical_risk)>;

/// Evaluates both sides of the Hölder change-of-measure inequality on an
/// enumerated joint. `joint` must have per-training-set columns built from
/// the model's discrete data.
[[nodiscard]] HolderCheck verify_theorem1(const LearningModel& model, const JointDistribution& joint,
                                          const RiskFunctional& f, double t);
[[nodiscard]] HolderCheck verify_theorem1(const LearningModel& model, const RiskFunctional& f, double t,
                                          const JointOptions& options = {});

/// Exact P_{W,S}(|gen| > threshold) on an enumerated joint.
[[nodiscard]] double exact_exceedance_mass(const LearningModel& model, const JointDistribution& joint,
                                           double threshold);

}  // namespace genmom

#endif  // GENMOM_BOUNDS_HPP
