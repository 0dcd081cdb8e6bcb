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

#ifndef GENMOM_DIVERGENCES_HPP
#define GENMOM_DIVERGENCES_HPP

#include <span>
#include <string_view>

#include "genmom/distributions.hpp"

namespace genmom {

enum class DivergenceKind { KL, Renyi, Power, ChiSquare };

[[nodiscard]] std::string_view to_string(DivergenceKind kind) noexcept;

struct DivergenceValue {
  double value = 0.0;  // nats for KL/Renyi, unitless for Power/ChiSquare
  DivergenceKind kind = DivergenceKind::KL;
  double order = 1.0;  // alpha or t; 1 for KL, 2 for chi-square
};

// Distribution-level API. Supports are aligned on atom value; an atom that
// only one side carries gets probability zero on the other side. p putting
// mass where q has none throws NotAbsolutelyContinuous.
[[nodiscard]] DivergenceValue kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q);
/// Throws std::invalid_argument unless t > 1.
[[nodiscard]] DivergenceValue power_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                               double t);
[[nodiscard]] DivergenceValue chi_square_divergence(const DiscreteDistribution& p,
                                                    const DiscreteDistribution& q);
/// alpha == 1 returns the KL divergence. Throws unless alpha >= 1.
[[nodiscard]] DivergenceValue renyi_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q,
                                               double alpha);

// Probability-vector API on an already-aligned support. Length mismatch
// throws SupportMismatch. Inputs are taken as given (no renormalization).
namespace raw {
[[nodiscard]] double kl(std::span<const double> p, std::span<const double> q);
[[nodiscard]] double power(std::span<const double> p, std::span<const double> q, double t);
[[nodiscard]] double chi_square(std::span<const double> p, std::span<const double> q);
[[nodiscard]] double renyi(std::span<const double> p, std::span<const double> q, double alpha);
}  // namespace raw

/// q · (p/q)^t for p, q > 0, switching to log space when the ratio would
/// overflow the direct evaluation.
[[nodiscard]] double power_term(double p, double q, double t) noexcept;

}  // namespace genmom

#endif  // GENMOM_DIVERGENCES_HPP
