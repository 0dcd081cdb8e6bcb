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

#ifndef GENMOM_TESTS_TEST_SUPPORT_HPP
#define GENMOM_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "genmom/distributions.hpp"

namespace genmom::testing {

// |a - b| <= tol * max(1, |a|)
inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a)); }

inline std::vector<double> random_probs(std::mt19937_64& rng, std::size_t k, double floor = 0.0) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> p(k);
  double total = 0.0;
  for (auto& x : p) total += (x = g(rng) + floor);
  for (auto& x : p) x /= total;
  return p;
}

// p and q on atoms 0..k-1, q with full support.
inline std::pair<DiscreteDistribution, DiscreteDistribution> random_pair(std::mt19937_64& rng, std::size_t k) {
  std::vector<double> atoms(k);
  for (std::size_t i = 0; i < k; ++i) atoms[i] = static_cast<double>(i);
  const auto p = random_probs(rng, k);
  const auto q = random_probs(rng, k, 0.01);
  return {make_discrete(atoms, p), make_discrete(atoms, q)};
}

}  // namespace genmom::testing

#endif  // GENMOM_TESTS_TEST_SUPPORT_HPP
