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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "genmom/divergences.hpp"
#include "genmom/errors.hpp"
#include "test_support.hpp"

using namespace genmom;
using genmom::testing::close;

namespace {

DiscreteDistribution bern(double p1) {
  const std::vector<double> atoms{0, 1};
  const std::vector<double> probs{1.0 - p1, p1};
  return make_discrete(atoms, probs);
}

}  // namespace

TEST_CASE("desk values") {
  const auto p = bern(0.5);
  const auto q = bern(0.75);
  CHECK(kl_divergence(p, q).value == doctest::Approx(0.14384103622589046).epsilon(1e-14));
  CHECK(kl_divergence(bern(0.0), bern(0.5)).value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(power_divergence(p, q, 2.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(power_divergence(p, q, 3.0).value == doctest::Approx(11.0 / 9.0).epsilon(1e-14));
  CHECK(chi_square_divergence(p, q).value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(renyi_divergence(p, q, 2.0).value == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("identical distributions have zero divergence") {
  std::mt19937_64 rng(1);
  const auto [p, q] = genmom::testing::random_pair(rng, 5);
  (void)q;
  CHECK(std::abs(kl_divergence(p, p).value) < 1e-15);
  CHECK(std::abs(chi_square_divergence(p, p).value) < 1e-15);
  CHECK(std::abs(power_divergence(p, p, 3.0).value) < 1e-14);
  CHECK(std::abs(renyi_divergence(p, p, 2.5).value) < 1e-14);
}

TEST_CASE("identities on random pairs") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const auto [p, q] = genmom::testing::random_pair(rng, 2 + static_cast<std::size_t>(i % 7));
    const double chi2 = chi_square_divergence(p, q).value;
    CHECK(close(chi2, power_divergence(p, q, 2.0).value, 1e-12));
    CHECK(close(chi2, raw::chi_square(p.probs(), q.probs()), 1e-12));
    for (double t : {2.0, 3.0, 4.0}) {
      const double pt = power_divergence(p, q, t).value;
      CHECK(close(renyi_divergence(p, q, t).value, std::log(pt + 1.0) / (t - 1.0), 1e-12));
      CHECK(close(renyi_divergence(p, q, t).value, raw::renyi(p.probs(), q.probs(), t), 1e-12));
      CHECK(close(pt, raw::power(p.probs(), q.probs(), t), 1e-12));
    }
    const double kl = kl_divergence(p, q).value;
    CHECK(close(kl, raw::kl(p.probs(), q.probs()), 1e-12));
    CHECK(kl >= -1e-12);
    CHECK(renyi_divergence(p, q, 1.0).value == kl);
    CHECK(std::abs(renyi_divergence(p, q, 1.0 + 1e-6).value - kl) < 1e-4);
    // KL <= log(chi2 + 1)
    CHECK(kl <= std::log(chi2 + 1.0) + 1e-12);
  }
}

TEST_CASE("absolute continuity is enforced") {
  const std::vector<double> a{0, 1};
  const std::vector<double> b{0, 2};
  const std::vector<double> w{0.5, 0.5};
  const auto p = make_discrete(a, w);
  const auto q = make_discrete(b, w);
  CHECK_THROWS_AS((void)kl_divergence(p, q), NotAbsolutelyContinuous);
  CHECK_THROWS_WITH_AS((void)chi_square_divergence(p, q), doctest::Contains("not absolutely continuous"),
                       NotAbsolutelyContinuous);
  // q may have extra atoms
  CHECK(kl_divergence(DiscreteDistribution::point_mass(0.0), p).value == doctest::Approx(std::log(2.0)));
}

TEST_CASE("order validation") {
  const auto p = bern(0.5);
  CHECK_THROWS_AS((void)power_divergence(p, p, 1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)renyi_divergence(p, p, 0.5), std::invalid_argument);
  CHECK(to_string(DivergenceKind::ChiSquare) == "chi2");
}

TEST_CASE("huge density ratios stay finite") {
  const auto p = bern(0.5);
  const auto q = bern(1e-200);
  const double v = power_divergence(p, q, 2.0).value;
  CHECK(std::isfinite(v));
  CHECK(v > 1e190);
}
