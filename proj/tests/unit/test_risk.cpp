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

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "genmom/errors.hpp"
#include "genmom/risk.hpp"
#include "test_support.hpp"

using namespace genmom;

namespace {

// E min((w - Z)^2, c^2) for Z ~ N(mean, sd^2), by adaptive quadrature over
// the untruncated window plus the exact tail mass.
double quadrature_risk(double mean, double sd, double c, double w) {
  const boost::math::normal_distribution<double> z(mean, sd);
  auto f = [&](double x) { return (w - x) * (w - x) * boost::math::pdf(z, x); };
  double err = 0.0;
  const double inner =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, w - c, w + c, 15, 1e-15, &err);
  const double tails = boost::math::cdf(z, w - c) + boost::math::cdf(boost::math::complement(z, w + c));
  return inner + c * c * tails;
}

LearningModel two_point_model(double c) {
  const std::vector<double> a{-1, 1};
  const std::vector<double> p{0.5, 0.5};
  return {make_discrete(a, p), 2, sample_mean_kernel(), truncated_square_loss(c)};
}

}  // namespace

TEST_CASE("truncated square loss") {
  const auto loss = truncated_square_loss(2.0 / 3.0);
  CHECK(loss(0.3, 0.3) == 0.0);
  CHECK(loss(0.0, 1.0) == doctest::Approx(4.0 / 9.0));
  CHECK(loss(0.0, 0.5) == doctest::Approx(0.25));
  CHECK(loss.upper_bound == doctest::Approx(4.0 / 9.0));
  CHECK(loss.sigma == doctest::Approx(2.0 / 9.0));
  CHECK_THROWS_AS((void)truncated_square_loss(0.0), std::invalid_argument);
}

TEST_CASE("gaussian population risk matches quadrature") {
  const auto loss = truncated_square_loss(2.0 / 3.0);
  const DataDistribution std_normal = GaussianSpec{0.0, 1.0};
  CHECK(population_risk(loss, std_normal, 0.0) == doctest::Approx(0.29352206202917159).epsilon(1e-13));
  for (double w = -5.0; w <= 5.0; w += 0.25) {
    CHECK(population_risk(loss, std_normal, w) ==
          doctest::Approx(quadrature_risk(0.0, 1.0, 2.0 / 3.0, w)).epsilon(1e-10));
  }
  const DataDistribution shifted = GaussianSpec{1.5, 0.49};
  const auto wide = truncated_square_loss(1.7);
  for (double w = -3.0; w <= 5.0; w += 0.5) {
    CHECK(population_risk(wide, shifted, w) == doctest::Approx(quadrature_risk(1.5, 0.7, 1.7, w)).epsilon(1e-10));
  }
  CHECK(population_risk(loss, std_normal, 40.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(population_risk(loss, std_normal, -40.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("discrete population and empirical risk") {
  const auto loss = truncated_square_loss(10.0);
  const DataDistribution point = DiscreteDistribution::point_mass(2.0);
  CHECK(population_risk(loss, point, 0.5) == doctest::Approx(2.25));
  const std::vector<double> s{0.0, 0.0};
  CHECK(empirical_risk(loss, 0.0, s) == 0.0);
  const auto custom = bounded_loss(
      "table", [](double, double z) { return z; }, 1.0);
  const std::vector<double> losses{0.1, 0.3};
  CHECK(empirical_risk(custom, 0.0, losses) == doctest::Approx(0.2));
  const std::vector<double> one{0.3};
  CHECK(empirical_risk(loss, 0.0, one) == doctest::Approx(0.09));
}

TEST_CASE("gaussian data with a non-truncated loss has no exact evaluator") {
  const auto custom = bounded_loss(
      "abs", [](double w, double z) { return std::min(1.0, std::abs(w - z)); }, 1.0);
  const DataDistribution g = GaussianSpec{0.0, 1.0};
  CHECK_THROWS_AS((void)population_risk(custom, g, 0.0), NoExactEvaluator);
}

TEST_CASE("exact moments of a hand-enumerated model") {
  const auto model = two_point_model(10.0);
  CHECK(gen_moment_exact(model, 1).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(gen_moment_exact(model, 2).value == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gen_moment_exact(model, 2).method == MomentMethod::Exact);

  const std::vector<int> orders{1, 2, 3};
  const auto all = gen_moments_exact(model, orders);
  REQUIRE(all.size() == 3);
  CHECK(all[2].value == doctest::Approx(4.0));

  LearningModel gauss{GaussianSpec{0.0, 1.0}, 2, sample_mean_kernel(), truncated_square_loss(1.0)};
  CHECK_THROWS_AS((void)gen_moment_exact(gauss, 1), std::invalid_argument);
}

TEST_CASE("degenerate data gives zero generalization error") {
  LearningModel model{DiscreteDistribution::point_mass(1.0), 3, sample_mean_kernel(), truncated_square_loss(1.0)};
  CHECK(gen_moment_exact(model, 1).value == 0.0);
  CHECK(gen_moment_exact(model, 2).value == 0.0);
}

TEST_CASE("monte carlo agrees with enumeration") {
  const auto d = make_discrete(std::vector<double>{-1.0, 0.2, 1.5}, std::vector<double>{0.3, 0.5, 0.2});
  const std::vector<LearningKernel> kernels{sample_mean_kernel(), noisy_mean_kernel({-0.2, 0.3}, {0.6, 0.4})};
  const std::vector<int> orders{1, 2, 3, 4};
  for (const auto& kernel : kernels) {
    LearningModel model{d, 3, kernel, truncated_square_loss(1.2)};
    const auto exact = gen_moments_exact(model, orders);
    const auto mc = gen_moments_mc(model, orders, 200000, 99);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      CHECK(mc[i].method == MomentMethod::MonteCarlo);
      CHECK(std::abs(mc[i].value - exact[i].value) <= 4.0 * mc[i].std_error + 1e-12);
    }
  }
}

TEST_CASE("monte carlo does not depend on the worker count") {
  LearningModel model{GaussianSpec{0.0, 1.0}, 4, sample_mean_kernel(), truncated_square_loss(2.0 / 3.0)};
  const auto a = sample_gen_values(model, 5 * kMonteCarloChunk + 7, 17, 1);
  const auto b = sample_gen_values(model, 5 * kMonteCarloChunk + 7, 17, 3);
  CHECK(a == b);
  const double bound = model.loss.upper_bound;
  for (double g : a) CHECK(std::abs(g) <= bound);
}

TEST_CASE("standard error behaviour") {
  const std::vector<double> one{0.5};
  const auto e = moment_from_samples(one, 2);
  CHECK(e.stderr_unavailable);
  CHECK(e.std_error == 0.0);
  CHECK(e.value == doctest::Approx(0.25));

  LearningModel model{GaussianSpec{0.0, 1.0}, 2, sample_mean_kernel(), truncated_square_loss(2.0 / 3.0)};
  const double se1 = gen_moment_mc(model, 2, 40000, 1).std_error;
  const double se2 = gen_moment_mc(model, 2, 160000, 2).std_error;
  CHECK(se2 / se1 == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("quantiles") {
  const std::vector<double> g{-0.4, 0.1, 0.3, -0.2};
  CHECK(quantile_from_samples(g, 1.0) == doctest::Approx(0.1));
  CHECK(quantile_from_samples(g, 1e-9) == doctest::Approx(0.4));
  CHECK(quantile_from_samples(g, 0.5) == doctest::Approx(0.2));
  CHECK_THROWS_AS((void)quantile_from_samples(g, 0.0), std::invalid_argument);

  LearningModel model{GaussianSpec{0.0, 1.0}, 3, sample_mean_kernel(), truncated_square_loss(2.0 / 3.0)};
  const auto samples = sample_gen_values(model, 20000, 5);
  for (double delta : {0.1, 0.05, 0.01}) {
    const double q = quantile_from_samples(samples, delta);
    double below = 0.0;
    for (double x : samples) below += std::abs(x) <= q ? 1.0 : 0.0;
    const double frac = below / static_cast<double>(samples.size());
    const double slack = 2.0 / std::sqrt(static_cast<double>(samples.size()));
    CHECK(frac >= 1.0 - delta - slack);
    CHECK(frac <= 1.0 - delta + slack);
  }
}

TEST_CASE("subgaussian absolute moment bound") {
  CHECK(subgaussian_abs_moment_bound(1.0, 2) == doctest::Approx(4.1741304572690659).epsilon(1e-15));
  CHECK(subgaussian_abs_moment_bound(0.5, 2) ==
        doctest::Approx(0.25 * subgaussian_abs_moment_bound(1.0, 2)).epsilon(1e-15));
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  std::vector<double> sums(3, 0.0);
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double x = std::abs(z(rng));
    sums[0] += x * x;
    sums[1] += x * x * x;
    sums[2] += x * x * x * x;
  }
  for (int k = 2; k <= 4; ++k) CHECK(sums[k - 2] / n <= subgaussian_abs_moment_bound(1.0, k));
  CHECK_THROWS_AS((void)subgaussian_abs_moment_bound(1.0, 1), std::invalid_argument);
}
