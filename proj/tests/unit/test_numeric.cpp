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
#include <cmath>
#include <numbers>
#include <vector>

#include "genmom/numeric.hpp"

using namespace genmom;

TEST_CASE("exponential constants match high-precision values") {
  CHECK(exp_inv_e() == doctest::Approx(1.4446678610097661).epsilon(1e-15));
  CHECK(exp_inv_e_plus_half() == doctest::Approx(2.3818546315436577).epsilon(1e-15));
}

TEST_CASE("compensated sum recovers small terms lost by naive summation") {
  std::vector<double> xs{1e16, 1.0, -1e16};
  for (int i = 0; i < 1000; ++i) xs.push_back(0.1);
  CHECK(compensated_sum(xs) == doctest::Approx(101.0).epsilon(1e-12));

  CompensatedSum a;
  CompensatedSum b;
  a += 1e16;
  b += 1.0;
  b += -1e16;
  a += b;
  CHECK(a.value() == 1.0);
}

TEST_CASE("normal cdf agrees with Boost.Math") {
  const boost::math::normal_distribution<double> ref;
  for (double z = -30.0; z <= 30.0; z += 0.37) {
    const double want = boost::math::cdf(ref, z);
    CHECK(normal_cdf(z) == doctest::Approx(want).epsilon(1e-13));
    CHECK(normal_pdf(z) == doctest::Approx(boost::math::pdf(ref, z)).epsilon(1e-13));
  }
}

TEST_CASE("normal mass is accurate in both tails") {
  const boost::math::normal_distribution<double> ref;
  CHECK(normal_mass(-0.5, 0.5) == doctest::Approx(boost::math::cdf(ref, 0.5) - boost::math::cdf(ref, -0.5)));
  // deep tail: cdf differences near 1 would cancel
  const double want = boost::math::cdf(boost::math::complement(ref, 8.0)) -
                      boost::math::cdf(boost::math::complement(ref, 9.0));
  CHECK(normal_mass(8.0, 9.0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(normal_mass(-9.0, -8.0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(normal_mass(1.0, 1.0) == 0.0);
}

TEST_CASE("integer test and rounding") {
  CHECK(is_near_integer(3.0));
  CHECK(is_near_integer(3.0 + 1e-12));
  CHECK_FALSE(is_near_integer(3.1));
  CHECK(round_to_digits(0.1 + 0.2, 10) == round_to_digits(0.3, 10));
  CHECK(round_to_digits(1.23456789, 3) == doctest::Approx(1.235));
  CHECK(round_to_digits(1e300, 10) == 1e300);
}

TEST_CASE("seed mixing is deterministic and spreads neighbours") {
  CHECK(mix_seed(1) == mix_seed(1));
  CHECK(mix_seed(1) != mix_seed(2));
  CHECK(mix_seed(0) != 0);
}
