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

#include "genmom/numeric.hpp"

#include <numbers>

namespace genmom {

double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum acc;
  for (double x : xs) acc += x;
  return acc.value();
}

double exp_inv_e() noexcept {
  static const double value = std::exp(1.0 / std::numbers::e);
  return value;
}

double exp_inv_e_plus_half() noexcept {
  static const double value = std::exp(1.0 / std::numbers::e + 0.5);
  return value;
}

double normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
}

double normal_cdf(double z) noexcept {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

namespace {
// Upper tail P(Z > z).
double upper_tail(double z) noexcept { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
}  // namespace

double normal_mass(double a, double b) noexcept {
  if (!(b > a)) return 0.0;
  if (a >= 0.0) return upper_tail(a) - upper_tail(b);
  if (b <= 0.0) return upper_tail(-b) - upper_tail(-a);
  return 1.0 - upper_tail(-a) - upper_tail(b);
}

bool is_near_integer(double x, double tol) noexcept {
  return std::abs(x - std::round(x)) <= tol;
}

double round_to_digits(double x, int digits) noexcept {
  const double scale = std::pow(10.0, digits);
  const double scaled = x * scale;
  if (!std::isfinite(scaled) || std::abs(scaled) >= 4.5e15) return x;
  const double r = std::round(scaled) / scale;
  return r == 0.0 ? 0.0 : r;  // fold -0.0
}

std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace genmom
