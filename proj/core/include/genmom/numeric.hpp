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

#ifndef GENMOM_NUMERIC_HPP
#define GENMOM_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <span>

namespace genmom {

/// Neumaier-compensated accumulator. Order of additions still matters, but
/// the rounding error no longer grows with the number of terms.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& other) noexcept {
    *this += other.sum_;
    *this += other.comp_;
    return *this;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

[[nodiscard]] double compensated_sum(std::span<const double> xs) noexcept;

// Runtime-evaluated constants.
[[nodiscard]] double exp_inv_e() noexcept;           // e^{1/e}
[[nodiscard]] double exp_inv_e_plus_half() noexcept;  // e^{1/e + 1/2}

[[nodiscard]] double normal_pdf(double z) noexcept;
[[nodiscard]] double normal_cdf(double z) noexcept;
/// P(a <= Z <= b) for standard normal Z, evaluated on whichever tail keeps
/// the subtraction well conditioned. Mirror-symmetric in (a, b).
[[nodiscard]] double normal_mass(double a, double b) noexcept;

[[nodiscard]] bool is_near_integer(double x, double tol = 1e-9) noexcept;

/// Rounds to `digits` decimal places. Values whose scaled magnitude would
/// exceed the exact-integer range of a double are returned unchanged.
[[nodiscard]] double round_to_digits(double x, int digits) noexcept;

/// SplitMix64 finalizer; used to decorrelate consecutive integer seeds.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t x) noexcept;

}  // namespace genmom

#endif  // GENMOM_NUMERIC_HPP
