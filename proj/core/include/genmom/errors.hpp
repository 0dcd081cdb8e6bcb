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

#ifndef GENMOM_ERRORS_HPP
#define GENMOM_ERRORS_HPP

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace genmom {

/// Raised when an exact enumeration would visit more than `cap` tuples.
class EnumerationTooLarge : public std::length_error {
 public:
  EnumerationTooLarge(double size, std::uint64_t cap)
      : std::length_error("enumeration too large: K^n = " + format(size) +
                          " exceeds cap " + std::to_string(cap)),
        size_(size),
        cap_(cap) {}
  [[nodiscard]] double size() const noexcept { return size_; }
  [[nodiscard]] std::uint64_t cap() const noexcept { return cap_; }

 private:
  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  double size_;
  std::uint64_t cap_;
};

/// p puts mass where q has none.
class NotAbsolutelyContinuous : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Probability vectors of different length passed to a raw divergence.
class SupportMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No closed-form or exact population-risk evaluator for a (data, loss) pair.
class NoExactEvaluator : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace genmom

#endif  // GENMOM_ERRORS_HPP
