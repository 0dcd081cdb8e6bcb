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

#ifndef GENMOM_DISTRIBUTIONS_HPP
#define GENMOM_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <span>
#include <variant>
#include <vector>

namespace genmom {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;
inline constexpr int kAtomMergeDigits = 12;
inline constexpr double kDefaultRangeSigmas = 4.0;

/// Finite-support law with strictly increasing atoms and probabilities that
/// sum to one. Only constructible through make_discrete / point_mass, so
/// every instance satisfies the invariants.
class DiscreteDistribution {
 public:
  static DiscreteDistribution point_mass(double atom);

  [[nodiscard]] std::span<const double> atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }
  [[nodiscard]] double atom(std::size_t i) const { return atoms_.at(i); }
  [[nodiscard]] double prob(std::size_t i) const { return probs_.at(i); }

  [[nodiscard]] double mean() const noexcept;
  /// Shannon entropy in nats.
  [[nodiscard]] double entropy() const noexcept;

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

 private:
  DiscreteDistribution(std::vector<double> atoms, std::vector<double> probs)
      : atoms_(std::move(atoms)), probs_(std::move(probs)) {}

  friend DiscreteDistribution make_discrete(std::span<const double>, std::span<const double>);

  std::vector<double> atoms_;
  std::vector<double> probs_;
};

/// Canonicalizes (atoms, probs): atoms are rounded to 12 decimals, sorted,
/// duplicates merged, and probabilities renormalized.
/// Throws std::invalid_argument on empty/mismatched input, negative or
/// non-finite entries, or all-zero probabilities.
[[nodiscard]] DiscreteDistribution make_discrete(std::span<const double> atoms,
                                                 std::span<const double> probs);

struct GaussianSpec {
  double mean = 0.0;
  double variance = 1.0;

  [[nodiscard]] double stddev() const { return std::sqrt(variance); }
  /// Throws std::invalid_argument unless variance > 0 and both fields finite.
  void validate() const;
};

using DataDistribution = std::variant<DiscreteDistribution, GaussianSpec>;

/// K equal-width bins over mean ± range_sigmas·σ, midpoint atoms, bin masses
/// renormalized over the window.
[[nodiscard]] DiscreteDistribution quantize_gaussian(const GaussianSpec& g, int bins,
                                                     double range_sigmas = kDefaultRangeSigmas);

struct TrainingSetRealization {
  std::vector<std::uint32_t> indices;
  double prob = 1.0;
};

/// K^n, or throws EnumerationTooLarge when it exceeds `cap`.
[[nodiscard]] std::uint64_t enumeration_size(std::size_t support, int n,
                                             std::uint64_t cap = kDefaultEnumerationCap);

/// Lazily enumerates every ordered n-tuple of atom indices in odometer order
/// (last position varies fastest).
class TrainingSetRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = TrainingSetRealization;
    using difference_type = std::ptrdiff_t;
    using reference = const TrainingSetRealization&;
    using pointer = const TrainingSetRealization*;

    iterator() = default;
    reference operator*() const noexcept { return current_; }
    pointer operator->() const noexcept { return &current_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& it, std::default_sentinel_t) noexcept { return it.done_; }

   private:
    friend class TrainingSetRange;
    iterator(const DiscreteDistribution* d, int n);
    void refresh_from(std::size_t pos);

    const DiscreteDistribution* dist_ = nullptr;
    TrainingSetRealization current_;
    std::vector<double> prefix_;
    bool done_ = true;
  };

  TrainingSetRange(const DiscreteDistribution& d, int n, std::uint64_t count)
      : dist_(&d), n_(n), count_(count) {}

  [[nodiscard]] iterator begin() const { return iterator(dist_, n_); }
  [[nodiscard]] std::default_sentinel_t end() const noexcept { return {}; }
  [[nodiscard]] std::uint64_t size() const noexcept { return count_; }

 private:
  const DiscreteDistribution* dist_;
  int n_;
  std::uint64_t count_;
};

/// The returned range refers to `d`, which must outlive it.
[[nodiscard]] TrainingSetRange enumerate_training_sets(const DiscreteDistribution& d, int n,
                                                       std::uint64_t cap = kDefaultEnumerationCap);

/// Writes the atom values selected by `r` into `out` (resized to n).
void realize_values(const DiscreteDistribution& d, const TrainingSetRealization& r,
                    std::vector<double>& out);

/// Inverse-CDF sampler over a DiscreteDistribution.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const DiscreteDistribution& d);
  [[nodiscard]] std::size_t index(std::mt19937_64& rng) const;
  [[nodiscard]] double draw(std::mt19937_64& rng) const { return atoms_[index(rng)]; }

 private:
  std::vector<double> atoms_;
  std::vector<double> cdf_;
};

[[nodiscard]] std::vector<double> sample_iid(const DiscreteDistribution& d, int n, std::uint64_t seed);
[[nodiscard]] std::vector<double> sample_iid(const GaussianSpec& g, int n, std::uint64_t seed);
[[nodiscard]] std::vector<double> sample_iid(const DataDistribution& d, int n, std::uint64_t seed);

}  // namespace genmom

#endif  // GENMOM_DISTRIBUTIONS_HPP
