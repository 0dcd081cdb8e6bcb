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

#ifndef GENMOM_INFORMATION_HPP
#define GENMOM_INFORMATION_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "genmom/distributions.hpp"

namespace genmom {

inline constexpr int kDefaultWRoundDigits = 10;

/// Markov kernel P_{W|S}: maps the realized training values to a law over
/// hypothesis values. Deterministic algorithms return a point mass.
struct LearningKernel {
  using Map = std::function<DiscreteDistribution(std::span<const double>)>;

  std::string name;
  Map map;
  bool deterministic = false;

  [[nodiscard]] DiscreteDistribution operator()(std::span<const double> sample) const { return map(sample); }
};

/// W = (z_1 + ... + z_n) / n.
[[nodiscard]] LearningKernel sample_mean_kernel();
/// W = w regardless of the data.
[[nodiscard]] LearningKernel constant_kernel(double w);
/// W = sample mean + D with D drawn from {offsets, probs} independently of S.
[[nodiscard]] LearningKernel noisy_mean_kernel(std::vector<double> offsets, std::vector<double> probs);
/// Gibbs posterior on a finite grid: P(w|s) ∝ exp(-inverse_temperature · n · L_E(w, s)).
[[nodiscard]] LearningKernel gibbs_kernel(std::vector<double> grid, double inverse_temperature,
                                          std::function<double(double, double)> loss);

enum class ColumnMode {
  PerTrainingSet,   // one column per enumerated tuple; keeps the realizations
  MergeEquivalent,  // tuples with identical P(W|s) share a column
};

struct JointOptions {
  int w_round_digits = kDefaultWRoundDigits;
  std::uint64_t cap = kDefaultEnumerationCap;
  ColumnMode columns = ColumnMode::PerTrainingSet;
};

/// Exact joint law of (W, S), stored column-compressed (one column per
/// training set or per equivalence class of training sets). Hypothesis atoms
/// with zero mass are dropped.
class JointDistribution {
 public:
  /// Builds from a dense matrix with rows indexed by w. Throws
  /// std::invalid_argument on ragged rows, negative mass or total mass not
  /// within 1e-9 of one.
  static JointDistribution from_dense(std::vector<double> w_atoms, const std::vector<std::vector<double>>& mass);

  [[nodiscard]] std::span<const double> w_atoms() const noexcept { return w_atoms_; }
  [[nodiscard]] std::span<const double> p_w() const noexcept { return p_w_; }
  [[nodiscard]] std::span<const double> p_s() const noexcept { return p_s_; }
  [[nodiscard]] std::size_t w_count() const noexcept { return w_atoms_.size(); }
  [[nodiscard]] std::size_t s_count() const noexcept { return p_s_.size(); }
  [[nodiscard]] std::size_t cell_count() const noexcept { return cell_w_.size(); }

  /// Nonzero cells of column s as parallel (w index, joint mass) spans.
  [[nodiscard]] std::span<const std::uint32_t> column_w(std::size_t s) const;
  [[nodiscard]] std::span<const double> column_mass(std::size_t s) const;

  template <class F>
  void for_each_cell(F&& f) const {
    for (std::size_t s = 0; s < p_s_.size(); ++s) {
      for (std::size_t k = col_offsets_[s]; k < col_offsets_[s + 1]; ++k) f(cell_w_[k], s, cell_mass_[k]);
    }
  }

  /// Training-set realizations parallel to the columns; empty when columns
  /// were merged or the joint came from a dense matrix.
  [[nodiscard]] const std::vector<TrainingSetRealization>& realizations() const noexcept { return realizations_; }
  [[nodiscard]] bool has_realizations() const noexcept { return !realizations_.empty(); }

  [[nodiscard]] double total_mass() const noexcept;
  [[nodiscard]] double entropy_w() const noexcept;
  [[nodiscard]] double entropy_s() const noexcept;
  /// Dense row-major matrix (rows = w). Intended for small joints.
  [[nodiscard]] std::vector<std::vector<double>> to_dense() const;

 private:
  friend class JointBuilder;
  JointDistribution() = default;
  void finalize();

  std::vector<double> w_atoms_;
  std::vector<double> p_w_;
  std::vector<double> p_s_;
  std::vector<std::size_t> col_offsets_{0};
  std::vector<std::uint32_t> cell_w_;
  std::vector<double> cell_mass_;
  std::vector<TrainingSetRealization> realizations_;
};

/// Enumerates μ^{⊗n}, applies the kernel and groups hypothesis values after
/// rounding to `w_round_digits`. Throws EnumerationTooLarge past the cap and
/// std::runtime_error if the kernel output does not sum to one.
[[nodiscard]] JointDistribution build_joint(const DiscreteDistribution& d, int n, const LearningKernel& kernel,
                                            const JointOptions& options = {});

/// APPROXIMATE: plug-in joint from paired samples (hypothesis value, training
/// set key). A cross-check path only; the exact engine is build_joint.
[[nodiscard]] JointDistribution empirical_joint(std::span<const double> w_samples,
                                                std::span<const std::uint64_t> s_keys,
                                                int w_round_digits = kDefaultWRoundDigits);

enum class InformationKind { MI, PowerInfo, ChiSquareInfo };

[[nodiscard]] std::string_view to_string(InformationKind kind) noexcept;

struct InformationValue {
  double value = 0.0;
  InformationKind kind = InformationKind::MI;
  double order = 1.0;
};

[[nodiscard]] InformationValue mutual_information(const JointDistribution& j);
/// Throws std::invalid_argument unless t > 1.
[[nodiscard]] InformationValue power_information(const JointDistribution& j, double t);
[[nodiscard]] InformationValue chi_square_information(const JointDistribution& j);
/// max over support cells of P(w|s) / P_W(w); always >= 1.
[[nodiscard]] double max_density_ratio(const JointDistribution& j);

}  // namespace genmom

#endif  // GENMOM_INFORMATION_HPP
