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

#include "genmom/information.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "genmom/divergences.hpp"
#include "genmom/numeric.hpp"

namespace genmom {

LearningKernel sample_mean_kernel() {
  return {"sample_mean",
          [](std::span<const double> s) {
            CompensatedSum acc;
            for (double z : s) acc += z;
            return DiscreteDistribution::point_mass(acc.value() / static_cast<double>(s.size()));
          },
          true};
}

LearningKernel constant_kernel(double w) {
  const auto out = DiscreteDistribution::point_mass(w);
  return {"constant", [out](std::span<const double>) { return out; }, true};
}

LearningKernel noisy_mean_kernel(std::vector<double> offsets, std::vector<double> probs) {
  // Validates once up front.
  const auto noise = make_discrete(offsets, probs);
  return {"noisy_mean",
          [noise](std::span<const double> s) {
            CompensatedSum acc;
            for (double z : s) acc += z;
            const double mean = acc.value() / static_cast<double>(s.size());
            std::vector<double> atoms(noise.size());
            for (std::size_t i = 0; i < noise.size(); ++i) atoms[i] = mean + noise.atoms()[i];
            return make_discrete(atoms, noise.probs());
          },
          noise.size() == 1};
}

LearningKernel gibbs_kernel(std::vector<double> grid, double inverse_temperature,
                            std::function<double(double, double)> loss) {
  if (grid.empty()) throw std::invalid_argument("gibbs_kernel: empty grid");
  if (!(inverse_temperature >= 0.0)) throw std::invalid_argument("gibbs_kernel: inverse temperature must be >= 0");
  if (!loss) throw std::invalid_argument("gibbs_kernel: loss is required");
  return {"gibbs",
          [grid = std::move(grid), inverse_temperature, loss = std::move(loss)](std::span<const double> s) {
            std::vector<double> energy(grid.size());
            for (std::size_t g = 0; g < grid.size(); ++g) {
              CompensatedSum acc;
              for (double z : s) acc += loss(grid[g], z);
              energy[g] = inverse_temperature * acc.value();
            }
            const double lowest = *std::min_element(energy.begin(), energy.end());
            std::vector<double> weights(grid.size());
            for (std::size_t g = 0; g < grid.size(); ++g) weights[g] = std::exp(lowest - energy[g]);
            return make_discrete(grid, weights);
          },
          false};
}

class JointBuilder {
 public:
  JointBuilder(int digits, bool merge) : digits_(digits), merge_(merge) {}

  void add(double p_s, const DiscreteDistribution& out, const TrainingSetRealization* r) {
    entries_.clear();
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double cond = out.probs()[i];
      if (!(cond > 0.0)) continue;
      const double w = round_to_digits(out.atoms()[i], digits_);
      auto [it, inserted] = w_index_.try_emplace(w, static_cast<std::uint32_t>(atoms_.size()));
      if (inserted) atoms_.push_back(w);
      entries_.emplace_back(it->second, cond);
    }
    std::sort(entries_.begin(), entries_.end());
    // Rounding can map two kernel atoms onto one hypothesis value.
    std::size_t k = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (k > 0 && entries_[k - 1].first == entries_[i].first) {
        entries_[k - 1].second += entries_[i].second;
      } else {
        entries_[k++] = entries_[i];
      }
    }
    entries_.resize(k);

    if (merge_) {
      auto [it, inserted] = classes_.try_emplace(entries_, class_mass_.size());
      if (inserted) {
        class_mass_.emplace_back();
        class_cond_.push_back(entries_);
      }
      class_mass_[it->second] += p_s;
      return;
    }
    p_s_.push_back(p_s);
    for (const auto& [w, cond] : entries_) {
      cell_w_.push_back(w);
      cell_mass_.push_back(p_s * cond);
    }
    offsets_.push_back(cell_w_.size());
    if (r != nullptr) realizations_.push_back(*r);
  }

  JointDistribution finish() {
    if (merge_) {
      for (std::size_t c = 0; c < class_cond_.size(); ++c) {
        const double ps = class_mass_[c].value();
        p_s_.push_back(ps);
        for (const auto& [w, cond] : class_cond_[c]) {
          cell_w_.push_back(w);
          cell_mass_.push_back(ps * cond);
        }
        offsets_.push_back(cell_w_.size());
      }
    }
    // Relabel provisional atom ids into ascending value order.
    std::vector<std::uint32_t> order(atoms_.size());
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return atoms_[a] < atoms_[b]; });
    std::vector<std::uint32_t> rank(atoms_.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) rank[order[r]] = r;

    JointDistribution j;
    j.w_atoms_.resize(atoms_.size());
    for (std::uint32_t r = 0; r < order.size(); ++r) j.w_atoms_[r] = atoms_[order[r]];
    for (auto& w : cell_w_) w = rank[w];
    for (std::size_t s = 0; s + 1 < offsets_.size(); ++s) {
      // Keep each column sorted by w.
      std::vector<std::pair<std::uint32_t, double>> col;
      for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) col.emplace_back(cell_w_[k], cell_mass_[k]);
      std::sort(col.begin(), col.end());
      for (std::size_t k = offsets_[s]; k < offsets_[s + 1]; ++k) {
        cell_w_[k] = col[k - offsets_[s]].first;
        cell_mass_[k] = col[k - offsets_[s]].second;
      }
    }
    j.p_s_ = std::move(p_s_);
    j.col_offsets_ = std::move(offsets_);
    j.cell_w_ = std::move(cell_w_);
    j.cell_mass_ = std::move(cell_mass_);
    j.realizations_ = std::move(realizations_);
    j.finalize();
    return j;
  }

 private:
  int digits_;
  bool merge_;
  std::map<double, std::uint32_t> w_index_;
  std::vector<double> atoms_;
  std::vector<std::pair<std::uint32_t, double>> entries_;
  std::map<std::vector<std::pair<std::uint32_t, double>>, std::size_t> classes_;
  std::vector<CompensatedSum> class_mass_;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> class_cond_;
  std::vector<double> p_s_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> cell_w_;
  std::vector<double> cell_mass_;
  std::vector<TrainingSetRealization> realizations_;
};

void JointDistribution::finalize() {
  std::vector<CompensatedSum> pw(w_atoms_.size());
  CompensatedSum total;
  for (std::size_t k = 0; k < cell_w_.size(); ++k) {
    if (cell_mass_[k] < 0.0 || !std::isfinite(cell_mass_[k])) {
      throw std::invalid_argument("joint distribution: negative or non-finite mass");
    }
    pw[cell_w_[k]] += cell_mass_[k];
    total += cell_mass_[k];
  }
  if (std::abs(total.value() - 1.0) > 1e-9) {
    throw std::runtime_error("joint distribution: total mass " + std::to_string(total.value()) +
                             " differs from 1 by more than 1e-9 (invalid kernel output?)");
  }
  p_w_.resize(pw.size());
  for (std::size_t i = 0; i < pw.size(); ++i) p_w_[i] = pw[i].value();

  // Drop hypothesis atoms that ended up with no mass.
  if (std::any_of(p_w_.begin(), p_w_.end(), [](double p) { return !(p > 0.0); })) {
    std::vector<std::uint32_t> remap(w_atoms_.size(), UINT32_MAX);
    std::vector<double> atoms;
    std::vector<double> masses;
    for (std::size_t i = 0; i < w_atoms_.size(); ++i) {
      if (p_w_[i] > 0.0) {
        remap[i] = static_cast<std::uint32_t>(atoms.size());
        atoms.push_back(w_atoms_[i]);
        masses.push_back(p_w_[i]);
      }
    }
    std::vector<std::size_t> offsets{0};
    std::vector<std::uint32_t> cw;
    std::vector<double> cm;
    for (std::size_t s = 0; s + 1 < col_offsets_.size(); ++s) {
      for (std::size_t k = col_offsets_[s]; k < col_offsets_[s + 1]; ++k) {
        if (remap[cell_w_[k]] == UINT32_MAX || cell_mass_[k] == 0.0) continue;
        cw.push_back(remap[cell_w_[k]]);
        cm.push_back(cell_mass_[k]);
      }
      offsets.push_back(cw.size());
    }
    w_atoms_ = std::move(atoms);
    p_w_ = std::move(masses);
    col_offsets_ = std::move(offsets);
    cell_w_ = std::move(cw);
    cell_mass_ = std::move(cm);
  }
}

std::span<const std::uint32_t> JointDistribution::column_w(std::size_t s) const {
  return std::span<const std::uint32_t>(cell_w_).subspan(col_offsets_.at(s), col_offsets_.at(s + 1) - col_offsets_[s]);
}

std::span<const double> JointDistribution::column_mass(std::size_t s) const {
  return std::span<const double>(cell_mass_).subspan(col_offsets_.at(s), col_offsets_.at(s + 1) - col_offsets_[s]);
}

double JointDistribution::total_mass() const noexcept { return compensated_sum(cell_mass_); }

namespace {
double entropy_of(std::span<const double> probs) {
  CompensatedSum acc;
  for (double p : probs) {
    if (p > 0.0) acc += -p * std::log(p);
  }
  return acc.value();
}
}  // namespace

double JointDistribution::entropy_w() const noexcept { return entropy_of(p_w_); }
double JointDistribution::entropy_s() const noexcept { return entropy_of(p_s_); }

std::vector<std::vector<double>> JointDistribution::to_dense() const {
  std::vector<std::vector<double>> out(w_atoms_.size(), std::vector<double>(p_s_.size(), 0.0));
  for_each_cell([&](std::uint32_t w, std::size_t s, double m) { out[w][s] = m; });
  return out;
}

JointDistribution JointDistribution::from_dense(std::vector<double> w_atoms,
                                                const std::vector<std::vector<double>>& mass) {
  if (w_atoms.empty()) throw std::invalid_argument("joint: no hypothesis atoms");
  if (mass.size() != w_atoms.size()) throw std::invalid_argument("joint: mass must have one row per w atom");
  const std::size_t cols = mass.front().size();
  if (cols == 0) throw std::invalid_argument("joint: mass rows are empty");
  for (const auto& row : mass) {
    if (row.size() != cols) throw std::invalid_argument("joint: ragged mass matrix");
  }
  for (double w : w_atoms) {
    if (!std::isfinite(w)) throw std::invalid_argument("joint: non-finite w atom");
  }
  JointDistribution j;
  // Rows in ascending atom order; duplicate atoms are merged.
  std::vector<std::size_t> order(w_atoms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return w_atoms[a] < w_atoms[b]; });
  std::vector<std::uint32_t> row_to_w(w_atoms.size());
  for (std::size_t r : order) {
    if (j.w_atoms_.empty() || j.w_atoms_.back() != w_atoms[r]) j.w_atoms_.push_back(w_atoms[r]);
    row_to_w[r] = static_cast<std::uint32_t>(j.w_atoms_.size() - 1);
  }
  j.p_s_.resize(cols);
  for (std::size_t s = 0; s < cols; ++s) {
    std::map<std::uint32_t, double> col;
    CompensatedSum ps;
    for (std::size_t r = 0; r < mass.size(); ++r) {
      const double m = mass[r][s];
      if (m < 0.0 || !std::isfinite(m)) throw std::invalid_argument("joint: negative or non-finite mass");
      if (m == 0.0) continue;
      col[row_to_w[r]] += m;
      ps += m;
    }
    j.p_s_[s] = ps.value();
    for (const auto& [w, m] : col) {
      j.cell_w_.push_back(w);
      j.cell_mass_.push_back(m);
    }
    j.col_offsets_.push_back(j.cell_w_.size());
  }
  try {
    j.finalize();
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
  return j;
}

JointDistribution build_joint(const DiscreteDistribution& d, int n, const LearningKernel& kernel,
                              const JointOptions& options) {
  if (!kernel.map) throw std::invalid_argument("build_joint: kernel has no map");
  const bool merge = options.columns == ColumnMode::MergeEquivalent;
  JointBuilder builder(options.w_round_digits, merge);
  std::vector<double> values;
  for (const auto& r : enumerate_training_sets(d, n, options.cap)) {
    realize_values(d, r, values);
    const auto out = kernel.map(values);
    builder.add(r.prob, out, merge ? nullptr : &r);
  }
  return builder.finish();
}

JointDistribution empirical_joint(std::span<const double> w_samples, std::span<const std::uint64_t> s_keys,
                                  int w_round_digits) {
  if (w_samples.empty()) throw std::invalid_argument("empirical_joint: no samples");
  if (w_samples.size() != s_keys.size()) throw std::invalid_argument("empirical_joint: length mismatch");
  std::map<std::uint64_t, std::map<double, double>> counts;
  for (std::size_t i = 0; i < w_samples.size(); ++i) {
    counts[s_keys[i]][round_to_digits(w_samples[i], w_round_digits)] += 1.0;
  }
  JointBuilder builder(w_round_digits, false);
  const double total = static_cast<double>(w_samples.size());
  for (const auto& [key, col] : counts) {
    std::vector<double> atoms;
    std::vector<double> freq;
    double col_total = 0.0;
    for (const auto& [w, c] : col) {
      atoms.push_back(w);
      freq.push_back(c);
      col_total += c;
    }
    builder.add(col_total / total, make_discrete(atoms, freq), nullptr);
  }
  return builder.finish();
}

std::string_view to_string(InformationKind kind) noexcept {
  switch (kind) {
    case InformationKind::MI: return "mi";
    case InformationKind::PowerInfo: return "power";
    case InformationKind::ChiSquareInfo: return "chi2";
  }
  return "unknown";
}

InformationValue mutual_information(const JointDistribution& j) {
  CompensatedSum acc;
  const auto pw = j.p_w();
  const auto ps = j.p_s();
  j.for_each_cell([&](std::uint32_t w, std::size_t s, double m) {
    acc += m * (std::log(m / ps[s]) - std::log(pw[w]));
  });
  return {std::max(0.0, acc.value()), InformationKind::MI, 1.0};
}

InformationValue power_information(const JointDistribution& j, double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("power information: t must be finite and > 1");
  CompensatedSum acc;
  const auto pw = j.p_w();
  const auto ps = j.p_s();
  j.for_each_cell([&](std::uint32_t w, std::size_t s, double m) { acc += power_term(m, pw[w] * ps[s], t); });
  acc += -1.0;
  return {std::max(0.0, acc.value()), InformationKind::PowerInfo, t};
}

InformationValue chi_square_information(const JointDistribution& j) {
  CompensatedSum acc;
  const auto pw = j.p_w();
  const auto ps = j.p_s();
  j.for_each_cell([&](std::uint32_t w, std::size_t s, double m) { acc += (m / ps[s]) * (m / pw[w]); });
  acc += -1.0;
  return {std::max(0.0, acc.value()), InformationKind::ChiSquareInfo, 2.0};
}

double max_density_ratio(const JointDistribution& j) {
  double best = 1.0;
  const auto pw = j.p_w();
  const auto ps = j.p_s();
  j.for_each_cell([&](std::uint32_t w, std::size_t s, double m) {
    if (ps[s] > 0.0) best = std::max(best, (m / ps[s]) / pw[w]);
  });
  return best;
}

}  // namespace genmom
