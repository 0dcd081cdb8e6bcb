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

#include "genmom/distributions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "genmom/errors.hpp"
#include "genmom/numeric.hpp"

namespace genmom {

DiscreteDistribution DiscreteDistribution::point_mass(double atom) {
  if (!std::isfinite(atom)) throw std::invalid_argument("point_mass: atom must be finite");
  return DiscreteDistribution({round_to_digits(atom, kAtomMergeDigits)}, {1.0});
}

double DiscreteDistribution::mean() const noexcept {
  CompensatedSum acc;
  for (std::size_t i = 0; i < atoms_.size(); ++i) acc += atoms_[i] * probs_[i];
  return acc.value();
}

double DiscreteDistribution::entropy() const noexcept {
  CompensatedSum acc;
  for (double p : probs_) {
    if (p > 0.0) acc += -p * std::log(p);
  }
  return acc.value();
}

DiscreteDistribution make_discrete(std::span<const double> atoms, std::span<const double> probs) {
  if (atoms.empty()) throw std::invalid_argument("make_discrete: empty input");
  if (atoms.size() != probs.size()) {
    throw std::invalid_argument("make_discrete: atoms and probs differ in length (" +
                                std::to_string(atoms.size()) + " vs " +
                                std::to_string(probs.size()) + ")");
  }
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw std::invalid_argument("make_discrete: non-finite atom");
    if (!std::isfinite(probs[i])) throw std::invalid_argument("make_discrete: non-finite probability");
    if (probs[i] < 0.0) {
      throw std::invalid_argument("make_discrete: negative probability at index " + std::to_string(i));
    }
    pairs.emplace_back(round_to_digits(atoms[i], kAtomMergeDigits), probs[i]);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<double> out_atoms;
  std::vector<CompensatedSum> out_mass;
  for (const auto& [a, p] : pairs) {
    if (out_atoms.empty() || out_atoms.back() != a) {
      out_atoms.push_back(a);
      out_mass.emplace_back();
    }
    out_mass.back() += p;
  }
  CompensatedSum total;
  for (const auto& m : out_mass) total += m.value();
  const double z = total.value();
  if (!(z > 0.0)) throw std::invalid_argument("make_discrete: all probabilities are zero");

  std::vector<double> out_probs(out_mass.size());
  for (std::size_t i = 0; i < out_mass.size(); ++i) out_probs[i] = out_mass[i].value() / z;
  return DiscreteDistribution(std::move(out_atoms), std::move(out_probs));
}

void GaussianSpec::validate() const {
  if (!std::isfinite(mean)) throw std::invalid_argument("GaussianSpec: mean must be finite");
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("GaussianSpec: variance must be positive and finite");
  }
}

DiscreteDistribution quantize_gaussian(const GaussianSpec& g, int bins, double range_sigmas) {
  g.validate();
  if (bins < 2) throw std::invalid_argument("quantize_gaussian: need at least 2 bins");
  if (!(range_sigmas > 0.0) || !std::isfinite(range_sigmas)) {
    throw std::invalid_argument("quantize_gaussian: range_sigmas must be positive");
  }
  const double sd = g.stddev();
  const double width = 2.0 * range_sigmas / bins;  // in standard units
  std::vector<double> atoms(static_cast<std::size_t>(bins));
  std::vector<double> probs(static_cast<std::size_t>(bins));
  for (int i = 0; i < bins; ++i) {
    // Edges are built from whichever end is nearer so mirrored bins see
    // mirrored arguments.
    const double lo = (2 * i < bins) ? -range_sigmas + i * width : range_sigmas - (bins - i) * width;
    const double hi = (2 * (i + 1) <= bins) ? -range_sigmas + (i + 1) * width
                                            : range_sigmas - (bins - i - 1) * width;
    const double mid = 0.5 * (lo + hi);
    atoms[static_cast<std::size_t>(i)] = g.mean + sd * mid;
    probs[static_cast<std::size_t>(i)] = normal_mass(lo, hi);
  }
  return make_discrete(atoms, probs);
}

std::uint64_t enumeration_size(std::size_t support, int n, std::uint64_t cap) {
  if (n < 1) throw std::invalid_argument("enumeration: n must be >= 1");
  if (support == 0) throw std::invalid_argument("enumeration: empty support");
  const double approx = std::pow(static_cast<double>(support), n);
  if (approx > static_cast<double>(cap)) throw EnumerationTooLarge(approx, cap);
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) count *= support;
  if (count > cap) throw EnumerationTooLarge(approx, cap);
  return count;
}

TrainingSetRange enumerate_training_sets(const DiscreteDistribution& d, int n, std::uint64_t cap) {
  const auto count = enumeration_size(d.size(), n, cap);
  return TrainingSetRange(d, n, count);
}

TrainingSetRange::iterator::iterator(const DiscreteDistribution* d, int n)
    : dist_(d), prefix_(static_cast<std::size_t>(n)), done_(false) {
  current_.indices.assign(static_cast<std::size_t>(n), 0);
  refresh_from(0);
}

void TrainingSetRange::iterator::refresh_from(std::size_t pos) {
  const auto probs = dist_->probs();
  const std::size_t n = current_.indices.size();
  for (std::size_t i = pos; i < n; ++i) {
    const double before = i == 0 ? 1.0 : prefix_[i - 1];
    prefix_[i] = before * probs[current_.indices[i]];
  }
  current_.prob = prefix_[n - 1];
}

TrainingSetRange::iterator& TrainingSetRange::iterator::operator++() {
  const auto k = static_cast<std::uint32_t>(dist_->size());
  auto& idx = current_.indices;
  std::size_t pos = idx.size();
  while (pos > 0) {
    --pos;
    if (++idx[pos] < k) {
      refresh_from(pos);
      return *this;
    }
    idx[pos] = 0;
  }
  done_ = true;
  return *this;
}

void realize_values(const DiscreteDistribution& d, const TrainingSetRealization& r,
                    std::vector<double>& out) {
  out.resize(r.indices.size());
  const auto atoms = d.atoms();
  for (std::size_t i = 0; i < r.indices.size(); ++i) out[i] = atoms[r.indices[i]];
}

DiscreteSampler::DiscreteSampler(const DiscreteDistribution& d)
    : atoms_(d.atoms().begin(), d.atoms().end()), cdf_(d.size()) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += d.probs()[i];
    cdf_[i] = acc.value();
  }
  cdf_.back() = 1.0;
}

std::size_t DiscreteSampler::index(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const auto i = static_cast<std::size_t>(it - cdf_.begin());
  return std::min(i, cdf_.size() - 1);
}

std::vector<double> sample_iid(const DiscreteDistribution& d, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
  std::mt19937_64 rng(seed);
  const DiscreteSampler sampler(d);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = sampler.draw(rng);
  return out;
}

std::vector<double> sample_iid(const GaussianSpec& g, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_iid: n must be >= 1");
  g.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(g.mean, g.stddev());
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = normal(rng);
  return out;
}

std::vector<double> sample_iid(const DataDistribution& d, int n, std::uint64_t seed) {
  return std::visit([&](const auto& dist) { return sample_iid(dist, n, seed); }, d);
}

}  // namespace genmom
