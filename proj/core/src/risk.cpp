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

#include "genmom/risk.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "genmom/errors.hpp"
#include "genmom/numeric.hpp"

namespace genmom {

LossSpec truncated_square_loss(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("truncated_square_loss: c must be positive");
  const double c2 = c * c;
  LossSpec loss;
  loss.name = "truncated_square";
  loss.evaluate = [c2](double w, double z) {
    const double d = w - z;
    return std::min(d * d, c2);
  };
  loss.upper_bound = c2;
  loss.sigma = c2 / 2.0;
  loss.truncation = c;
  return loss;
}

LossSpec bounded_loss(std::string name, std::function<double(double, double)> evaluate, double upper_bound) {
  if (!evaluate) throw std::invalid_argument("bounded_loss: evaluate is required");
  if (!(upper_bound > 0.0) || !std::isfinite(upper_bound)) {
    throw std::invalid_argument("bounded_loss: upper bound must be positive");
  }
  LossSpec loss;
  loss.name = std::move(name);
  loss.evaluate = std::move(evaluate);
  loss.upper_bound = upper_bound;
  loss.sigma = upper_bound / 2.0;
  return loss;
}

void LearningModel::validate() const {
  if (n < 1) throw std::invalid_argument("model: n must be >= 1");
  if (!kernel.map) throw std::invalid_argument("model: kernel has no map");
  if (!loss.evaluate) throw std::invalid_argument("model: loss has no evaluator");
  if (const auto* g = std::get_if<GaussianSpec>(&data)) g->validate();
}

namespace {

// E[min((w - Z)^2, c^2)] for Z ~ N(mean, sd^2): with X = Z - w ~ N(mu, sd^2),
// integrate (mu + sd y)^2 phi(y) over the window where |X| <= c and add c^2
// times the mass outside it.
double gaussian_truncated_square_risk(const GaussianSpec& g, double c, double w) {
  const double sd = g.stddev();
  const double mu = g.mean - w;
  const double a = (-c - mu) / sd;
  const double b = (c - mu) / sd;
  const double inside = normal_mass(a, b);
  const double pa = normal_pdf(a);
  const double pb = normal_pdf(b);
  const double second = mu * mu * inside + 2.0 * mu * sd * (pa - pb) + sd * sd * (inside + a * pa - b * pb);
  return second + c * c * (1.0 - inside);
}

}  // namespace

double population_risk(const LossSpec& loss, const DataDistribution& data, double w) {
  if (const auto* d = std::get_if<DiscreteDistribution>(&data)) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < d->size(); ++i) acc += d->probs()[i] * loss(w, d->atoms()[i]);
    return acc.value();
  }
  const auto& g = std::get<GaussianSpec>(data);
  if (!loss.truncation) {
    throw NoExactEvaluator("population_risk: no exact evaluator for Gaussian data with loss '" + loss.name + "'");
  }
  return gaussian_truncated_square_risk(g, *loss.truncation, w);
}

double empirical_risk(const LossSpec& loss, double w, std::span<const double> s) {
  if (s.empty()) throw std::invalid_argument("empirical_risk: empty training set");
  CompensatedSum acc;
  for (double z : s) acc += loss(w, z);
  return acc.value() / static_cast<double>(s.size());
}

double gen_value(const LearningModel& model, double w, std::span<const double> s) {
  return population_risk(model.loss, model.data, w) - empirical_risk(model.loss, w, s);
}

std::vector<MomentEstimate> gen_moments_exact(const LearningModel& model, std::span<const int> orders,
                                              std::uint64_t cap) {
  model.validate();
  const auto* d = std::get_if<DiscreteDistribution>(&model.data);
  if (d == nullptr) throw std::invalid_argument("gen_moment_exact: exact moments need discrete data");
  for (int m : orders) {
    if (m < 1) throw std::invalid_argument("gen_moment_exact: moment order must be >= 1");
  }
  std::unordered_map<double, double> risk;
  std::vector<CompensatedSum> acc(orders.size());
  std::vector<double> values;
  std::uint64_t visited = 0;
  for (const auto& r : enumerate_training_sets(*d, model.n, cap)) {
    ++visited;
    realize_values(*d, r, values);
    const auto out = model.kernel(values);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double pw = out.probs()[i];
      if (pw == 0.0) continue;
      const double w = out.atoms()[i];
      auto it = risk.find(w);
      if (it == risk.end()) it = risk.emplace(w, population_risk(model.loss, model.data, w)).first;
      const double g = it->second - empirical_risk(model.loss, w, values);
      const double mass = r.prob * pw;
      for (std::size_t k = 0; k < orders.size(); ++k) acc[k] += mass * std::pow(g, orders[k]);
    }
  }
  std::vector<MomentEstimate> out;
  for (std::size_t k = 0; k < orders.size(); ++k) {
    out.push_back({orders[k], acc[k].value(), MomentMethod::Exact, 0.0, visited, false});
  }
  return out;
}

MomentEstimate gen_moment_exact(const LearningModel& model, int m, std::uint64_t cap) {
  const int orders[] = {m};
  return gen_moments_exact(model, orders, cap).front();
}

std::vector<double> sample_gen_values(const LearningModel& model, std::uint64_t replicates, std::uint64_t base_seed,
                                      unsigned workers) {
  model.validate();
  if (replicates == 0) throw std::invalid_argument("monte carlo: need at least one replicate");
  // Fail fast on an unsupported (data, loss) pair before spawning workers.
  (void)population_risk(model.loss, model.data, 0.0);

  std::vector<double> out(replicates);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  const std::uint64_t chunks = (replicates + kMonteCarloChunk - 1) / kMonteCarloChunk;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

  auto run_block = [&](std::uint64_t begin, std::uint64_t end) {
    std::unordered_map<double, double> discrete_risk;
    std::optional<DiscreteSampler> sampler;
    std::optional<std::normal_distribution<double>> normal;
    if (const auto* d = std::get_if<DiscreteDistribution>(&model.data)) {
      sampler.emplace(*d);
    } else {
      const auto& g = std::get<GaussianSpec>(model.data);
      normal.emplace(g.mean, g.stddev());
    }
    std::vector<double> s(static_cast<std::size_t>(model.n));
    std::mt19937_64 rng;
    for (std::uint64_t r = begin; r < end; ++r) {
      // begin is always chunk-aligned
      if (r % kMonteCarloChunk == 0) rng.seed(mix_seed(base_seed + r / kMonteCarloChunk));
      if (sampler) {
        for (auto& z : s) z = sampler->draw(rng);
      } else {
        normal->reset();
        for (auto& z : s) z = (*normal)(rng);
      }
      const auto law = model.kernel(s);
      double w = law.atoms()[0];
      if (law.size() > 1) w = DiscreteSampler(law).draw(rng);
      double lp = 0.0;
      if (sampler) {
        auto it = discrete_risk.find(w);
        if (it == discrete_risk.end()) it = discrete_risk.emplace(w, population_risk(model.loss, model.data, w)).first;
        lp = it->second;
      } else {
        lp = population_risk(model.loss, model.data, w);
      }
      out[r] = lp - empirical_risk(model.loss, w, s);
    }
  };

  if (workers == 1) {
    run_block(0, replicates);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (chunks + workers - 1) / workers * kMonteCarloChunk;
    for (unsigned t = 0; t < workers; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(replicates, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, t, begin, end] {
        try {
          run_block(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

MomentEstimate moment_from_samples(std::span<const double> gen_samples, int m) {
  if (m < 1) throw std::invalid_argument("moment order must be >= 1");
  if (gen_samples.empty()) throw std::invalid_argument("moment_from_samples: no samples");
  const auto n = gen_samples.size();
  CompensatedSum sum;
  for (double g : gen_samples) sum += std::pow(g, m);
  const double mean = sum.value() / static_cast<double>(n);
  MomentEstimate est{m, mean, MomentMethod::MonteCarlo, 0.0, n, n < 2};
  if (n >= 2) {
    CompensatedSum ss;
    for (double g : gen_samples) {
      const double d = std::pow(g, m) - mean;
      ss += d * d;
    }
    const double var = ss.value() / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

std::vector<MomentEstimate> gen_moments_mc(const LearningModel& model, std::span<const int> orders,
                                           std::uint64_t replicates, std::uint64_t base_seed) {
  const auto samples = sample_gen_values(model, replicates, base_seed);
  std::vector<MomentEstimate> out;
  for (int m : orders) out.push_back(moment_from_samples(samples, m));
  return out;
}

MomentEstimate gen_moment_mc(const LearningModel& model, int m, std::uint64_t replicates, std::uint64_t base_seed) {
  const int orders[] = {m};
  return gen_moments_mc(model, orders, replicates, base_seed).front();
}

double quantile_from_samples(std::span<const double> gen_samples, double delta) {
  if (gen_samples.empty()) throw std::invalid_argument("quantile: no samples");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("quantile: delta must lie in (0, 1]");
  std::vector<double> abs_values(gen_samples.size());
  std::transform(gen_samples.begin(), gen_samples.end(), abs_values.begin(), [](double g) { return std::abs(g); });
  const auto n = abs_values.size();
  const auto k = static_cast<std::size_t>(std::ceil((1.0 - delta) * static_cast<double>(n) - 1e-9));
  const std::size_t idx = std::min(n - 1, k == 0 ? 0 : k - 1);
  std::nth_element(abs_values.begin(), abs_values.begin() + static_cast<std::ptrdiff_t>(idx), abs_values.end());
  return abs_values[idx];
}

double gen_quantile_mc(const LearningModel& model, double delta, std::uint64_t replicates, std::uint64_t base_seed) {
  return quantile_from_samples(sample_gen_values(model, replicates, base_seed), delta);
}

double subgaussian_abs_moment_bound(double sigma, int k) {
  if (!(sigma > 0.0)) throw std::invalid_argument("subgaussian bound: sigma must be positive");
  if (k < 2) throw std::invalid_argument("subgaussian bound: k must be >= 2");
  const double kd = static_cast<double>(k);
  return std::pow(sigma, kd) * std::pow(kd, kd / 2.0) * std::exp(kd / std::numbers::e);
}

}  // namespace genmom
