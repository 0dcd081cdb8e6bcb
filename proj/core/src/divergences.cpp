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

#include "genmom/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "genmom/errors.hpp"
#include "genmom/numeric.hpp"

namespace genmom {

std::string_view to_string(DivergenceKind kind) noexcept {
  switch (kind) {
    case DivergenceKind::KL: return "kl";
    case DivergenceKind::Renyi: return "renyi";
    case DivergenceKind::Power: return "power";
    case DivergenceKind::ChiSquare: return "chi2";
  }
  return "unknown";
}

double power_term(double p, double q, double t) noexcept {
  const double ratio = p / q;
  if (ratio > 1e15 || !std::isfinite(ratio)) {
    return std::exp(t * std::log(p) + (1.0 - t) * std::log(q));
  }
  return q * std::pow(ratio, t);
}

namespace {

void check_pair(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw SupportMismatch("divergence: support sizes differ (" + std::to_string(p.size()) + " vs " +
                          std::to_string(q.size()) + ")");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) throw std::invalid_argument("divergence: negative probability");
    if (p[i] > 0.0 && q[i] == 0.0) {
      throw NotAbsolutelyContinuous("divergence: not absolutely continuous (p has mass " +
                                    std::to_string(p[i]) + " at index " + std::to_string(i) +
                                    " where q has none)");
    }
  }
}

void check_order(double t, const char* what) {
  if (!(t > 1.0) || !std::isfinite(t)) {
    throw std::invalid_argument(std::string(what) + ": order must be finite and > 1");
  }
}

struct Aligned {
  std::vector<double> p;
  std::vector<double> q;
};

Aligned align(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  Aligned out;
  const auto pa = p.atoms();
  const auto qa = q.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < pa.size() || j < qa.size()) {
    if (j == qa.size() || (i < pa.size() && pa[i] < qa[j])) {
      if (p.probs()[i] > 0.0) {
        std::ostringstream msg;
        msg << "divergence: not absolutely continuous (p has mass at atom " << pa[i]
            << " which q does not carry)";
        throw NotAbsolutelyContinuous(msg.str());
      }
      ++i;
    } else if (i == pa.size() || qa[j] < pa[i]) {
      out.p.push_back(0.0);
      out.q.push_back(q.probs()[j]);
      ++j;
    } else {
      out.p.push_back(p.probs()[i]);
      out.q.push_back(q.probs()[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

namespace raw {

double kl(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, acc.value());
}

double power(std::span<const double> p, std::span<const double> q, double t) {
  check_order(t, "power divergence");
  check_pair(p, q);
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0) continue;  // p is 0 there too: 0^t / 0^{t-1} = 0
    acc += p[i] > 0.0 ? power_term(p[i], q[i], t) : 0.0;
    acc += -q[i];
  }
  return std::max(0.0, acc.value());
}

double chi_square(std::span<const double> p, std::span<const double> q) {
  check_pair(p, q);
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0) continue;
    const double d = p[i] - q[i];
    acc += d * d / q[i];
  }
  return std::max(0.0, acc.value());
}

double renyi(std::span<const double> p, std::span<const double> q, double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("renyi divergence: alpha must be finite and >= 1");
  }
  if (alpha == 1.0) return kl(p, q);
  check_pair(p, q);
  // log of sum q (p/q)^alpha, accumulated relative to the largest term.
  std::vector<double> logs;
  logs.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) logs.push_back(alpha * std::log(p[i]) + (1.0 - alpha) * std::log(q[i]));
  }
  if (logs.empty()) return 0.0;
  const double top = *std::max_element(logs.begin(), logs.end());
  CompensatedSum acc;
  for (double l : logs) acc += std::exp(l - top);
  const double value = (top + std::log(acc.value())) / (alpha - 1.0);
  return std::max(0.0, value);
}

}  // namespace raw

DivergenceValue kl_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return {raw::kl(a.p, a.q), DivergenceKind::KL, 1.0};
}

DivergenceValue power_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, double t) {
  check_order(t, "power divergence");
  const auto a = align(p, q);
  return {raw::power(a.p, a.q, t), DivergenceKind::Power, t};
}

DivergenceValue chi_square_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q) {
  const auto a = align(p, q);
  return {raw::chi_square(a.p, a.q), DivergenceKind::ChiSquare, 2.0};
}

DivergenceValue renyi_divergence(const DiscreteDistribution& p, const DiscreteDistribution& q, double alpha) {
  const auto a = align(p, q);
  if (alpha == 1.0) return {raw::kl(a.p, a.q), DivergenceKind::Renyi, 1.0};
  return {raw::renyi(a.p, a.q, alpha), DivergenceKind::Renyi, alpha};
}

}  // namespace genmom
