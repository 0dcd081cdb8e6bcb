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

#include "genmom/bounds.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "genmom/numeric.hpp"

namespace genmom {

namespace {

constexpr std::array<std::pair<BoundKind, std::string_view>, 9> kBoundIds{{
    {BoundKind::HolderFunctional, "thm1"},
    {BoundKind::PowerMoment, "thm2"},
    {BoundKind::ChiSquareMoment, "cor1"},
    {BoundKind::ExpectedGen, "cor2"},
    {BoundKind::DensityRatioMoment, "eq9"},
    {BoundKind::MutualInfoSecondMoment, "thm3"},
    {BoundKind::PowerHighProb, "thm4"},
    {BoundKind::RenyiHighProb, "eq12"},
    {BoundKind::ChiSquareHighProb, "cor3"},
}};

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_common(double sigma, int n) {
  require(sigma > 0.0 && std::isfinite(sigma), "bound: sigma must be positive and finite");
  require(n >= 1, "bound: n must be >= 1");
}

void check_info(double info, const char* name) {
  require(info >= 0.0 && std::isfinite(info), std::string("bound: ") + name + " must be finite and >= 0");
}

void check_delta(double delta) { require(delta > 0.0 && delta < 1.0, "bound: delta must lie in (0, 1)"); }

// Shared side conditions of the moment bounds: mq > 2 and mq integer
// (strict) or mq >= 2 (relaxed).
void add_order_conditions(BoundReport& r, double mq) {
  r.conditions.push_back({"mq > 2", mq > 2.0, ConditionScope::StrictOnly});
  r.conditions.push_back({"mq integer", is_near_integer(mq) && mq >= 1.0 - 1e-9, ConditionScope::StrictOnly});
  r.conditions.push_back({"mq >= 2", mq >= 2.0 - 1e-12, ConditionScope::RelaxedOnly});
}

void add_beta_conditions(BoundReport& r, double beta) {
  r.conditions.push_back({"beta > 2", beta > 2.0, ConditionScope::Both});
  r.conditions.push_back({"beta integer", is_near_integer(beta), ConditionScope::StrictOnly});
}

// sigma^m (k/n)^{m/2} e^{m/e}
double moment_prefactor(double sigma, int n, int m, double k) {
  const double md = static_cast<double>(m);
  return std::pow(sigma, md) * std::pow(k / static_cast<double>(n), md / 2.0) * std::pow(exp_inv_e(), md);
}

}  // namespace

std::string_view bound_id(BoundKind kind) noexcept {
  for (const auto& [k, id] : kBoundIds) {
    if (k == kind) return id;
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_id(std::string_view id) noexcept {
  for (const auto& [k, name] : kBoundIds) {
    if (name == id) return k;
  }
  return std::nullopt;
}

std::string_view to_string(ValidityMode mode) noexcept {
  return mode == ValidityMode::Strict ? "strict" : "relaxed";
}

std::optional<ValidityMode> parse_validity_mode(std::string_view s) noexcept {
  if (s == "strict") return ValidityMode::Strict;
  if (s == "relaxed") return ValidityMode::Relaxed;
  return std::nullopt;
}

bool BoundReport::valid_in(ValidityMode m) const noexcept {
  for (const auto& c : conditions) {
    const bool applies = c.scope == ConditionScope::Both ||
                         (m == ValidityMode::Strict && c.scope == ConditionScope::StrictOnly) ||
                         (m == ValidityMode::Relaxed && c.scope == ConditionScope::RelaxedOnly);
    if (applies && !c.satisfied) return false;
  }
  return true;
}

BoundReport moment_bound_power(double sigma, int n, int m, double t, double info_pt, ValidityMode mode) {
  check_common(sigma, n);
  require(m >= 1, "bound: moment order m must be >= 1");
  require(t > 1.0 && std::isfinite(t), "bound: t must be finite and > 1");
  check_info(info_pt, "power information");
  const double q = t / (t - 1.0);
  BoundReport r;
  r.kind = BoundKind::PowerMoment;
  r.mode = mode;
  r.value = moment_prefactor(sigma, n, m, m * q) * std::pow(info_pt + 1.0, 1.0 / t);
  r.parameters.m = m;
  r.parameters.t = t;
  r.parameters.q = q;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.info_value = info_pt;
  r.parameters.info_kind = "power";
  r.conditions.push_back({"t > 1", t > 1.0, ConditionScope::Both});
  r.conditions.push_back({"q > 1", q > 1.0, ConditionScope::Both});
  add_order_conditions(r, m * q);
  return r;
}

BoundReport moment_bound_chi2(double sigma, int n, int m, double info_chi2, ValidityMode mode) {
  check_common(sigma, n);
  require(m >= 1, "bound: moment order m must be >= 1");
  check_info(info_chi2, "chi-square information");
  BoundReport r;
  r.kind = BoundKind::ChiSquareMoment;
  r.mode = mode;
  r.value = moment_prefactor(sigma, n, m, 2.0 * m) * std::sqrt(info_chi2 + 1.0);
  r.parameters.m = m;
  r.parameters.t = 2.0;
  r.parameters.q = 2.0;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.info_value = info_chi2;
  r.parameters.info_kind = "chi2";
  add_order_conditions(r, 2.0 * m);
  return r;
}

BoundReport expected_gen_bound(double sigma, int n, double q, double info_pt, ValidityMode mode) {
  check_common(sigma, n);
  require(q > 1.0 && std::isfinite(q), "bound: q must be finite and > 1");
  check_info(info_pt, "power information");
  const double t = q / (q - 1.0);
  BoundReport r;
  r.kind = BoundKind::ExpectedGen;
  r.mode = mode;
  r.value = sigma * std::sqrt(q / n) * exp_inv_e() * std::pow(info_pt + 1.0, 1.0 / t);
  r.parameters.m = 1;
  r.parameters.t = t;
  r.parameters.q = q;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.info_value = info_pt;
  r.parameters.info_kind = "power";
  r.conditions.push_back({"q >= 2", q >= 2.0 - 1e-12, ConditionScope::Both});
  r.conditions.push_back({"q integer", is_near_integer(q), ConditionScope::StrictOnly});
  return r;
}

BoundReport moment_bound_ratio(double sigma, int n, int m, double ratio, ValidityMode mode) {
  check_common(sigma, n);
  require(m >= 1, "bound: moment order m must be >= 1");
  require(ratio >= 1.0 && std::isfinite(ratio), "bound: density ratio R must be finite and >= 1");
  BoundReport r;
  r.kind = BoundKind::DensityRatioMoment;
  r.mode = mode;
  r.value = moment_prefactor(sigma, n, m, 2.0 * m) * ratio;
  r.parameters.m = m;
  r.parameters.t = 2.0;
  r.parameters.q = 2.0;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.ratio = ratio;
  add_order_conditions(r, 2.0 * m);
  return r;
}

BoundReport second_moment_bound_mi(double sigma, int n, double mi, ValidityMode mode) {
  check_common(sigma, n);
  check_info(mi, "mutual information");
  BoundReport r;
  r.kind = BoundKind::MutualInfoSecondMoment;
  r.mode = mode;
  r.value = sigma * sigma / n * (16.0 * mi + 9.0);
  r.parameters.m = 2;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.info_value = mi;
  r.parameters.info_kind = "mi";
  return r;
}

double optimal_moment_order(double t, double delta, double info_pt) {
  require(t > 1.0, "bound: t must be > 1");
  check_delta(delta);
  check_info(info_pt, "power information");
  return std::log(info_pt + 1.0) / t - std::log(delta);
}

BoundReport highprob_bound_power(double sigma, int n, double t, double delta, double info_pt, ValidityMode mode) {
  check_common(sigma, n);
  require(t > 1.0 && std::isfinite(t), "bound: t must be finite and > 1");
  check_delta(delta);
  check_info(info_pt, "power information");
  const double best = optimal_moment_order(t, delta, info_pt);
  const double beta = (std::log(info_pt + 1.0) - t * std::log(delta)) / (t - 1.0);
  BoundReport r;
  r.kind = BoundKind::PowerHighProb;
  r.mode = mode;
  r.value = exp_inv_e_plus_half() * std::sqrt(2.0 * t * sigma * sigma / (n * (t - 1.0))) *
            std::sqrt(std::log(info_pt + 1.0) / t + std::log(1.0 / delta));
  r.parameters.t = t;
  r.parameters.q = t / (t - 1.0);
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.delta = delta;
  r.parameters.info_value = info_pt;
  r.parameters.info_kind = "power";
  r.parameters.beta = beta;
  r.parameters.best_order = best;
  add_beta_conditions(r, beta);
  return r;
}

BoundReport highprob_bound_renyi(double sigma, int n, double alpha, double delta, double d_alpha,
                                 ValidityMode mode) {
  check_common(sigma, n);
  require(alpha > 1.0 && std::isfinite(alpha), "bound: alpha must be finite and > 1");
  check_delta(delta);
  check_info(d_alpha, "Renyi divergence");
  const double beta = alpha / (alpha - 1.0) * std::log(1.0 / delta) + d_alpha;
  BoundReport r;
  r.kind = BoundKind::RenyiHighProb;
  r.mode = mode;
  r.value = exp_inv_e_plus_half() * std::sqrt(2.0 * sigma * sigma * (d_alpha + std::log(1.0 / delta)) / n);
  r.parameters.alpha = alpha;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.delta = delta;
  r.parameters.info_value = d_alpha;
  r.parameters.info_kind = "renyi";
  r.parameters.beta = beta;
  add_beta_conditions(r, beta);
  return r;
}

BoundReport highprob_bound_chi2(double sigma, int n, double delta, double info_chi2, ValidityMode mode) {
  check_common(sigma, n);
  check_delta(delta);
  check_info(info_chi2, "chi-square information");
  const double beta = std::log((info_chi2 + 1.0) / (delta * delta));
  BoundReport r;
  r.kind = BoundKind::ChiSquareHighProb;
  r.mode = mode;
  r.value = exp_inv_e_plus_half() * 2.0 * sigma *
            std::sqrt((std::log(std::sqrt(info_chi2 + 1.0)) + std::log(1.0 / delta)) / n);
  r.parameters.t = 2.0;
  r.parameters.q = 2.0;
  r.parameters.n = n;
  r.parameters.sigma = sigma;
  r.parameters.delta = delta;
  r.parameters.info_value = info_chi2;
  r.parameters.info_kind = "chi2";
  r.parameters.beta = beta;
  r.parameters.best_order = optimal_moment_order(2.0, delta, info_chi2);
  add_beta_conditions(r, beta);
  return r;
}

PowerVsChi2Comparison compare_power_vs_chi2(int m, double t, double info_pt) {
  require(m >= 1, "compare: m must be >= 1");
  require(t > 2.0 && std::isfinite(t), "compare: t must be finite and > 2");
  check_info(info_pt, "power information");
  PowerVsChi2Comparison c;
  const double exponent = m * t * (t - 1.0) / (t - 2.0);
  c.threshold = std::pow(2.0 * (t - 1.0) / t, exponent) - 1.0;
  c.chi2_tighter = info_pt >= c.threshold;
  const double order = m * t / (t - 1.0);
  c.order_condition_integer = is_near_integer(order) && order >= 1.0 - 1e-9;
  return c;
}

double chi2_mi_gap(double info_chi2) {
  const double e2 = std::exp(2.0 / std::numbers::e);
  return 4.0 * e2 * std::sqrt(info_chi2 + 1.0) - 16.0 * std::log(info_chi2 + 1.0) - 9.0;
}

double chi2_mi_crossover() {
  static const double root = [] {
    double lo = 90.0;
    double hi = 100.0;
    // gap(90) < 0 < gap(100) and the gap is increasing on this interval.
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (chi2_mi_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }();
  return root;
}

Chi2VsMiComparison compare_chi2_vs_mi(double info_chi2) {
  check_info(info_chi2, "chi-square information");
  Chi2VsMiComparison c;
  c.mi_tighter = chi2_mi_gap(info_chi2) >= 0.0;
  c.meets_stated_threshold = info_chi2 >= c.stated_threshold;
  c.crossover = chi2_mi_crossover();
  c.margin_at_stated = chi2_mi_gap(c.stated_threshold);
  return c;
}

namespace {

const DiscreteDistribution& discrete_data(const LearningModel& model, const char* who) {
  const auto* d = std::get_if<DiscreteDistribution>(&model.data);
  if (d == nullptr) throw std::invalid_argument(std::string(who) + ": needs a model with discrete data");
  return *d;
}

}  // namespace

HolderCheck verify_theorem1(const LearningModel& model, const JointDistribution& joint, const RiskFunctional& f,
                            double t) {
  require(t > 1.0 && std::isfinite(t), "verify_theorem1: t must be finite and > 1");
  require(static_cast<bool>(f), "verify_theorem1: functional is required");
  const auto& d = discrete_data(model, "verify_theorem1");
  require(joint.has_realizations(), "verify_theorem1: joint must keep per-training-set columns");
  const double q = t / (t - 1.0);

  const auto atoms = joint.w_atoms();
  std::vector<double> lp(atoms.size());
  for (std::size_t w = 0; w < atoms.size(); ++w) lp[w] = population_risk(model.loss, model.data, atoms[w]);

  CompensatedSum joint_expectation;
  CompensatedSum product_expectation;
  std::vector<double> values;
  const auto pw = joint.p_w();
  const auto ps = joint.p_s();
  for (std::size_t s = 0; s < joint.s_count(); ++s) {
    realize_values(d, joint.realizations()[s], values);
    const auto cw = joint.column_w(s);
    const auto cm = joint.column_mass(s);
    std::size_t k = 0;
    for (std::size_t w = 0; w < atoms.size(); ++w) {
      const double fv = f(lp[w], empirical_risk(model.loss, atoms[w], values));
      product_expectation += pw[w] * ps[s] * std::pow(std::abs(fv), q);
      if (k < cw.size() && cw[k] == w) {
        joint_expectation += cm[k] * fv;
        ++k;
      }
    }
  }
  HolderCheck out;
  out.lhs = std::abs(joint_expectation.value());
  out.product_norm = std::pow(std::max(0.0, product_expectation.value()), 1.0 / q);
  out.info_factor = std::pow(power_information(joint, t).value + 1.0, 1.0 / t);
  out.rhs = out.product_norm * out.info_factor;
  return out;
}

HolderCheck verify_theorem1(const LearningModel& model, const RiskFunctional& f, double t,
                            const JointOptions& options) {
  model.validate();
  const auto& d = discrete_data(model, "verify_theorem1");
  JointOptions opts = options;
  opts.columns = ColumnMode::PerTrainingSet;
  const auto joint = build_joint(d, model.n, model.kernel, opts);
  return verify_theorem1(model, joint, f, t);
}

double exact_exceedance_mass(const LearningModel& model, const JointDistribution& joint, double threshold) {
  const auto& d = discrete_data(model, "exact_exceedance_mass");
  require(joint.has_realizations(), "exact_exceedance_mass: joint must keep per-training-set columns");
  const auto atoms = joint.w_atoms();
  std::vector<double> lp(atoms.size());
  for (std::size_t w = 0; w < atoms.size(); ++w) lp[w] = population_risk(model.loss, model.data, atoms[w]);
  CompensatedSum mass;
  std::vector<double> values;
  for (std::size_t s = 0; s < joint.s_count(); ++s) {
    realize_values(d, joint.realizations()[s], values);
    const auto cw = joint.column_w(s);
    const auto cm = joint.column_mass(s);
    for (std::size_t k = 0; k < cw.size(); ++k) {
      const double g = lp[cw[k]] - empirical_risk(model.loss, atoms[cw[k]], values);
      if (std::abs(g) > threshold) mass += cm[k];
    }
  }
  return mass.value();
}

}  // namespace genmom
