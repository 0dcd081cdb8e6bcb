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

#include "genmom/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "genmom/information.hpp"
#include "genmom/numeric.hpp"

namespace genmom {

namespace {

constexpr double kPowerOrders[] = {1.5, 2.0, 3.0, 4.0};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Recorder {
 public:
  explicit Recorder(VerificationReport& report) : report_(report) {}

  void check(const std::string& name, bool ok, const std::string& context, const std::string& detail) {
    ++report_.checks;
    ++report_.checks_by_name[name];
    if (!ok) report_.violations.push_back({name, context + ": " + detail});
  }

  // lhs <= rhs + tol * max(1, |rhs|)
  void le(const std::string& name, double lhs, double rhs, double tol, const std::string& context,
          const std::string& params) {
    const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
    check(name, ok, context, params + " lhs=" + num(lhs) + " rhs=" + num(rhs));
  }

  void eq(const std::string& name, double a, double b, double tol, const std::string& context,
          const std::string& params) {
    const bool ok = std::isfinite(a) && std::isfinite(b) && std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
    check(name, ok, context, params + " a=" + num(a) + " b=" + num(b));
  }

 private:
  VerificationReport& report_;
};

LearningKernel battery_kernel(int slot, const LossSpec& loss) {
  switch (slot % 4) {
    case 0:
      return sample_mean_kernel();
    case 1:
      return noisy_mean_kernel({-0.25, 0.0, 0.25}, {0.25, 0.5, 0.25});
    case 2: {
      std::vector<double> grid;
      for (int i = 0; i <= 8; ++i) grid.push_back(-2.0 + 0.5 * i);
      return gibbs_kernel(std::move(grid), 1.5, loss.evaluate);
    }
    default:
      return constant_kernel(0.3);
  }
}

void desk_anchors(Recorder& rec, const BoundFormulas& f) {
  const auto S = ValidityMode::Strict;
  const auto R = ValidityMode::Relaxed;
  const double tol = 1e-12;
  const std::string ctx = "anchor";
  rec.eq("anchor.power_moment", f.power_moment(1.0, 4, 1, 2.0, 0.0, R).value, 1.0215344410822704, tol, ctx,
         "sigma=1 n=4 m=1 t=2 I=0");
  rec.eq("anchor.power_moment", f.power_moment(2.0 / 9.0, 10, 2, 2.0, 1.0, R).value, 0.058302339790464414, tol,
         ctx, "sigma=2/9 n=10 m=2 t=2 I=1");
  rec.eq("anchor.chi2_moment", f.chi2_moment(1.0, 4, 2, 0.0, R).value, 2.0870652286345330, tol, ctx,
         "sigma=1 n=4 m=2 I=0");
  rec.eq("anchor.chi2_moment", f.chi2_moment(2.0 / 9.0, 10, 1, 1.0, R).value, 0.20304181792152981, tol, ctx,
         "sigma=2/9 n=10 m=1 I=1");
  rec.eq("anchor.expected_gen", f.expected_gen(1.0, 100, 2.0, 0.0, R).value, 0.20430688821645407, tol, ctx,
         "sigma=1 n=100 q=2 I=0");
  rec.eq("anchor.ratio_moment", f.ratio_moment(1.0, 4, 2, 1.0, S).value, 2.0870652286345330, tol, ctx,
         "sigma=1 n=4 m=2 R=1");
  rec.eq("anchor.mi_second_moment", f.mi_second_moment(1.0, 9, 0.0, S).value, 1.0, tol, ctx, "sigma=1 n=9 I=0");
  rec.eq("anchor.mi_second_moment", f.mi_second_moment(1.0, 100, std::numbers::ln2, S).value, 0.20090354888959125,
         tol, ctx, "sigma=1 n=100 I=ln2");
  rec.eq("anchor.power_highprob", f.power_highprob(1.0, 100, 2.0, std::exp(-1.0), std::exp(8.0) - 1.0, S).value,
         1.0651977737308667, tol, ctx, "sigma=1 n=100 t=2 delta=1/e I=e^8-1");
  rec.eq("anchor.chi2_highprob", f.chi2_highprob(1.0, 100, std::exp(-1.0), std::exp(8.0) - 1.0, S).value,
         1.0651977737308667, tol, ctx, "sigma=1 n=100 delta=1/e I=e^8-1");
}

void check_model(const BatteryModel& bm, const VerificationConfig& cfg, const BoundFormulas& f, Recorder& rec) {
  const auto& model = bm.model;
  const auto& data = std::get<DiscreteDistribution>(model.data);
  const auto& ctx = bm.description;
  const auto joint = build_joint(data, model.n, model.kernel);
  const double sigma = model.loss.sigma;
  const int n = model.n;
  const double tol = cfg.tolerance;
  const double ctol = cfg.chain_tolerance;
  const auto R = ValidityMode::Relaxed;

  const double chi2 = chi_square_information(joint).value;
  const double mi = mutual_information(joint).value;
  const double ratio = max_density_ratio(joint);
  std::map<double, double> power;
  for (double t : kPowerOrders) power[t] = power_information(joint, t).value;

  rec.check("info.nonnegative", chi2 >= 0.0 && mi >= 0.0, ctx, "chi2=" + num(chi2) + " mi=" + num(mi));
  for (const auto& [t, v] : power) rec.check("info.nonnegative", v >= 0.0, ctx, "t=" + num(t) + " I=" + num(v));
  rec.eq("info.power2_is_chi2", power[2.0], chi2, ctol, ctx, "t=2");
  for (double t : {3.0, 4.0}) {
    rec.le("chain.chi2_vs_power", std::sqrt(chi2 + 1.0), std::pow(power[t] + 1.0, 1.0 / (2.0 * (t - 1.0))), ctol,
           ctx, "t=" + num(t));
  }
  rec.le("chain.mi_vs_chi2", mi, std::log(chi2 + 1.0), ctol, ctx, "");
  rec.le("chain.mi_vs_ratio", mi, std::log(ratio), ctol, ctx, "");
  rec.le("chain.chi2_vs_ratio", chi2 + 1.0, ratio, ctol, ctx, "");

  for (int m : cfg.moments) {
    const RiskFunctional fm = [m](double lp, double le) { return std::pow(lp - le, m); };
    for (double t : cfg.holder_orders) {
      const auto h = verify_theorem1(model, joint, fm, t);
      rec.le("holder", h.lhs, h.rhs, tol, ctx, "m=" + std::to_string(m) + " t=" + num(t));
    }
  }

  const auto exact = gen_moments_exact(model, cfg.moments);
  for (std::size_t i = 0; i < cfg.moments.size(); ++i) {
    const int m = cfg.moments[i];
    const double lhs = std::abs(exact[i].value);
    const std::string pm = "m=" + std::to_string(m);
    for (double t : kPowerOrders) {
      const auto rep = f.power_moment(sigma, n, m, t, power[t], R);
      if (rep.valid_in(R)) rec.le("sound.power_moment", lhs, rep.value, tol, ctx, pm + " t=" + num(t));
    }
    rec.le("sound.chi2_moment", lhs, f.chi2_moment(sigma, n, m, chi2, R).value, tol, ctx, pm);
    rec.le("sound.ratio_moment", lhs, f.ratio_moment(sigma, n, m, ratio, R).value, tol, ctx, pm);
    if (m == 1) {
      rec.le("sound.expected_gen", lhs, f.expected_gen(sigma, n, 2.0, power[2.0], R).value, tol, ctx, "q=2");
      rec.le("sound.expected_gen", lhs, f.expected_gen(sigma, n, 3.0, power[1.5], R).value, tol, ctx, "q=3");
    }
    if (m == 2) rec.le("sound.mi_second_moment", lhs, f.mi_second_moment(sigma, n, mi, R).value, tol, ctx, pm);

    // chi-square bound beats the power bound once the information passes the threshold
    for (double t : {3.0, 4.0}) {
      if (compare_power_vs_chi2(m, t, power[t]).chi2_tighter) {
        rec.le("compare.chi2_vs_power", f.chi2_moment(sigma, n, m, chi2, R).value,
               f.power_moment(sigma, n, m, t, power[t], R).value, tol, ctx, pm + " t=" + num(t));
      }
    }

    // specialization and monotonicity of the formulas at this model's values
    rec.eq("identity.power2_is_chi2_bound", f.power_moment(sigma, n, m, 2.0, chi2, R).value,
           f.chi2_moment(sigma, n, m, chi2, R).value, ctol, ctx, pm);
    rec.le("monotone.chi2_moment_info", f.chi2_moment(sigma, n, m, chi2, R).value,
           f.chi2_moment(sigma, n, m, chi2 + 1.0, R).value, ctol, ctx, pm);
    rec.le("monotone.chi2_moment_n", f.chi2_moment(sigma, n + 1, m, chi2, R).value,
           f.chi2_moment(sigma, n, m, chi2, R).value, ctol, ctx, pm);
  }
  if (compare_chi2_vs_mi(chi2).mi_tighter) {
    rec.le("compare.mi_vs_chi2", f.mi_second_moment(sigma, n, mi, R).value, f.chi2_moment(sigma, n, 2, chi2, R).value,
           tol, ctx, "chi2=" + num(chi2));
  }
  rec.eq("identity.expected_gen_is_power_m1", f.expected_gen(sigma, n, 2.0, chi2, R).value,
         f.power_moment(sigma, n, 1, 2.0, chi2, R).value, ctol, ctx, "q=2");
  rec.le("monotone.mi_second_moment", f.mi_second_moment(sigma, n, mi, R).value,
         f.mi_second_moment(sigma, n, mi + 1.0, R).value, ctol, ctx, "");

  for (double delta : cfg.deltas) {
    const std::string pd = "delta=" + num(delta);
    const auto c3 = f.chi2_highprob(sigma, n, delta, chi2, R);
    rec.eq("identity.power2_is_chi2_highprob", f.power_highprob(sigma, n, 2.0, delta, chi2, R).value, c3.value,
           ctol, ctx, pd);
    if (c3.valid_in(R)) {
      rec.le("coverage.chi2_highprob", exact_exceedance_mass(model, joint, c3.value), delta, tol, ctx, pd);
    }
    for (double t : {2.0, 3.0}) {
      const auto p4 = f.power_highprob(sigma, n, t, delta, power[t], R);
      if (p4.valid_in(R)) {
        rec.le("coverage.power_highprob", exact_exceedance_mass(model, joint, p4.value), delta, tol, ctx,
               pd + " t=" + num(t));
      }
      const double d_alpha = std::log(power[t] + 1.0) / t;
      rec.le("compare.renyi_vs_power_highprob", highprob_bound_renyi(sigma, n, t, delta, d_alpha, R).value, p4.value,
             ctol, ctx, pd + " t=" + num(t));
    }
  }
}

}  // namespace

std::vector<BatteryModel> make_battery(const VerificationConfig& config) {
  if (config.models < 0) throw std::invalid_argument("verification: models must be >= 0");
  if (config.max_support < 2) throw std::invalid_argument("verification: max_support must be >= 2");
  if (config.max_n < 1) throw std::invalid_argument("verification: max_n must be >= 1");
  std::mt19937_64 rng(mix_seed(config.seed));
  std::uniform_int_distribution<int> support(2, config.max_support);
  std::uniform_real_distribution<double> atom(-2.0, 2.0);
  std::gamma_distribution<double> weight(1.0, 1.0);
  std::uniform_real_distribution<double> trunc(0.3, 2.0);

  std::vector<BatteryModel> out;
  for (int i = 0; i < config.models; ++i) {
    const int k = support(rng);
    std::vector<double> atoms(static_cast<std::size_t>(k));
    std::vector<double> probs(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
      atoms[j] = std::round(atom(rng) * 1000.0) / 1000.0;
      probs[j] = weight(rng) + 0.05;
    }
    auto data = make_discrete(atoms, probs);
    int max_n = 1;
    while (max_n < config.max_n &&
           enumeration_size(data.size(), max_n + 1, UINT64_MAX) <= config.max_training_sets) {
      ++max_n;
    }
    const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
    const double c = std::round(trunc(rng) * 1000.0) / 1000.0;
    auto loss = truncated_square_loss(c);
    auto kernel = battery_kernel(i, loss);
    std::ostringstream desc;
    desc << "model " << i << " (K=" << data.size() << " n=" << n << " kernel=" << kernel.name << " c=" << c << ")";
    out.push_back({LearningModel{std::move(data), n, std::move(kernel), std::move(loss)}, desc.str()});
  }
  return out;
}

VerificationReport run_verification_suite(const VerificationConfig& config, const BoundFormulas& formulas) {
  return run_verification_suite(make_battery(config), config, formulas);
}

VerificationReport run_verification_suite(const std::vector<BatteryModel>& battery, const VerificationConfig& config,
                                          const BoundFormulas& formulas) {
  if (battery.empty()) throw std::invalid_argument("no models");
  VerificationReport report;
  Recorder rec(report);
  desk_anchors(rec, formulas);
  for (const auto& bm : battery) {
    if (!bm.model.has_discrete_data()) throw std::invalid_argument("verification: battery models need discrete data");
    bm.model.validate();
    check_model(bm, config, formulas, rec);
    ++report.models;
  }
  return report;
}

}  // namespace genmom
