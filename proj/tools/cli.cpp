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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "genmom/bounds.hpp"
#include "genmom/divergences.hpp"
#include "genmom/errors.hpp"
#include "genmom/experiments.hpp"
#include "genmom/information.hpp"
#include "genmom/io.hpp"
#include "genmom/verification.hpp"
#include "json.hpp"

namespace genmom::cli {

namespace {

using nlohmann::ordered_json;

// Missing or inconsistent flags found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text << '\n';
  } else {
    write_text_file(out_path, text + "\n");
  }
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag, std::string_view theorem) {
  if (!v) throw UsageError(std::string(theorem) + " requires " + flag);
  return *v;
}

struct DivergenceArgs {
  std::string p, q, kind, out;
  std::optional<double> order;
};

struct InfoArgs {
  std::string joint, model, out;
  std::vector<double> t;
};

struct BoundArgs {
  std::string theorem, mode = "strict", out;
  double sigma = 0.0;
  int n = 0;
  std::optional<int> m;
  std::optional<double> t, q, info_pt, info_chi2, mi, ratio, delta, alpha, d_alpha;
};

struct ExperimentArgs {
  std::string config, out, out_dir;
};

struct VerifyArgs {
  std::string config, out;
};

std::string run_divergence(const DivergenceArgs& a) {
  const auto p = distribution_from_json(read_text_file(a.p));
  const auto q = distribution_from_json(read_text_file(a.q));
  DivergenceValue v;
  if (a.kind == "kl") {
    v = kl_divergence(p, q);
  } else if (a.kind == "chi2") {
    v = chi_square_divergence(p, q);
  } else if (a.kind == "power") {
    v = power_divergence(p, q, need(a.order, "--order", "power divergence"));
  } else {
    v = renyi_divergence(p, q, need(a.order, "--order", "renyi divergence"));
  }
  ordered_json j;
  j["kind"] = std::string(to_string(v.kind));
  if (a.kind == "power" || a.kind == "renyi") j["order"] = v.order;
  j["value"] = v.value;
  return j.dump(2);
}

std::string run_info(const InfoArgs& a) {
  if (a.joint.empty() == a.model.empty()) throw UsageError("info needs exactly one of --joint or --model");
  ordered_json j;
  std::optional<JointDistribution> joint;
  if (!a.joint.empty()) {
    joint = joint_from_json(read_text_file(a.joint));
    j["source"] = "joint";
  } else {
    const auto spec = model_from_json(read_text_file(a.model));
    JointOptions opts;
    opts.w_round_digits = spec.w_round_digits;
    joint = build_joint(spec.enumeration_data, spec.model.n, spec.model.kernel, opts);
    j["source"] = "model";
    j["quantized"] = !spec.model.has_discrete_data();
    j["n"] = spec.model.n;
    j["kernel"] = spec.model.kernel.name;
  }
  j["w_count"] = joint->w_count();
  j["s_count"] = joint->s_count();
  j["mi"] = mutual_information(*joint).value;
  j["chi2"] = chi_square_information(*joint).value;
  j["max_density_ratio"] = max_density_ratio(*joint);
  if (!a.t.empty()) {
    ordered_json powers = ordered_json::array();
    for (double t : a.t) powers.push_back({{"t", t}, {"value", power_information(*joint, t).value}});
    j["power"] = powers;
  }
  return j.dump(2);
}

std::string run_bounds(const BoundArgs& a) {
  const auto kind = parse_bound_id(a.theorem);
  const auto mode = parse_validity_mode(a.mode);
  if (!mode) throw UsageError("--mode must be strict or relaxed");
  const std::string_view id = a.theorem;
  // Either of t and q may be given for the power-information bounds.
  auto order_t = [&]() -> double {
    if (a.t) return *a.t;
    if (a.q) return *a.q / (*a.q - 1.0);
    throw UsageError(std::string(id) + " requires --t or --q");
  };
  BoundReport report;
  switch (*kind) {
    case BoundKind::PowerMoment:
      report = moment_bound_power(a.sigma, a.n, need(a.m, "--m", id), order_t(), need(a.info_pt, "--info-pt", id),
                                  *mode);
      break;
    case BoundKind::ChiSquareMoment:
      report = moment_bound_chi2(a.sigma, a.n, need(a.m, "--m", id), need(a.info_chi2, "--info-chi2", id), *mode);
      break;
    case BoundKind::ExpectedGen: {
      const double q = a.q ? *a.q : (a.t ? *a.t / (*a.t - 1.0) : throw UsageError("cor2 requires --q or --t"));
      report = expected_gen_bound(a.sigma, a.n, q, need(a.info_pt, "--info-pt", id), *mode);
      break;
    }
    case BoundKind::DensityRatioMoment:
      report = moment_bound_ratio(a.sigma, a.n, need(a.m, "--m", id), need(a.ratio, "--R", id), *mode);
      break;
    case BoundKind::MutualInfoSecondMoment:
      report = second_moment_bound_mi(a.sigma, a.n, need(a.mi, "--mi", id), *mode);
      break;
    case BoundKind::PowerHighProb:
      report = highprob_bound_power(a.sigma, a.n, order_t(), need(a.delta, "--delta", id),
                                    need(a.info_pt, "--info-pt", id), *mode);
      break;
    case BoundKind::RenyiHighProb:
      report = highprob_bound_renyi(a.sigma, a.n, need(a.alpha, "--alpha", id), need(a.delta, "--delta", id),
                                    need(a.d_alpha, "--d-alpha", id), *mode);
      break;
    case BoundKind::ChiSquareHighProb:
      report = highprob_bound_chi2(a.sigma, a.n, need(a.delta, "--delta", id), need(a.info_chi2, "--info-chi2", id),
                                   *mode);
      break;
    case BoundKind::HolderFunctional:
      throw UsageError("thm1 needs a model; use 'verify'");
  }
  return bound_report_to_json(report);
}

std::string run_experiment(const ExperimentArgs& a) {
  ExperimentConfig config;
  if (!a.config.empty()) config = experiment_config_from_json(read_text_file(a.config));
  if (!a.out_dir.empty()) config.out_dir = a.out_dir;
  return experiment_rows_to_json(run_gaussian_mean_experiment(config));
}

int run_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  VerificationConfig config;
  if (!a.config.empty()) config = verification_config_from_json(read_text_file(a.config));
  const auto report = run_verification_suite(config);
  emit(verification_report_to_json(report), a.out, out);
  if (report.passed()) return kExitOk;
  err << "verification failed: " << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) err << "  " << v.check << ": " << v.detail << '\n';
  return kExitVerificationFailed;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-theoretic bounds on generalization error moments", "genmom"};
  app.require_subcommand(1);

  DivergenceArgs div;
  auto* div_cmd = app.add_subcommand("divergence", "Divergence between two discrete distributions");
  div_cmd->add_option("--p", div.p, "JSON file with atoms and probs")->required()->check(CLI::ExistingFile);
  div_cmd->add_option("--q", div.q, "JSON file with atoms and probs")->required()->check(CLI::ExistingFile);
  div_cmd->add_option("--kind", div.kind)->required()->check(CLI::IsMember({"kl", "renyi", "power", "chi2"}));
  div_cmd->add_option("--order", div.order, "t for power, alpha for renyi");
  div_cmd->add_option("--out", div.out);

  InfoArgs info;
  auto* info_cmd = app.add_subcommand("info", "Information measures of a joint law");
  auto* joint_opt = info_cmd->add_option("--joint", info.joint, "dense joint JSON")->check(CLI::ExistingFile);
  info_cmd->add_option("--model", info.model, "model JSON")->check(CLI::ExistingFile)->excludes(joint_opt);
  info_cmd->add_option("--t", info.t, "power-information orders");
  info_cmd->add_option("--out", info.out);

  BoundArgs bnd;
  auto* bnd_cmd = app.add_subcommand("bounds", "Evaluate one bound");
  bnd_cmd->add_option("--theorem", bnd.theorem)
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "cor1", "cor2", "eq9", "thm3", "thm4", "eq12", "cor3"}));
  bnd_cmd->add_option("--sigma", bnd.sigma)->required();
  bnd_cmd->add_option("--n", bnd.n)->required();
  bnd_cmd->add_option("--m", bnd.m);
  bnd_cmd->add_option("--t", bnd.t);
  bnd_cmd->add_option("--q", bnd.q);
  bnd_cmd->add_option("--info-pt", bnd.info_pt);
  bnd_cmd->add_option("--info-chi2", bnd.info_chi2);
  bnd_cmd->add_option("--mi", bnd.mi);
  bnd_cmd->add_option("--R", bnd.ratio);
  bnd_cmd->add_option("--delta", bnd.delta);
  bnd_cmd->add_option("--alpha", bnd.alpha);
  bnd_cmd->add_option("--d-alpha", bnd.d_alpha);
  bnd_cmd->add_option("--mode", bnd.mode)->check(CLI::IsMember({"strict", "relaxed"}));
  bnd_cmd->add_option("--out", bnd.out);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment");
  exp_cmd->require_subcommand(1);
  auto* gm_cmd = exp_cmd->add_subcommand("gaussian-mean", "Gaussian mean estimation sweep");
  gm_cmd->add_option("--config", exp.config, "experiment config JSON")->check(CLI::ExistingFile);
  gm_cmd->add_option("--out-dir", exp.out_dir, "overrides out_dir in the config");
  gm_cmd->add_option("--out", exp.out, "write the JSON rows here");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Run the verification battery");
  ver_cmd->add_option("--config", ver.config, "verification config JSON")->check(CLI::ExistingFile);
  ver_cmd->add_option("--out", ver.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (div_cmd->parsed()) {
      emit(run_divergence(div), div.out, out);
    } else if (info_cmd->parsed()) {
      emit(run_info(info), info.out, out);
    } else if (bnd_cmd->parsed()) {
      emit(run_bounds(bnd), bnd.out, out);
    } else if (gm_cmd->parsed()) {
      emit(run_experiment(exp), exp.out, out);
    } else if (ver_cmd->parsed()) {
      return run_verify(ver, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace genmom::cli
