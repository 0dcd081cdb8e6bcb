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

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "genmom/io.hpp"
#include "json.hpp"

namespace genmom {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": invalid JSON (" + e.what() + ")");
  }
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected a JSON object");
}

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const char* what) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument(std::string(what) + ": unknown key '" + key + "'");
  }
}

template <class T>
T get_as(const json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw std::invalid_argument(std::string(what) + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": bad value for '" + key + "' (" + e.what() + ")");
  }
}

DiscreteDistribution distribution_from(const json& j, const char* what) {
  require_object(j, what);
  const auto atoms = get_as<std::vector<double>>(j, "atoms", what);
  const auto probs = get_as<std::vector<double>>(j, "probs", what);
  return make_discrete(atoms, probs);
}

LearningKernel kernel_from(const json& j, const LossSpec& loss) {
  constexpr const char* what = "model kernel";
  require_object(j, what);
  const auto type = get_as<std::string>(j, "type", what);
  if (type == "sample_mean") {
    reject_unknown_keys(j, {"type"}, what);
    return sample_mean_kernel();
  }
  if (type == "constant") {
    reject_unknown_keys(j, {"type", "value"}, what);
    return constant_kernel(get_as<double>(j, "value", what));
  }
  if (type == "noisy_mean") {
    reject_unknown_keys(j, {"type", "offsets", "probs"}, what);
    return noisy_mean_kernel(get_as<std::vector<double>>(j, "offsets", what),
                             get_as<std::vector<double>>(j, "probs", what));
  }
  if (type == "gibbs") {
    reject_unknown_keys(j, {"type", "grid", "inverse_temperature"}, what);
    return gibbs_kernel(get_as<std::vector<double>>(j, "grid", what), get_as<double>(j, "inverse_temperature", what),
                        loss.evaluate);
  }
  throw std::invalid_argument("model kernel: unknown type '" + type + "'");
}

LossSpec loss_from(const json& j) {
  constexpr const char* what = "model loss";
  require_object(j, what);
  reject_unknown_keys(j, {"type", "c"}, what);
  const auto type = get_as<std::string>(j, "type", what);
  if (type != "truncated_square") throw std::invalid_argument("model loss: unknown type '" + type + "'");
  return truncated_square_loss(get_as<double>(j, "c", what));
}

GaussianSpec gaussian_from(const json& j, const char* what) {
  require_object(j, what);
  reject_unknown_keys(j, {"mean", "variance"}, what);
  GaussianSpec g;
  if (j.contains("mean")) g.mean = get_as<double>(j, "mean", what);
  if (j.contains("variance")) g.variance = get_as<double>(j, "variance", what);
  g.validate();
  return g;
}

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

}  // namespace

std::string distribution_to_json(const DiscreteDistribution& d) {
  ordered_json j;
  j["atoms"] = std::vector<double>(d.atoms().begin(), d.atoms().end());
  j["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  return j.dump();
}

DiscreteDistribution distribution_from_json(std::string_view text) {
  const auto j = parse(text, "distribution");
  require_object(j, "distribution");
  reject_unknown_keys(j, {"atoms", "probs"}, "distribution");
  return distribution_from(j, "distribution");
}

std::string joint_to_json(const JointDistribution& jd) {
  ordered_json j;
  j["w_atoms"] = std::vector<double>(jd.w_atoms().begin(), jd.w_atoms().end());
  j["s_count"] = jd.s_count();
  j["mass"] = jd.to_dense();
  return j.dump();
}

JointDistribution joint_from_json(std::string_view text) {
  constexpr const char* what = "joint";
  const auto j = parse(text, what);
  require_object(j, what);
  reject_unknown_keys(j, {"w_atoms", "s_count", "mass"}, what);
  auto atoms = get_as<std::vector<double>>(j, "w_atoms", what);
  const auto mass = get_as<std::vector<std::vector<double>>>(j, "mass", what);
  if (j.contains("s_count")) {
    const auto s_count = get_as<std::size_t>(j, "s_count", what);
    for (const auto& row : mass) {
      if (row.size() != s_count) throw std::invalid_argument("joint: mass rows must have s_count entries");
    }
  }
  return JointDistribution::from_dense(std::move(atoms), mass);
}

ModelSpec model_from_json(std::string_view text) {
  constexpr const char* what = "model";
  const auto j = parse(text, what);
  require_object(j, what);
  reject_unknown_keys(j, {"data", "n", "kernel", "loss", "w_round_digits"}, what);
  ModelSpec spec;
  spec.model.loss = loss_from(j.contains("loss") ? j.at("loss") : json{{"type", "truncated_square"}, {"c", 2.0 / 3.0}});
  spec.model.n = get_as<int>(j, "n", what);
  if (!j.contains("data")) throw std::invalid_argument("model: missing key 'data'");
  const auto& data = j.at("data");
  require_object(data, "model data");
  if (data.contains("gaussian")) {
    reject_unknown_keys(data, {"gaussian", "quant_bins", "range_sigmas"}, "model data");
    const auto g = gaussian_from(data.at("gaussian"), "model data gaussian");
    const int bins = data.contains("quant_bins") ? get_as<int>(data, "quant_bins", "model data") : 7;
    const double range =
        data.contains("range_sigmas") ? get_as<double>(data, "range_sigmas", "model data") : kDefaultRangeSigmas;
    spec.model.data = g;
    spec.enumeration_data = quantize_gaussian(g, bins, range);
  } else {
    reject_unknown_keys(data, {"atoms", "probs"}, "model data");
    auto d = distribution_from(data, "model data");
    spec.enumeration_data = d;
    spec.model.data = std::move(d);
  }
  spec.model.kernel = kernel_from(j.contains("kernel") ? j.at("kernel") : json{{"type", "sample_mean"}}, spec.model.loss);
  if (j.contains("w_round_digits")) spec.w_round_digits = get_as<int>(j, "w_round_digits", what);
  spec.model.validate();
  return spec;
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
  constexpr const char* what = "experiment config";
  const auto j = parse(text, what);
  require_object(j, what);
  reject_unknown_keys(j,
                      {"gaussian", "c", "n_values", "moments", "quant_bins", "range_sigmas", "mc_replicates", "seed",
                       "validity_mode", "out_dir"},
                      what);
  ExperimentConfig c;
  if (j.contains("gaussian")) c.gaussian = gaussian_from(j.at("gaussian"), "experiment config gaussian");
  if (j.contains("c")) c.c = get_as<double>(j, "c", what);
  if (j.contains("n_values")) c.n_values = get_as<std::vector<int>>(j, "n_values", what);
  if (j.contains("moments")) c.moments = get_as<std::vector<int>>(j, "moments", what);
  if (j.contains("quant_bins")) c.quant_bins = get_as<int>(j, "quant_bins", what);
  if (j.contains("range_sigmas")) c.range_sigmas = get_as<double>(j, "range_sigmas", what);
  if (j.contains("mc_replicates")) c.mc_replicates = get_as<std::uint64_t>(j, "mc_replicates", what);
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed", what);
  if (j.contains("validity_mode")) {
    const auto mode = parse_validity_mode(get_as<std::string>(j, "validity_mode", what));
    if (!mode) throw std::invalid_argument("experiment config: validity_mode must be 'strict' or 'relaxed'");
    c.validity_mode = *mode;
  }
  if (j.contains("out_dir")) c.out_dir = get_as<std::string>(j, "out_dir", what);
  c.validate();
  return c;
}

std::string experiment_config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["gaussian"] = {{"mean", c.gaussian.mean}, {"variance", c.gaussian.variance}};
  j["c"] = c.c;
  j["n_values"] = c.n_values;
  j["moments"] = c.moments;
  j["quant_bins"] = c.quant_bins;
  j["range_sigmas"] = c.range_sigmas;
  j["mc_replicates"] = c.mc_replicates;
  j["seed"] = c.seed;
  j["validity_mode"] = std::string(to_string(c.validity_mode));
  j["out_dir"] = c.out_dir;
  return j.dump(2);
}

VerificationConfig verification_config_from_json(std::string_view text) {
  constexpr const char* what = "verification config";
  const auto j = parse(text, what);
  require_object(j, what);
  reject_unknown_keys(j,
                      {"seed", "models", "max_support", "max_n", "max_training_sets", "moments", "holder_orders",
                       "deltas", "tolerance", "chain_tolerance"},
                      what);
  VerificationConfig c;
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed", what);
  if (j.contains("models")) c.models = get_as<int>(j, "models", what);
  if (j.contains("max_support")) c.max_support = get_as<int>(j, "max_support", what);
  if (j.contains("max_n")) c.max_n = get_as<int>(j, "max_n", what);
  if (j.contains("max_training_sets")) c.max_training_sets = get_as<std::uint64_t>(j, "max_training_sets", what);
  if (j.contains("moments")) c.moments = get_as<std::vector<int>>(j, "moments", what);
  if (j.contains("holder_orders")) c.holder_orders = get_as<std::vector<double>>(j, "holder_orders", what);
  if (j.contains("deltas")) c.deltas = get_as<std::vector<double>>(j, "deltas", what);
  if (j.contains("tolerance")) c.tolerance = get_as<double>(j, "tolerance", what);
  if (j.contains("chain_tolerance")) c.chain_tolerance = get_as<double>(j, "chain_tolerance", what);
  return c;
}

std::string bound_report_to_json(const BoundReport& r) {
  ordered_json j;
  j["theorem"] = std::string(bound_id(r.kind));
  j["value"] = r.value;
  j["mode"] = std::string(to_string(r.mode));
  j["valid"] = r.valid();
  j["valid_strict"] = r.valid_in(ValidityMode::Strict);
  j["valid_relaxed"] = r.valid_in(ValidityMode::Relaxed);
  ordered_json p = ordered_json::object();
  const auto& bp = r.parameters;
  if (bp.m) p["m"] = *bp.m;
  if (bp.t) p["t"] = *bp.t;
  if (bp.q) p["q"] = *bp.q;
  if (bp.alpha) p["alpha"] = *bp.alpha;
  if (bp.n) p["n"] = *bp.n;
  if (bp.sigma) p["sigma"] = *bp.sigma;
  if (bp.delta) p["delta"] = *bp.delta;
  if (bp.info_value) p["info_value"] = *bp.info_value;
  if (bp.info_kind) p["info_kind"] = *bp.info_kind;
  if (bp.ratio) p["R"] = *bp.ratio;
  if (bp.beta) p["beta"] = *bp.beta;
  if (bp.best_order) p["m_star"] = *bp.best_order;
  j["parameters"] = p;
  ordered_json conds = ordered_json::array();
  for (const auto& c : r.conditions) {
    const char* scope = c.scope == ConditionScope::Both ? "both"
                        : c.scope == ConditionScope::StrictOnly ? "strict"
                                                                : "relaxed";
    conds.push_back({{"name", c.name}, {"satisfied", c.satisfied}, {"mode", scope}});
  }
  j["conditions"] = conds;
  return j.dump();
}

std::string verification_report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["passed"] = r.passed();
  j["models"] = r.models;
  j["checks"] = r.checks;
  j["checks_by_name"] = r.checks_by_name;
  ordered_json v = ordered_json::array();
  for (const auto& x : r.violations) v.push_back({{"check", x.check}, {"detail", x.detail}});
  j["violations"] = v;
  return j.dump(2);
}

std::string experiment_rows_to_json(const std::vector<ExperimentRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json o;
    o["n"] = r.n;
    o["m"] = r.m;
    o["true_moment"] = r.true_moment;
    o["true_stderr"] = r.true_stderr;
    o["exact_moment"] = optional_number(r.exact_moment);
    o["info_chi2"] = optional_number(r.info_chi2);
    o["info_mi"] = optional_number(r.info_mi);
    o["bound_chi2"] = optional_number(r.bound_chi2);
    o["bound_mi"] = optional_number(r.bound_mi);
    o["bound_expected"] = optional_number(r.bound_expected);
    o["valid_strict"] = r.valid_strict;
    o["valid_relaxed"] = r.valid_relaxed;
    arr.push_back(o);
  }
  return arr.dump(2);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace genmom
