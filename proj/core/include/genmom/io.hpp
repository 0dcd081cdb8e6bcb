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

#ifndef GENMOM_IO_HPP
#define GENMOM_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "genmom/bounds.hpp"
#include "genmom/distributions.hpp"
#include "genmom/experiments.hpp"
#include "genmom/information.hpp"
#include "genmom/risk.hpp"
#include "genmom/verification.hpp"

namespace genmom {

// JSON parse errors and schema violations throw std::invalid_argument.

/// {"atoms":[...],"probs":[...]}
[[nodiscard]] std::string distribution_to_json(const DiscreteDistribution& d);
[[nodiscard]] DiscreteDistribution distribution_from_json(std::string_view text);

/// {"w_atoms":[...],"s_count":N,"mass":[[...]]}, rows = w.
[[nodiscard]] std::string joint_to_json(const JointDistribution& j);
[[nodiscard]] JointDistribution joint_from_json(std::string_view text);

/// A model file. Gaussian data is quantized for the enumeration engine;
/// discrete data is enumerated as given.
struct ModelSpec {
  LearningModel model;
  DiscreteDistribution enumeration_data = DiscreteDistribution::point_mass(0.0);
  int w_round_digits = kDefaultWRoundDigits;
};

/// {"data": {"atoms":..,"probs":..} | {"gaussian":{"mean":..,"variance":..},
///  "quant_bins":K, "range_sigmas":r}, "n":N,
///  "kernel": {"type":"sample_mean"|"constant"|"noisy_mean"|"gibbs", ...},
///  "loss": {"type":"truncated_square","c":c}, "w_round_digits":10}
[[nodiscard]] ModelSpec model_from_json(std::string_view text);

/// Keys are exactly the ExperimentConfig field names; unknown keys throw.
[[nodiscard]] ExperimentConfig experiment_config_from_json(std::string_view text);
[[nodiscard]] std::string experiment_config_to_json(const ExperimentConfig& config);
[[nodiscard]] VerificationConfig verification_config_from_json(std::string_view text);

[[nodiscard]] std::string bound_report_to_json(const BoundReport& report);
[[nodiscard]] std::string verification_report_to_json(const VerificationReport& report);
[[nodiscard]] std::string experiment_rows_to_json(const std::vector<ExperimentRow>& rows);

inline constexpr std::string_view kExperimentCsvHeader =
    "n,m,true_moment,true_stderr,exact_moment,info_chi2,info_mi,bound_chi2,bound_mi,bound_expected,"
    "valid_strict,valid_relaxed";

/// Rows sorted by (m, n), 10 significant digits, empty fields for missing
/// values.
[[nodiscard]] std::string experiment_rows_to_csv(const std::vector<ExperimentRow>& rows);
[[nodiscard]] std::vector<ExperimentRow> experiment_rows_from_csv(std::string_view text);
void emit_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path);

/// One SVG per moment order, named gen_moment_m{m}.svg. Returns the paths.
std::vector<std::filesystem::path> emit_svg_plots(const std::vector<ExperimentRow>& rows,
                                                  const std::filesystem::path& out_dir);
/// The SVG document for order m (exposed for tests).
[[nodiscard]] std::string render_svg_plot(const std::vector<ExperimentRow>& rows, int m);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace genmom

#endif  // GENMOM_IO_HPP
