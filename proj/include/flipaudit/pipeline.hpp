/*
 * Copyright 2026 The flipaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef FLIPAUDIT_PIPELINE_HPP_
#define FLIPAUDIT_PIPELINE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flipaudit/errors.hpp"
#include "flipaudit/fairness_gates.hpp"
#include "flipaudit/flip_core.hpp"
#include "flipaudit/report.hpp"
#include "flipaudit/thresholds.hpp"

namespace flipaudit {

// ---- scenarios ---------------------------------------------------------------

struct GroupScenario {
  std::size_t size = 0;
  /// Instances predicted 1 before the intervention.
  std::size_t positive_predictions = 0;
  /// 0 -> 1 flips; drawn from the predicted negatives.
  std::size_t favorable_flips = 0;
  /// 1 -> 0 flips; drawn from the predicted positives.
  std::size_t unfavorable_flips = 0;
  /// With fabricated truth: this many corrected positives get y_true = 0 and
  /// as many corrected negatives get y_true = 1.
  std::size_t true_mismatch = 0;

  friend bool operator==(const GroupScenario&, const GroupScenario&) = default;
};

struct ScenarioSpec {
  /// Indexed by group value.
  std::array<GroupScenario, 2> groups;
  std::uint64_t seed = 0;
  /// Fabricate y_true from the corrected labels plus `true_mismatch` noise.
  bool with_truth = false;

  /// Throws ValidationError naming the violated count relation.
  void validate() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// The built-in "paper-example" scenario: 1320 instances split 799 / 521,
/// group 0 receives 136 harmful flips, group 1 receives 38 favorable flips.
/// Positive-prediction counts and the fabricated ground truth are chosen so
/// that the predictions fail the SP gate and the corrected labels pass
/// both SP and EO.
ScenarioSpec paper_example_scenario();

/// Instance order is a seeded permutation; identical specs give identical
/// frames on every platform.
AuditFrame generate_scenario(const ScenarioSpec& spec);

/// Flat key-value format: seed, with_truth, group<g>.size,
/// group<g>.positive_predictions, group<g>.favorable_flips,
/// group<g>.unfavorable_flips, group<g>.true_mismatch.
ScenarioSpec parse_scenario(std::istream& in, std::string_view source);
ScenarioSpec load_scenario(const std::string& name_or_path);
std::string serialize_scenario(const ScenarioSpec& spec);

/// Deterministic Fisher-Yates permutation of [0, n) driven by mt19937_64.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

// ---- reference debiaser ------------------------------------------------------

class DebiasError : public ValidationError {
 public:
  DebiasError(const std::string& message, double best_gap)
      : ValidationError(message), best_gap_(best_gap) {}
  double best_gap() const { return best_gap_; }

 private:
  double best_gap_;
};

/// Net label change per group chosen by the SP equalizer. Positive values
/// are 0 -> 1 flips, negative values 1 -> 0 flips.
struct ParityAdjustment {
  long long delta_unprivileged = 0;
  long long delta_privileged = 0;

  std::size_t flips() const;
};

/// Minimum-flip per-group adjustment bringing |SP| <= epsilon. Among
/// minimal solutions, prefers ones that only raise the under-favored group
/// and lower the over-favored one, then the most even split between the two.
ParityAdjustment plan_parity_adjustment(std::size_t positives_unpriv, std::size_t size_unpriv,
                                        std::size_t positives_priv, std::size_t size_priv,
                                        double epsilon);

/// Flips the fewest predicted labels needed for |SP difference| <= epsilon.
/// Which instances flip inside a group is decided by a seeded shuffle.
std::vector<Label> sp_equalizing_debiaser(const AuditFrame& frame, double epsilon,
                                          std::uint64_t seed);

// ---- methodology loop --------------------------------------------------------

enum class Decision {
  kFairAndProportionate,
  kFairButDisproportionate,
  kStillUnfair,
  kNoDebiasNeeded,
};

std::string_view to_string(Decision decision);

/// Produces corrected labels for the frame's predictions.
using Debiaser = std::function<std::vector<Label>(const AuditFrame&)>;

struct PipelineOutcome {
  FairnessResult pre_fairness;
  std::optional<FairnessResult> post_fairness;
  /// Empty when the first gate passed and no intervention ran.
  std::optional<std::vector<Label>> corrected;
  ProportionalityReport report;
  Decision decision = Decision::kNoDebiasNeeded;
};

/// Raised when the debiaser fails; carries the completed first gate.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& message, FairnessResult pre)
      : std::runtime_error(message), pre_(std::move(pre)) {}
  const FairnessResult& pre_fairness() const { return pre_; }

 private:
  FairnessResult pre_;
};

/// Gate on predictions, debias, gate again, audit proportionality. The
/// frame's corrected labels are ignored; the gates use EO as well as SP
/// when the frame carries y_true.
PipelineOutcome run_audit_pipeline(const AuditFrame& frame, const Debiaser& debiaser,
                                   const ThresholdConfig& config,
                                   const FairInterval& interval = {});

/// CLI exit status: 0 proportionate / fair, 2 review required,
/// 3 disproportionate or still unfair.
int exit_code_for(Verdict verdict);
int exit_code_for(const PipelineOutcome& outcome);

}  // namespace flipaudit

#endif  // FLIPAUDIT_PIPELINE_HPP_
