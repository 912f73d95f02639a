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

#include "flipaudit/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <tuple>

#include <fmt/format.h>

#include "flipaudit/kv_file.hpp"

namespace flipaudit {

// ---- scenarios ---------------------------------------------------------------

namespace {

struct Instance {
  Label predicted;
  Label corrected;
  Label truth;
  Label group;
};

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

void append_group(const GroupScenario& s, Label g, std::vector<Instance>& out) {
  const std::size_t kept_pos = s.positive_predictions - s.unfavorable_flips;
  const std::size_t negatives = s.size - s.positive_predictions;
  const std::size_t kept_neg = negatives - s.favorable_flips;

  // Block order: unflipped positives, favorable flips, unflipped negatives,
  // harmful flips. Mismatched truth is taken from the front of the
  // corrected-positive run and the front of the corrected-negative run.
  std::vector<Instance> block;
  block.reserve(s.size);
  for (std::size_t i = 0; i < kept_pos; ++i) block.push_back({1, 1, 1, g});
  for (std::size_t i = 0; i < s.favorable_flips; ++i) block.push_back({0, 1, 1, g});
  for (std::size_t i = 0; i < kept_neg; ++i) block.push_back({0, 0, 0, g});
  for (std::size_t i = 0; i < s.unfavorable_flips; ++i) block.push_back({1, 0, 0, g});

  const std::size_t corrected_pos = kept_pos + s.favorable_flips;
  for (std::size_t i = 0; i < s.true_mismatch; ++i) {
    block[i].truth = 0;
    block[corrected_pos + i].truth = 1;
  }
  out.insert(out.end(), block.begin(), block.end());
}

std::size_t to_count(const KvEntry& kv, std::string_view source) {
  const long long v = parse_integer(kv.value, fmt::format("{}:{}", source, kv.line));
  if (v < 0) {
    throw ConfigError(fmt::format("{}:{}: {} must be nonnegative", source, kv.line, kv.key));
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

void ScenarioSpec::validate() const {
  for (int g = 0; g < 2; ++g) {
    const GroupScenario& s = groups[g];
    if (s.size == 0) throw ValidationError(fmt::format("group {}: size must be positive", g));
    if (s.positive_predictions > s.size) {
      throw ValidationError(fmt::format(
          "group {}: positive_predictions ({}) exceeds size ({})", g, s.positive_predictions,
          s.size));
    }
    if (s.unfavorable_flips > s.positive_predictions) {
      throw ValidationError(fmt::format(
          "group {}: unfavorable_flips ({}) exceeds positive_predictions ({}); a harmful "
          "flip needs a predicted 1",
          g, s.unfavorable_flips, s.positive_predictions));
    }
    if (s.favorable_flips > s.size - s.positive_predictions) {
      throw ValidationError(fmt::format(
          "group {}: favorable_flips ({}) exceeds predicted negatives ({}); a favorable "
          "flip needs a predicted 0",
          g, s.favorable_flips, s.size - s.positive_predictions));
    }
    if (s.true_mismatch > 0) {
      if (!with_truth) {
        throw ValidationError(fmt::format("group {}: true_mismatch requires with_truth", g));
      }
      const std::size_t corrected_pos =
          s.positive_predictions - s.unfavorable_flips + s.favorable_flips;
      const std::size_t corrected_neg = s.size - corrected_pos;
      if (s.true_mismatch > std::min(corrected_pos, corrected_neg)) {
        throw ValidationError(fmt::format(
            "group {}: true_mismatch ({}) exceeds corrected positives ({}) or negatives ({})",
            g, s.true_mismatch, corrected_pos, corrected_neg));
      }
    }
  }
}

ScenarioSpec paper_example_scenario() {
  ScenarioSpec spec;
  spec.seed = 1320;
  spec.with_truth = true;
  spec.groups[0] = GroupScenario{799, 480, 0, 136, 34};
  spec.groups[1] = GroupScenario{521, 186, 38, 0, 22};
  return spec;
}

AuditFrame generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  std::vector<Instance> instances;
  instances.reserve(spec.groups[0].size + spec.groups[1].size);
  append_group(spec.groups[0], 0, instances);
  append_group(spec.groups[1], 1, instances);

  const auto perm = seeded_permutation(instances.size(), spec.seed);
  std::vector<Label> pred(instances.size()), corr(instances.size()),
      group(instances.size()), truth(instances.size());
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const Instance& x = instances[perm[i]];
    pred[i] = x.predicted;
    corr[i] = x.corrected;
    group[i] = x.group;
    truth[i] = x.truth;
  }
  std::optional<std::vector<Label>> y_true;
  if (spec.with_truth) y_true = std::move(truth);
  return AuditFrame(std::move(pred), std::move(corr), std::move(group), std::move(y_true));
}

ScenarioSpec parse_scenario(std::istream& in, std::string_view source) {
  ScenarioSpec spec;
  bool have_size[2] = {false, false};
  for (const KvEntry& kv : parse_kv(in, source)) {
    if (kv.key == "seed") {
      spec.seed = parse_unsigned(kv.value, fmt::format("{}:{}", source, kv.line));
      continue;
    }
    if (kv.key == "with_truth") {
      if (kv.value == "true") {
        spec.with_truth = true;
      } else if (kv.value == "false") {
        spec.with_truth = false;
      } else {
        throw ConfigError(
            fmt::format("{}:{}: with_truth must be true or false", source, kv.line));
      }
      continue;
    }
    const std::string_view key = kv.key;
    int g = -1;
    if (key.starts_with("group0.")) g = 0;
    if (key.starts_with("group1.")) g = 1;
    if (g < 0) throw ConfigError(fmt::format("{}:{}: unknown key '{}'", source, kv.line, key));
    const std::string_view field = key.substr(7);
    GroupScenario& s = spec.groups[g];
    if (field == "size") {
      s.size = to_count(kv, source);
      have_size[g] = true;
    } else if (field == "positive_predictions") {
      s.positive_predictions = to_count(kv, source);
    } else if (field == "favorable_flips") {
      s.favorable_flips = to_count(kv, source);
    } else if (field == "unfavorable_flips") {
      s.unfavorable_flips = to_count(kv, source);
    } else if (field == "true_mismatch") {
      s.true_mismatch = to_count(kv, source);
    } else {
      throw ConfigError(fmt::format("{}:{}: unknown key '{}'", source, kv.line, key));
    }
  }
  for (int g = 0; g < 2; ++g) {
    if (!have_size[g]) throw ConfigError(fmt::format("{}: missing group{}.size", source, g));
  }
  spec.validate();
  return spec;
}

ScenarioSpec load_scenario(const std::string& name_or_path) {
  if (name_or_path == "paper-example") return paper_example_scenario();
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError(fmt::format("unknown scenario or unreadable file '{}'", name_or_path));
  return parse_scenario(in, name_or_path);
}

std::string serialize_scenario(const ScenarioSpec& spec) {
  std::string out;
  out += fmt::format("seed = {}\n", spec.seed);
  out += fmt::format("with_truth = {}\n", spec.with_truth ? "true" : "false");
  for (int g = 0; g < 2; ++g) {
    const GroupScenario& s = spec.groups[g];
    out += fmt::format("group{}.size = {}\n", g, s.size);
    out += fmt::format("group{}.positive_predictions = {}\n", g, s.positive_predictions);
    out += fmt::format("group{}.favorable_flips = {}\n", g, s.favorable_flips);
    out += fmt::format("group{}.unfavorable_flips = {}\n", g, s.unfavorable_flips);
    out += fmt::format("group{}.true_mismatch = {}\n", g, s.true_mismatch);
  }
  return out;
}

// ---- reference debiaser ------------------------------------------------------

std::size_t ParityAdjustment::flips() const {
  return static_cast<std::size_t>(std::llabs(delta_unprivileged) + std::llabs(delta_privileged));
}

ParityAdjustment plan_parity_adjustment(std::size_t positives_unpriv, std::size_t size_unpriv,
                                        std::size_t positives_priv, std::size_t size_priv,
                                        double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  if (size_unpriv == 0 || size_priv == 0) {
    throw ValidationError("SP equalizer needs both groups");
  }
  const auto pu = static_cast<long long>(positives_unpriv);
  const auto nu = static_cast<long long>(size_unpriv);
  const auto pp = static_cast<long long>(positives_priv);
  const auto np = static_cast<long long>(size_priv);
  const double initial = parity_gap(positives_unpriv, size_unpriv, positives_priv, size_priv);

  auto gap_after = [&](long long du, long long dp) {
    return parity_gap(static_cast<std::size_t>(pu + du), size_unpriv,
                      static_cast<std::size_t>(pp + dp), size_priv);
  };
  // Direction-consistent: raise only the under-favored group, lower only
  // the over-favored one.
  auto directional = [&](long long du, long long dp) {
    return initial < 0.0 ? (du >= 0 && dp <= 0) : (du <= 0 && dp >= 0);
  };
  auto rank = [&](long long du, long long dp) {
    const long long raised = std::max(du, 0LL) + std::max(dp, 0LL);
    const long long lowered = std::max(-du, 0LL) + std::max(-dp, 0LL);
    return std::make_tuple(raised + lowered, directional(du, dp) ? 0 : 1,
                           std::llabs(raised - lowered), -raised);
  };

  std::optional<ParityAdjustment> best;
  double closest = std::abs(initial);
  for (long long du = -pu; du <= nu - pu; ++du) {
    // Feasible privileged changes form an interval around the value that
    // matches the unprivileged rate; the best one is the point of that
    // interval nearest zero. Rounding can shift the float estimate by one.
    const double rate_u = static_cast<double>(pu + du) / static_cast<double>(nu);
    const double lo_est = std::ceil((rate_u - epsilon) * static_cast<double>(np)) - pp;
    const double hi_est = std::floor((rate_u + epsilon) * static_cast<double>(np)) - pp;
    const double domain_lo = static_cast<double>(-pp);
    const double domain_hi = static_cast<double>(np - pp);
    std::vector<long long> candidates = {0};
    for (double base : {lo_est, hi_est}) {
      for (double off : {-1.0, 0.0, 1.0}) {
        candidates.push_back(
            static_cast<long long>(std::clamp(base + off, domain_lo, domain_hi)));
      }
    }
    for (long long dp : candidates) {
      if (dp < -pp || dp > np - pp) continue;
      const double g = std::abs(gap_after(du, dp));
      closest = std::min(closest, g);
      if (g > epsilon) continue;
      if (!best || rank(du, dp) < rank(best->delta_unprivileged, best->delta_privileged)) {
        best = ParityAdjustment{du, dp};
      }
    }
  }
  if (!best) {
    throw DebiasError(
        fmt::format("|SP| <= {} is unreachable; best achievable gap is {}", epsilon, closest),
        closest);
  }
  return *best;
}

std::vector<Label> sp_equalizing_debiaser(const AuditFrame& frame, double epsilon,
                                          std::uint64_t seed) {
  const auto pred = frame.y_predicted();
  const auto group = frame.group();
  std::size_t size[2] = {0, 0};
  std::size_t positives[2] = {0, 0};
  for (std::size_t i = 0; i < frame.size(); ++i) {
    ++size[group[i]];
    positives[group[i]] += pred[i];
  }
  const ParityAdjustment plan =
      plan_parity_adjustment(positives[0], size[0], positives[1], size[1], epsilon);

  std::vector<Label> corrected(pred.begin(), pred.end());
  const long long deltas[2] = {plan.delta_unprivileged, plan.delta_privileged};
  for (Label g : {kUnprivileged, kPrivileged}) {
    const long long delta = deltas[g];
    if (delta == 0) continue;
    const Label from = delta > 0 ? 0 : 1;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < frame.size(); ++i) {
      if (group[i] == g && pred[i] == from) candidates.push_back(i);
    }
    const auto order = seeded_permutation(candidates.size(), seed + 0x9e3779b97f4a7c15ULL * (g + 1));
    const auto count = static_cast<std::size_t>(std::llabs(delta));
    for (std::size_t k = 0; k < count; ++k) {
      corrected[candidates[order[k]]] = static_cast<Label>(1 - from);
    }
  }
  return corrected;
}

// ---- methodology loop --------------------------------------------------------

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::kFairAndProportionate: return "FairAndProportionate";
    case Decision::kFairButDisproportionate: return "FairButDisproportionate";
    case Decision::kStillUnfair: return "StillUnfair";
    case Decision::kNoDebiasNeeded: return "NoDebiasNeeded";
  }
  return "StillUnfair";
}

PipelineOutcome run_audit_pipeline(const AuditFrame& frame, const Debiaser& debiaser,
                                   const ThresholdConfig& config, const FairInterval& interval) {
  std::optional<std::span<const Label>> truth;
  std::optional<std::vector<Label>> truth_copy;
  if (frame.has_y_true()) {
    truth = frame.y_true();
    truth_copy.emplace(truth->begin(), truth->end());
  }
  const auto pred = frame.y_predicted();
  const auto group = frame.group();

  PipelineOutcome outcome;
  outcome.pre_fairness = evaluate_fairness(pred, group, truth, interval);

  if (outcome.pre_fairness.passes()) {
    const AuditFrame identity = AuditFrame::from_predictions(
        {pred.begin(), pred.end()}, {group.begin(), group.end()}, truth_copy);
    outcome.report = build_report(identity, config, {outcome.pre_fairness, std::nullopt});
    outcome.decision = Decision::kNoDebiasNeeded;
    return outcome;
  }

  std::optional<AuditFrame> audited;
  try {
    audited = frame.with_corrected(debiaser(frame));
  } catch (const std::exception& e) {
    throw PipelineError(fmt::format("debiasing failed: {}", e.what()), outcome.pre_fairness);
  }
  const auto corrected = audited->y_corrected();
  outcome.corrected.emplace(corrected.begin(), corrected.end());
  outcome.post_fairness = evaluate_fairness(corrected, group, truth, interval);
  outcome.report = build_report(*audited, config, {outcome.pre_fairness, outcome.post_fairness});

  if (!outcome.post_fairness->passes()) {
    outcome.decision = Decision::kStillUnfair;
  } else if (outcome.report.verdict == Verdict::kProportionate) {
    outcome.decision = Decision::kFairAndProportionate;
  } else {
    outcome.decision = Decision::kFairButDisproportionate;
  }
  return outcome;
}

int exit_code_for(Verdict verdict) {
  switch (verdict) {
    case Verdict::kProportionate: return 0;
    case Verdict::kReviewRequired: return 2;
    case Verdict::kDisproportionate: return 3;
  }
  return 3;
}

int exit_code_for(const PipelineOutcome& outcome) {
  switch (outcome.decision) {
    case Decision::kNoDebiasNeeded:
    case Decision::kFairAndProportionate: return 0;
    case Decision::kStillUnfair: return 3;
    case Decision::kFairButDisproportionate: return exit_code_for(outcome.report.verdict);
  }
  return 3;
}

}  // namespace flipaudit
