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

#include "flipaudit/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "flipaudit/errors.hpp"
#include "json.hpp"

namespace flipaudit {

namespace {

using Json = nlohmann::ordered_json;

BandedMetric banded(std::string_view name, const MetricValue& value,
                    const ThresholdConfig& config) {
  return BandedMetric{value, classify(name, value, config)};
}

FlipSection make_flip_section(const FlipSummary& s, const ThresholdConfig& config) {
  FlipSection section;
  section.samples = s.n;
  section.n_flips = s.n_flips;
  section.n_favorable = s.n_favorable;
  section.n_unfavorable = s.n_unfavorable;
  section.flip_rate = banded("FR", s.flip_rate, config);
  section.hfp = banded("HFP", s.hfp, config);
  section.dfr = banded("DFR", s.dfr, config);
  return section;
}

// ---- text ------------------------------------------------------------------

class TextTable {
 public:
  void title(std::string_view text) {
    out_ += fmt::format("\n{}\n{}\n", text, std::string(text.size(), '-'));
  }
  void count(std::string_view label, std::size_t value) {
    out_ += fmt::format("{:<24}{}\n", label, value);
  }
  void metric(std::string_view label, const BandedMetric& m) {
    out_ += fmt::format("{:<24}{:<8}{:<24}{}\n", label, format_display(m.value),
                        to_string(m.value.annotation()), to_string(m.band));
  }
  void line(std::string_view text) {
    out_ += text;
    out_ += '\n';
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

std::string pass_fail(bool pass) { return pass ? "pass" : "fail"; }

void render_fairness(TextTable& table, std::string_view stage, const FairnessResult& f) {
  const auto interval =
      fmt::format("[{}, {}]", f.fair_interval.lower, f.fair_interval.upper);
  table.line(fmt::format("{:<24}{:<8.3f}{:<24}{}", fmt::format("SP difference ({})", stage),
                         f.sp_difference, interval, pass_fail(f.sp_pass)));
  if (f.eo_difference) {
    table.line(fmt::format("{:<24}{:<8.3f}{:<24}{}", fmt::format("EO difference ({})", stage),
                           *f.eo_difference, interval, pass_fail(f.eo_pass)));
  }
  if (f.eo_warning) table.line(fmt::format("  note: {}", *f.eo_warning));
}

// ---- structured ------------------------------------------------------------

Json metric_to_json(const BandedMetric& m) {
  Json j;
  if (m.value.is_infinite()) {
    j["kind"] = "inf";
    j["value"] = "inf";
  } else {
    j["kind"] = "finite";
    j["value"] = m.value.value();
  }
  j["display"] = format_display(m.value);
  j["annotation"] = std::string(to_string(m.value.annotation()));
  j["band"] = std::string(to_string(m.band));
  return j;
}

Json fairness_to_json(const std::optional<FairnessResult>& f) {
  if (!f) return Json(nullptr);
  Json j;
  j["sp_difference"] = f->sp_difference;
  j["sp_pass"] = f->sp_pass;
  j["eo_difference"] = f->eo_difference ? Json(*f->eo_difference) : Json(nullptr);
  j["eo_pass"] = f->eo_pass;
  j["eo_warning"] = f->eo_warning ? Json(*f->eo_warning) : Json(nullptr);
  j["fair_interval"] = Json::array({f->fair_interval.lower, f->fair_interval.upper});
  return j;
}

[[noreturn]] void malformed(const std::string& what) {
  throw IngestError(IngestErrorCode::kMalformedDocument,
                    fmt::format("malformed report document: {}", what));
}

BandedMetric metric_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const auto annotation = parse_annotation(j.at("annotation").get<std::string>());
  const auto band = parse_band(j.at("band").get<std::string>());
  if (!annotation) malformed("unknown annotation");
  if (!band) malformed("unknown band");
  if (kind == "inf") return BandedMetric{MetricValue::infinity(*annotation), *band};
  if (kind == "finite") {
    return BandedMetric{MetricValue::finite(j.at("value").get<double>(), *annotation), *band};
  }
  malformed(fmt::format("unknown metric kind '{}'", kind));
}

std::optional<FairnessResult> fairness_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  FairnessResult f;
  f.sp_difference = j.at("sp_difference").get<double>();
  f.sp_pass = j.at("sp_pass").get<bool>();
  if (!j.at("eo_difference").is_null()) f.eo_difference = j.at("eo_difference").get<double>();
  f.eo_pass = j.at("eo_pass").get<bool>();
  if (!j.at("eo_warning").is_null()) f.eo_warning = j.at("eo_warning").get<std::string>();
  const Json& interval = j.at("fair_interval");
  if (!interval.is_array() || interval.size() != 2) malformed("fair_interval");
  f.fair_interval = FairInterval{interval[0].get<double>(), interval[1].get<double>()};
  return f;
}

void flips_from_json(const Json& j, FlipSection& s) {
  s.n_flips = j.at("flips").get<std::size_t>();
  s.n_favorable = j.at("favorable_flips").get<std::size_t>();
  s.n_unfavorable = j.at("harmful_flips").get<std::size_t>();
  s.flip_rate = metric_from_json(j.at("flip_rate"));
  s.hfp = metric_from_json(j.at("hfp"));
  if (s.n_favorable + s.n_unfavorable != s.n_flips) malformed("flip counts do not add up");
}

Json flips_to_json(const FlipSection& s) {
  Json j;
  j["flips"] = s.n_flips;
  j["favorable_flips"] = s.n_favorable;
  j["harmful_flips"] = s.n_unfavorable;
  j["flip_rate"] = metric_to_json(s.flip_rate);
  j["hfp"] = metric_to_json(s.hfp);
  return j;
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kProportionate: return "Proportionate";
    case Verdict::kReviewRequired: return "ReviewRequired";
    case Verdict::kDisproportionate: return "Disproportionate";
  }
  return "Disproportionate";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::kProportionate, Verdict::kReviewRequired,
                    Verdict::kDisproportionate}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

Verdict verdict_for(Band worst_band) {
  switch (worst_band) {
    case Band::kAcceptable: return Verdict::kProportionate;
    case Band::kModerate: return Verdict::kReviewRequired;
    case Band::kDisproportionate: return Verdict::kDisproportionate;
  }
  return Verdict::kDisproportionate;
}

Band ProportionalityReport::worst_proportionality_band() const {
  Band band = Band::kAcceptable;
  for (const ProportionalitySection* s : {&flip_proportionality, &harmful_proportionality}) {
    for (const BandedMetric* m :
         {&s->difference, &s->disparity_index, &s->flip_disparity, &s->relative_disparity}) {
      band = worst(band, m->band);
    }
  }
  return band;
}

ProportionalityReport build_report(const AuditFrame& frame, const ThresholdConfig& config,
                                   const ReportFairness& fairness) {
  const FlipSummary overall = summarize_flips(frame);
  const auto [privileged, unprivileged] = split_by_group(frame);
  const ProportionalityMetrics m = compute_proportionality(overall, privileged, unprivileged);

  ProportionalityReport report;
  report.total_samples = frame.size();
  report.overall = make_flip_section(overall, config);
  report.groups[kUnprivileged] = make_flip_section(unprivileged.summary, config);
  report.groups[kPrivileged] = make_flip_section(privileged.summary, config);

  report.flip_proportionality = {banded("FRD", m.frd, config), banded("DI", m.di, config),
                                 banded("FD", m.fd, config), banded("RFD", m.rfd, config)};
  report.harmful_proportionality = {banded("HFPD", m.hfpd, config),
                                    banded("HDI", m.hdi, config), banded("HFD", m.hfd, config),
                                    banded("RHFD", m.rhfd, config)};
  report.fairness_pre = fairness.pre;
  report.fairness_post = fairness.post;
  report.verdict = verdict_for(report.worst_proportionality_band());
  return report;
}

std::string format_display(const MetricValue& value) {
  if (value.is_infinite()) return "∞";
  const double v = value.value();
  if (v == std::trunc(v) && std::abs(v) < 1e15) return fmt::format("{:.1f}", v);
  if (std::abs(v) >= 0.1) return fmt::format("{:.2f}", v);
  return fmt::format("{:.3f}", v);
}

std::string render_text(const ProportionalityReport& r) {
  TextTable t;
  t.line("Proportionality report");
  t.line(fmt::format("{:<24}{:<8}{:<24}{}", "Metric", "Result", "Short analysis", "Band"));

  t.title("Dataset information");
  t.count("Total samples", r.total_samples);
  t.count("Group 0 samples", r.groups[0].samples);
  t.count("Group 1 samples", r.groups[1].samples);

  t.title("Overall Metrics");
  t.count("Total flips", r.overall.n_flips);
  t.metric("FR", r.overall.flip_rate);
  t.count("Harmful flips", r.overall.n_unfavorable);
  t.metric("HFP", r.overall.hfp);

  t.title("Flips by Groups");
  for (int g = 0; g < 2; ++g) {
    const FlipSection& s = r.groups[g];
    t.count(fmt::format("Group {} Flips", g), s.n_flips);
    t.metric(fmt::format("Group {} FR", g), s.flip_rate);
    t.count(fmt::format("Group {} Harmful flips", g), s.n_unfavorable);
    t.metric(fmt::format("Group {} HFP", g), s.hfp);
  }

  t.title("Directional flip ratio");
  t.metric("DFR", r.overall.dfr);
  t.metric("Group 0 DFR", r.groups[0].dfr);
  t.metric("Group 1 DFR", r.groups[1].dfr);

  t.title("Flip Proportionality Metrics");
  t.metric("FRD", r.flip_proportionality.difference);
  t.metric("DI", r.flip_proportionality.disparity_index);
  t.metric("FD", r.flip_proportionality.flip_disparity);
  t.metric("RFD", r.flip_proportionality.relative_disparity);

  t.title("Harmful Flip Proportionality Metrics");
  t.metric("HFPD", r.harmful_proportionality.difference);
  t.metric("HDI", r.harmful_proportionality.disparity_index);
  t.metric("HFD", r.harmful_proportionality.flip_disparity);
  t.metric("RHFD", r.harmful_proportionality.relative_disparity);

  if (r.fairness_pre || r.fairness_post) {
    t.title("Fairness gates");
    if (r.fairness_pre) render_fairness(t, "pre", *r.fairness_pre);
    if (r.fairness_post) render_fairness(t, "post", *r.fairness_post);
  }

  t.line("");
  t.line(fmt::format("Verdict: {}", to_string(r.verdict)));
  t.line("Aliases: HFPD = HFRD, RFD = NFD, RHFD = NHFD. Group 1 is privileged (S = 1).");
  return t.take();
}

std::string render_structured(const ProportionalityReport& r) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["dataset"] = {{"total_samples", r.total_samples},
                  {"group_0_samples", r.groups[0].samples},
                  {"group_1_samples", r.groups[1].samples}};
  j["overall"] = flips_to_json(r.overall);
  Json groups = Json::array();
  for (int g = 0; g < 2; ++g) {
    Json entry;
    entry["group"] = g;
    entry["samples"] = r.groups[g].samples;
    entry.update(flips_to_json(r.groups[g]));
    groups.push_back(std::move(entry));
  }
  j["groups"] = std::move(groups);
  j["directional"] = {{"dfr", metric_to_json(r.overall.dfr)},
                      {"group_0_dfr", metric_to_json(r.groups[0].dfr)},
                      {"group_1_dfr", metric_to_json(r.groups[1].dfr)}};
  const auto& fp = r.flip_proportionality;
  j["flip_proportionality"] = {{"frd", metric_to_json(fp.difference)},
                               {"di", metric_to_json(fp.disparity_index)},
                               {"fd", metric_to_json(fp.flip_disparity)},
                               {"rfd", metric_to_json(fp.relative_disparity)}};
  const auto& hp = r.harmful_proportionality;
  j["harmful_flip_proportionality"] = {{"hfpd", metric_to_json(hp.difference)},
                                       {"hdi", metric_to_json(hp.disparity_index)},
                                       {"hfd", metric_to_json(hp.flip_disparity)},
                                       {"rhfd", metric_to_json(hp.relative_disparity)}};
  j["fairness"] = {{"pre", fairness_to_json(r.fairness_pre)},
                   {"post", fairness_to_json(r.fairness_post)}};
  j["verdict"] = std::string(to_string(r.verdict));
  return j.dump(2) + "\n";
}

ProportionalityReport parse_structured(std::string_view document) {
  Json j;
  try {
    j = Json::parse(document);
  } catch (const Json::parse_error& e) {
    malformed(e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      malformed("unsupported schema_version");
    }
    ProportionalityReport r;
    const Json& dataset = j.at("dataset");
    r.total_samples = dataset.at("total_samples").get<std::size_t>();
    r.overall.samples = r.total_samples;
    flips_from_json(j.at("overall"), r.overall);

    const Json& groups = j.at("groups");
    if (!groups.is_array() || groups.size() != 2) malformed("groups must have two entries");
    for (const Json& entry : groups) {
      const int g = entry.at("group").get<int>();
      if (g != 0 && g != 1) malformed("group must be 0 or 1");
      r.groups[g].samples = entry.at("samples").get<std::size_t>();
      flips_from_json(entry, r.groups[g]);
    }
    if (r.groups[0].samples != dataset.at("group_0_samples").get<std::size_t>() ||
        r.groups[1].samples != dataset.at("group_1_samples").get<std::size_t>()) {
      malformed("group sample counts disagree with dataset section");
    }

    const Json& dir = j.at("directional");
    r.overall.dfr = metric_from_json(dir.at("dfr"));
    r.groups[0].dfr = metric_from_json(dir.at("group_0_dfr"));
    r.groups[1].dfr = metric_from_json(dir.at("group_1_dfr"));

    const Json& fp = j.at("flip_proportionality");
    r.flip_proportionality = {metric_from_json(fp.at("frd")), metric_from_json(fp.at("di")),
                              metric_from_json(fp.at("fd")), metric_from_json(fp.at("rfd"))};
    const Json& hp = j.at("harmful_flip_proportionality");
    r.harmful_proportionality = {
        metric_from_json(hp.at("hfpd")), metric_from_json(hp.at("hdi")),
        metric_from_json(hp.at("hfd")), metric_from_json(hp.at("rhfd"))};

    const Json& fairness = j.at("fairness");
    r.fairness_pre = fairness_from_json(fairness.at("pre"));
    r.fairness_post = fairness_from_json(fairness.at("post"));

    const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (!verdict) malformed("unknown verdict");
    r.verdict = *verdict;
    return r;
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace flipaudit
