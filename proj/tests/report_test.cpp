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

#include <random>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "flipaudit/errors.hpp"
#include "flipaudit/pipeline.hpp"
#include "flipaudit/report.hpp"
#include "json.hpp"
#include "support/helpers.hpp"
#include "support/oracle.hpp"

using namespace flipaudit;

namespace {

std::string collapse(const std::string& text) {
  return std::regex_replace(text, std::regex("[ \t]+"), " ");
}

ProportionalityReport example_report() {
  return build_report(generate_scenario(paper_example_scenario()), ThresholdConfig::defaults());
}

TEST(FormatDisplay, DisplayRounding) {
  auto f = [](double v) { return format_display(MetricValue::finite(v)); };
  EXPECT_EQ(f(174.0 / 1320), "0.13");
  EXPECT_EQ(f(38.0 / 521), "0.073");
  EXPECT_EQ(f(136.0 / 799 - 38.0 / 521), "0.097");
  EXPECT_EQ(f(1.0), "1.0");
  EXPECT_EQ(f(0.0), "0.0");
  EXPECT_EQ(f(0.4), "0.40");
  EXPECT_EQ(format_display(MetricValue::infinity(Annotation::kOneValueIsZero)), "∞");
}

TEST(BuildReport, ReferenceExampleSectionsAndVerdict) {
  const auto r = example_report();
  EXPECT_EQ(r.total_samples, 1320u);
  EXPECT_EQ(r.groups[0].samples, 799u);
  EXPECT_EQ(r.groups[1].samples, 521u);
  EXPECT_EQ(r.overall.n_flips, 174u);
  EXPECT_EQ(r.groups[0].dfr.value, MetricValue::finite(0.0, Annotation::kOnlyHarmfulFlips));
  EXPECT_EQ(r.groups[1].dfr.value, MetricValue::infinity(Annotation::kOnlyBeneficialFlips));
  EXPECT_EQ(r.harmful_proportionality.disparity_index.band, Band::kDisproportionate);
  EXPECT_EQ(r.flip_proportionality.difference.band, Band::kModerate);
  EXPECT_EQ(r.verdict, Verdict::kDisproportionate);
}

TEST(BuildReport, IdentityFrameIsProportionate) {
  const auto frame = AuditFrame::from_predictions({1, 0, 1, 0, 1}, {0, 0, 1, 1, 1});
  const auto r = build_report(frame, ThresholdConfig::defaults());
  EXPECT_EQ(r.overall.n_flips, 0u);
  EXPECT_EQ(r.verdict, Verdict::kProportionate);
  EXPECT_EQ(r.flip_proportionality.disparity_index.value,
            MetricValue::finite(1.0, Annotation::kBothValuesAreZero));
  // FD reports 1 by convention but grades as no gap.
  EXPECT_EQ(r.flip_proportionality.flip_disparity.value,
            MetricValue::finite(1.0, Annotation::kBothValuesAreZero));
  EXPECT_EQ(r.flip_proportionality.flip_disparity.band, Band::kAcceptable);
}

TEST(BuildReport, OneGroupAllHarmful) {
  // Group 0: two harmful flips; group 1: nothing flips.
  const AuditFrame frame({1, 1, 0, 1, 0, 1}, {0, 0, 0, 1, 0, 1}, {0, 0, 0, 1, 1, 1});
  const auto r = build_report(frame, ThresholdConfig::defaults());
  EXPECT_EQ(r.harmful_proportionality.disparity_index.value,
            MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(render_text(r).find("HDI") != std::string::npos, true);
  EXPECT_EQ(r.verdict, Verdict::kDisproportionate);
}

TEST(RenderText, ReferenceExampleLines) {
  const std::string text = collapse(render_text(example_report()));
  EXPECT_NE(text.find("\nHFP 0.78 Regular calculation"), std::string::npos) << text;
  EXPECT_NE(text.find("\nHDI ∞ One value is zero Disproportionate"), std::string::npos);
  EXPECT_NE(text.find("\nGroup 1 DFR ∞ Only beneficial flips"), std::string::npos);
  EXPECT_NE(text.find("\nTotal samples 1320"), std::string::npos);
}

TEST(RenderText, NoFlipReport) {
  const auto frame = AuditFrame::from_predictions({1, 0}, {0, 1});
  const std::string text = collapse(render_text(build_report(frame, ThresholdConfig::defaults())));
  EXPECT_NE(text.find("\nTotal flips 0"), std::string::npos);
}

TEST(RenderText, SectionOrder) {
  const std::string text = render_text(example_report());
  const char* sections[] = {"Dataset information", "Overall Metrics", "Flips by Groups",
                            "Directional flip ratio", "Flip Proportionality Metrics",
                            "Harmful Flip Proportionality Metrics"};
  std::size_t last = 0;
  for (const char* s : sections) {
    const auto pos = text.find(std::string("\n") + s + "\n");
    ASSERT_NE(pos, std::string::npos) << s;
    EXPECT_GT(pos, last) << s;
    last = pos;
  }
}

TEST(RenderStructured, ReferenceExampleFields) {
  const auto j = nlohmann::json::parse(render_structured(example_report()));
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_NEAR(j["overall"]["flip_rate"]["value"].get<double>(), 174.0 / 1320.0, 1e-15);
  EXPECT_EQ(j["overall"]["flip_rate"]["display"], "0.13");
  EXPECT_EQ(j["harmful_flip_proportionality"]["hdi"]["kind"], "inf");
  EXPECT_EQ(j["harmful_flip_proportionality"]["hdi"]["value"], "inf");
  EXPECT_EQ(j["harmful_flip_proportionality"]["hdi"]["annotation"], "One value is zero");
  EXPECT_EQ(j["verdict"], "Disproportionate");
}

TEST(RenderStructured, KeyOrderIsFixed) {
  const std::string doc = render_structured(example_report());
  const char* keys[] = {"\"schema_version\"", "\"dataset\"", "\"overall\"",
                        "\"groups\"", "\"directional\"", "\"flip_proportionality\"",
                        "\"harmful_flip_proportionality\"", "\"fairness\"", "\"verdict\""};
  std::size_t last = 0;
  for (const char* k : keys) {
    const auto pos = doc.find(k);
    ASSERT_NE(pos, std::string::npos) << k;
    EXPECT_GT(pos, last) << k;
    last = pos;
  }
}

TEST(RenderStructured, RoundTripIsIdentity) {
  std::mt19937_64 rng(17);
  const auto config = ThresholdConfig::defaults();
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = oracle::random_frame(rng, 120);
    const auto frame = testing_support::to_frame(raw, true);
    ReportFairness fairness;
    if (trial % 2 == 0) {
      fairness.pre = evaluate_fairness(frame.y_predicted(), frame.group(), std::nullopt);
      try {
        fairness.post = evaluate_fairness(frame.y_corrected(), frame.group(), frame.y_true());
      } catch (const ValidationError&) {
      }
    }
    const auto report = build_report(frame, config, fairness);
    const std::string doc = render_structured(report);
    const auto parsed = parse_structured(doc);
    ASSERT_EQ(parsed, report) << doc;
    EXPECT_EQ(render_structured(parsed), doc);
  }
}

TEST(ParseStructured, RejectsMalformedDocuments) {
  const std::string good = render_structured(example_report());
  auto expect_malformed = [](const std::string& doc) {
    try {
      parse_structured(doc);
      FAIL() << "accepted: " << doc.substr(0, 80);
    } catch (const IngestError& e) {
      EXPECT_EQ(e.code(), IngestErrorCode::kMalformedDocument);
    }
  };
  expect_malformed("not json");
  expect_malformed("{}");
  auto j = nlohmann::json::parse(good);
  j["schema_version"] = 99;
  expect_malformed(j.dump());
  j = nlohmann::json::parse(good);
  j["harmful_flip_proportionality"]["hdi"]["band"] = "Purple";
  expect_malformed(j.dump());
  j = nlohmann::json::parse(good);
  j["overall"]["flips"] = 1;
  expect_malformed(j.dump());
}

TEST(Report, VerdictMonotoneInBands) {
  auto r = example_report();
  const Band bands[] = {Band::kAcceptable, Band::kModerate, Band::kDisproportionate};
  // Start from all-acceptable and worsen one metric at a time.
  BandedMetric* metrics[] = {&r.flip_proportionality.difference,
                             &r.flip_proportionality.disparity_index,
                             &r.flip_proportionality.flip_disparity,
                             &r.flip_proportionality.relative_disparity,
                             &r.harmful_proportionality.difference,
                             &r.harmful_proportionality.disparity_index,
                             &r.harmful_proportionality.flip_disparity,
                             &r.harmful_proportionality.relative_disparity};
  for (auto* m : metrics) m->band = Band::kAcceptable;
  EXPECT_EQ(verdict_for(r.worst_proportionality_band()), Verdict::kProportionate);
  for (auto* m : metrics) {
    Verdict previous = verdict_for(r.worst_proportionality_band());
    for (Band b : bands) {
      if (b < m->band) continue;
      m->band = b;
      const Verdict now = verdict_for(r.worst_proportionality_band());
      EXPECT_GE(static_cast<int>(now), static_cast<int>(previous));
      previous = now;
    }
  }
  EXPECT_EQ(verdict_for(r.worst_proportionality_band()), Verdict::kDisproportionate);
}

}  // namespace
