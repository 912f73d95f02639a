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

#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "flipaudit/cli.hpp"
#include "flipaudit/ingest.hpp"
#include "flipaudit/pipeline.hpp"
#include "support/svg.hpp"

using namespace flipaudit;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string example_csv() { return run({"synth", "--scenario", "paper-example"}).out; }

TEST(Cli, SynthThenAuditReproducesReference) {
  const CliRun r = run({"audit", "--input", "-"}, example_csv());
  EXPECT_EQ(r.code, 3) << r.err;
  const std::string text = std::regex_replace(r.out, std::regex("[ ]+"), " ");
  for (const char* line : {"\nTotal samples 1320", "\nGroup 0 samples 799", "\nTotal flips 174",
                           "\nFR 0.13", "\nHFP 0.78", "\nDFR 0.28", "\nFRD 0.097", "\nDI 2.33",
                           "\nFD 0.74", "\nRFD 0.40", "\nHFPD 1.0", "\nHDI ∞ One value is zero",
                           "\nHFD ∞ One value is zero", "\nRHFD 1.0", "\nVerdict: Disproportionate"}) {
    EXPECT_NE(text.find(line), std::string::npos) << line;
  }
}

TEST(Cli, AuditIdentityDataExitsZero) {
  const CliRun r = run({"audit"}, "pred,corr,group\n1,1,0\n0,0,0\n1,1,1\n0,0,1\n");
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST(Cli, ReviewRequiredExitsTwo) {
  // Harmful flips only, FR 0.25 vs 0.20: DI 1.25, FD 0.22, RFD 0.11 are
  // Moderate, everything else Acceptable.
  std::string csv = "pred,corr,group\n";
  for (int i = 0; i < 20; ++i) csv += i < 5 ? "1,0,0\n" : "0,0,0\n";
  for (int i = 0; i < 20; ++i) csv += i < 4 ? "1,0,1\n" : "0,0,1\n";
  const CliRun r = run({"audit"}, csv);
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("Verdict: ReviewRequired"), std::string::npos);
}

TEST(Cli, StructuredThenPlot) {
  const CliRun audit = run({"audit", "--format", "structured"}, example_csv());
  EXPECT_EQ(audit.code, 3);
  const CliRun plot = run({"plot", "--input", "-", "--output", "-"}, audit.out);
  EXPECT_EQ(plot.code, 0) << plot.err;
  const auto doc = svg_check::parse(plot.out);
  EXPECT_TRUE(doc.well_formed) << doc.error;
  EXPECT_EQ(doc.panels.size(), 3u);
}

TEST(Cli, DebiasWritesCorrectedCsv) {
  const std::string csv = "pred,group\n1,0\n1,0\n1,0\n1,0\n0,0\n1,1\n1,1\n1,1\n0,1\n0,1\n";
  const CliRun r = run({"debias", "--epsilon", "0.1", "--seed", "3"}, csv);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  const AuditFrame frame = ingest(in, ColumnMapping{});
  EXPECT_EQ(summarize_flips(frame).n_flips, 1u);
  EXPECT_LE(std::abs(statistical_parity_difference(frame.y_corrected(), frame.group())), 0.1);
}

TEST(Cli, PipelineDecisions) {
  const CliRun pass = run({"pipeline", "--debiaser", "passthrough", "--true-col", "true"},
                       example_csv());
  EXPECT_EQ(pass.code, 3) << pass.err;
  EXPECT_NE(pass.out.find("Decision: FairButDisproportionate"), std::string::npos);

  // The equalizer closes the SP gap but leaves EO (picked up from the
  // "true" column) just outside the interval.
  const CliRun eq = run({"pipeline", "--seed", "1"}, example_csv());
  EXPECT_EQ(eq.code, 3) << eq.err;
  const std::string text = std::regex_replace(eq.out, std::regex("[ ]+"), " ");
  EXPECT_NE(text.find("SP difference (post) 0.100 [-0.1, 0.1] pass"), std::string::npos) << text;
  EXPECT_NE(text.find("Decision: StillUnfair"), std::string::npos);

  const CliRun fair = run({"pipeline"}, "pred,group\n1,0\n0,0\n1,1\n0,1\n");
  EXPECT_EQ(fair.code, 0);
  EXPECT_NE(fair.out.find("Decision: NoDebiasNeeded"), std::string::npos);
}

TEST(Cli, SynthSeedOverrideAndDeterminism) {
  EXPECT_EQ(example_csv(), example_csv());
  const CliRun other = run({"synth", "--seed", "7"});
  EXPECT_EQ(other.code, 0);
  EXPECT_NE(other.out, example_csv());
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({"audit", "--format", "xml"}, example_csv()).code, 1);
  EXPECT_EQ(run({"debias", "--epsilon", "-1"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DataErrorsExitOneWithCode) {
  const CliRun bad = run({"audit"}, "pred,corr,group\n1,0,2\n");
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("error ["), std::string::npos) << bad.err;
  EXPECT_NE(bad.err.find("row 1"), std::string::npos) << bad.err;
  EXPECT_EQ(run({"audit", "--input", "/nonexistent.csv"}).code, 1);
  EXPECT_EQ(run({"audit", "--thresholds", "/nonexistent.kv"}, example_csv()).code, 1);
  EXPECT_EQ(run({"plot"}, "{}").code, 1);
  EXPECT_EQ(run({"synth", "--scenario", "nope"}).code, 1);
}

}  // namespace
