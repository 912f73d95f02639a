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

#include <gtest/gtest.h>

#include "flipaudit/errors.hpp"
#include "flipaudit/group_metrics.hpp"
#include "flipaudit/pipeline.hpp"
#include "support/helpers.hpp"
#include "support/oracle.hpp"

using namespace flipaudit;

namespace {

MetricValue f(double v) { return MetricValue::finite(v); }

TEST(SplitByGroup, ReferenceExampleSizes) {
  const auto [priv, unpriv] = split_by_group(generate_scenario(paper_example_scenario()));
  EXPECT_EQ(unpriv.group_id, 0);
  EXPECT_EQ(unpriv.size, 799u);
  EXPECT_EQ(unpriv.summary.n_flips, 136u);
  EXPECT_EQ(priv.group_id, 1);
  EXPECT_EQ(priv.size, 521u);
  EXPECT_EQ(priv.summary.n_flips, 38u);
}

TEST(SplitByGroup, MissingGroupRejected) {
  try {
    split_by_group(AuditFrame({1, 0}, {1, 0}, {1, 1}));
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("has no instances"), std::string::npos);
  }
}

TEST(SplitByGroup, SizesPartitionTheFrame) {
  std::mt19937_64 rng(7);
  const auto raw = oracle::random_frame(rng, 100);
  const auto [priv, unpriv] = split_by_group(testing_support::to_frame(raw));
  EXPECT_EQ(priv.size + unpriv.size, raw.pred.size());
}

TEST(RateDifference, Values) {
  EXPECT_NEAR(rate_difference(f(136.0 / 799), f(38.0 / 521)).value(), 0.097, 0.0005);
  EXPECT_EQ(rate_difference(f(1.0), f(0.0)), f(1.0));
  EXPECT_EQ(rate_difference(f(0.2), f(0.2)), f(0.0));
  EXPECT_THROW(rate_difference(MetricValue::infinity(Annotation::kNoFlips), f(0.1)),
               std::invalid_argument);
}

TEST(DisparityIndex, ValuesAndConventions) {
  EXPECT_NEAR(disparity_index(f(136.0 / 799), f(38.0 / 521)).value(), 2.33, 0.005);
  EXPECT_EQ(disparity_index(f(1.0), f(0.0)), MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(disparity_index(f(0.0), f(0.4)), MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(disparity_index(f(0.0), f(0.0)),
            MetricValue::finite(1.0, Annotation::kBothValuesAreZero));
  EXPECT_EQ(disparity_index(f(0.2), f(0.2)), f(1.0));
}

TEST(FlipDisparity, ValuesAndConventions) {
  const MetricValue overall = f(174.0 / 1320);
  EXPECT_NEAR(flip_disparity(f(136.0 / 799), f(38.0 / 521), overall).value(), 0.74, 0.005);
  // One zero rate reports infinity rather than the raw |1/FR - 0| ~ 7.59.
  EXPECT_EQ(flip_disparity(f(1.0), f(0.0), overall),
            MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(flip_disparity(f(0.3), f(0.3), f(0.3)), f(0.0));
  EXPECT_EQ(flip_disparity(f(0.0), f(0.0), f(0.0)),
            MetricValue::finite(1.0, Annotation::kBothValuesAreZero));
  EXPECT_THROW(flip_disparity(f(0.1), f(0.2), f(0.0)), std::invalid_argument);
}

TEST(RelativeDisparity, ValuesAndConventions) {
  const double a = 136.0 / 799, b = 38.0 / 521;
  EXPECT_NEAR(relative_disparity(f(std::abs(a - b)), f(a), f(b)).value(), 0.40, 0.005);
  EXPECT_EQ(relative_disparity(f(1.0), f(1.0), f(0.0)), f(1.0));
  EXPECT_EQ(relative_disparity(f(0.0), f(0.0), f(0.0)),
            MetricValue::finite(0.0, Annotation::kNoFlips));
}

TEST(ComputeProportionality, ReferenceExample) {
  const auto m = compute_proportionality(generate_scenario(paper_example_scenario()));
  EXPECT_NEAR(m.frd.value(), 0.097, 0.0005);
  EXPECT_NEAR(m.di.value(), 2.33, 0.005);
  EXPECT_NEAR(m.fd.value(), 0.74, 0.005);
  EXPECT_NEAR(m.rfd.value(), 0.40, 0.005);
  EXPECT_EQ(m.hfpd, f(1.0));
  EXPECT_EQ(m.hdi, MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(m.hfd, MetricValue::infinity(Annotation::kOneValueIsZero));
  EXPECT_EQ(m.rhfd, f(1.0));
}

TEST(ComputeProportionality, SymmetricIdenticalFlips) {
  // Each group: 4 instances, one favorable and one harmful flip.
  const AuditFrame frame({0, 1, 1, 0, 0, 1, 1, 0}, {1, 0, 1, 0, 1, 0, 1, 0},
                         {0, 0, 0, 0, 1, 1, 1, 1});
  const auto m = compute_proportionality(frame);
  EXPECT_EQ(m.frd, f(0.0));
  EXPECT_EQ(m.hfpd, f(0.0));
  EXPECT_EQ(m.di, f(1.0));
  EXPECT_EQ(m.hdi, f(1.0));
  EXPECT_EQ(m.fd, f(0.0));
  EXPECT_EQ(m.hfd, f(0.0));
  EXPECT_EQ(m.rfd, f(0.0));
  EXPECT_EQ(m.rhfd, f(0.0));
}

TEST(ComputeProportionality, MatchesOracleOnSmallRandomFrames) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto raw = oracle::random_frame(rng, 40);
    const auto want = oracle::compute(raw);
    const auto got = compute_proportionality(testing_support::to_frame(raw));
    using testing_support::matches;
    ASSERT_TRUE(matches(got.frd, want.frd)) << trial;
    ASSERT_TRUE(matches(got.di, want.di)) << trial;
    ASSERT_TRUE(matches(got.fd, want.fd)) << trial;
    ASSERT_TRUE(matches(got.rfd, want.rfd)) << trial;
    ASSERT_TRUE(matches(got.hfpd, want.hfpd)) << trial;
    ASSERT_TRUE(matches(got.hdi, want.hdi)) << trial;
    ASSERT_TRUE(matches(got.hfd, want.hfd)) << trial;
    ASSERT_TRUE(matches(got.rhfd, want.rhfd)) << trial;
  }
}

}  // namespace
