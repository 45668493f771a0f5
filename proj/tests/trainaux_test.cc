//
// Copyright 2026 The nlunoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//


#include <cmath>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "nlunoise/errors.h"
#include "nlunoise/rng.h"
#include "nlunoise/trainaux.h"

namespace nlunoise {
namespace {

// Pair whose difference is `norm` along the first axis.
LogitPair AxisPair(double norm, std::size_t dim = 3) {
  LogitPair p{std::vector<double>(dim, 0.5), std::vector<double>(dim, 0.5)};
  p.noised[0] += norm;
  return p;
}

LogitPairBatch RandomBatch(Rng& rng) {
  LogitPairBatch b;
  const auto fill = [&](std::vector<LogitPair>& side, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t dim = 1 + rng.UniformIndex(6);
      LogitPair p;
      for (std::size_t k = 0; k < dim; ++k) {
        p.clean.push_back(rng.UniformDouble() * 10 - 5);
        p.noised.push_back(rng.UniformDouble() * 10 - 5);
      }
      side.push_back(p);
    }
  };
  fill(b.intent_pairs, rng.UniformIndex(4));
  fill(b.slot_pairs, 1 + rng.UniformIndex(4));
  return b;
}

TEST(AlpLossTest, Examples) {
  LogitPairBatch same;
  same.intent_pairs = {AxisPair(0.0), AxisPair(0.0)};
  same.slot_pairs = {AxisPair(0.0)};
  EXPECT_EQ(AlpLoss(same), 0.0);

  LogitPairBatch diag;
  diag.intent_pairs = {{{1.0, 0.0}, {0.0, 1.0}}};
  EXPECT_NEAR(AlpLoss(diag), std::sqrt(2.0), 1e-12);

  LogitPairBatch mixed;
  mixed.intent_pairs = {AxisPair(1.0), AxisPair(3.0)};
  mixed.slot_pairs = {AxisPair(2.0, 5)};
  EXPECT_NEAR(AlpLoss(mixed), 4.0, 1e-12);
}

TEST(AlpLossTest, Errors) {
  LogitPairBatch bad;
  bad.intent_pairs = {{{1.0, 2.0}, {1.0}}};
  EXPECT_THROW(AlpLoss(bad), std::invalid_argument);
  EXPECT_THROW(AlpLoss(LogitPairBatch{}), std::invalid_argument);
}

TEST(AlpLossTest, Properties) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const LogitPairBatch b = RandomBatch(rng);
    const double loss = AlpLoss(b);
    ASSERT_GT(loss, 0.0);

    LogitPairBatch swapped = b;
    for (auto* side : {&swapped.intent_pairs, &swapped.slot_pairs}) {
      for (LogitPair& p : *side) std::swap(p.clean, p.noised);
    }
    ASSERT_NEAR(AlpLoss(swapped), loss, 1e-12 * (1 + loss));

    for (double c : {0.0, 0.5, 2.0, 7.25}) {
      LogitPairBatch scaled = b;
      for (auto* side : {&scaled.intent_pairs, &scaled.slot_pairs}) {
        for (LogitPair& p : *side) {
          for (double& v : p.clean) v *= c;
          for (double& v : p.noised) v *= c;
        }
      }
      ASSERT_NEAR(AlpLoss(scaled), c * loss, 1e-9 * (1 + c * loss));
    }

    LogitPairBatch zero = b;
    for (auto* side : {&zero.intent_pairs, &zero.slot_pairs}) {
      for (LogitPair& p : *side) p.noised = p.clean;
    }
    ASSERT_EQ(AlpLoss(zero), 0.0);
  }
}

TEST(AlpJsonTest, Parse) {
  const LogitPairBatch b = ParseLogitPairBatchJson(
      R"({"intent_pairs": [[[1, 0], [0, 1]]], "slot_pairs": []})");
  ASSERT_EQ(b.intent_pairs.size(), 1u);
  EXPECT_EQ(b.intent_pairs[0].noised, (std::vector<double>{0, 1}));
  EXPECT_TRUE(b.slot_pairs.empty());
  EXPECT_EQ(ParseLogitPairBatchJson(R"({"slot_pairs": [[[2], [4]]]})")
                .slot_pairs.size(),
            1u);
  EXPECT_THROW(ParseLogitPairBatchJson("{"), DataError);
  EXPECT_THROW(ParseLogitPairBatchJson(R"({"intent_pairs": [[[1]]]})"),
               DataError);
  EXPECT_THROW(ParseLogitPairBatchJson(R"({"intent_pairs": [[["a"], [1]]]})"),
               DataError);
  EXPECT_THROW(ParseLogitPairBatchJson("[]"), DataError);
}

}  // namespace
}  // namespace nlunoise
