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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "json.hpp"
#include "nlunoise/augment.h"
#include "nlunoise/errors.h"
#include "nlunoise/lexicons.h"
#include "nlunoise/text.h"
#include "test_util.h"

namespace nlunoise {
namespace {

class LengthScorer : public FluencyScorer {
 public:
  double Score(std::span<const std::string> tokens) const override {
    return static_cast<double>(Join(tokens, " ").size());
  }
};

// Resources for every type; paraphrases repeat each utterance in lowercase.
struct Resources {
  explicit Resources(const Dataset& d) {
    std::string text;
    for (const Utterance& u : d.utterances) {
      text += u.id + "\t" + ToLowerAscii(Join(u.tokens, " ")) + "\n";
    }
    paraphrases = FileParaphraseProvider::Parse(text);
  }
  NoiseResources Get() const {
    NoiseResources r;
    r.synonyms = &synonyms;
    r.morph = &morph;
    r.abbreviations = &abbreviations;
    r.misspellings = &misspellings;
    r.scorer = &scorer;
    r.paraphrases = &paraphrases;
    return r;
  }
  SynonymLexicon synonyms = testing::TestSynonyms();
  MorphLexicon morph = DefaultMorphLexicon();
  AbbreviationKb abbreviations = DefaultAbbreviationKb();
  MisspellingDb misspellings;
  LengthScorer scorer;
  FileParaphraseProvider paraphrases;
};

Dataset MakeDataset(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  return testing::RandomDataset(rng, n);
}

void CheckSizeLaw(const Dataset& in, const NoisePlan& plan,
                  const AugmentedDataset& out) {
  const std::size_t n = in.utterances.size();
  std::size_t total = 0;
  for (const auto& [type, rep] : out.report.per_type) {
    const double r = plan.proportions.count(type) ? plan.proportions.at(type) : 0.0;
    ASSERT_EQ(rep.requested,
              static_cast<std::size_t>(std::floor(r * static_cast<double>(n) + 1e-9)));
    ASSERT_LE(rep.achieved, rep.requested);
    ASSERT_EQ(rep.achieved + rep.rejected, rep.requested);
    total += rep.achieved;
  }
  ASSERT_EQ(out.report.original_size, n);
  ASSERT_EQ(out.report.final_size, n + total);
  ASSERT_EQ(out.dataset.utterances.size(), n + total);

  std::map<std::string, const Utterance*> by_id;
  for (std::size_t i = 0; i < n; ++i) {
    ASSERT_EQ(out.dataset.utterances[i], in.utterances[i]);
    by_id[in.utterances[i].id] = &in.utterances[i];
  }
  std::map<NoiseType, std::size_t> appended;
  std::set<std::pair<std::string, NoiseType>> pairs;
  std::set<std::string> ids;
  for (const Utterance& u : out.dataset.utterances) ASSERT_TRUE(ids.insert(u.id).second);
  for (std::size_t i = n; i < out.dataset.utterances.size(); ++i) {
    const Utterance& u = out.dataset.utterances[i];
    ASSERT_TRUE(u.provenance.has_value());
    ASSERT_TRUE(by_id.count(u.provenance->source_id));
    ASSERT_GT(plan.proportions.at(u.provenance->noise_type), 0.0);
    ASSERT_EQ(u.intent, by_id.at(u.provenance->source_id)->intent);
    // Sampling is without replacement within a type.
    ASSERT_TRUE(pairs.emplace(u.provenance->source_id, u.provenance->noise_type).second);
    ++appended[u.provenance->noise_type];
  }
  for (const auto& [type, rep] : out.report.per_type) {
    ASSERT_EQ(appended[type], rep.achieved) << NoiseTypeName(type);
  }
}

TEST(PresetTest, Values) {
  const NoisePlan uniform = PresetPlan("uniform");
  EXPECT_EQ(uniform.proportions.size(), 7u);
  for (const auto& [t, r] : uniform.proportions) EXPECT_DOUBLE_EQ(r, 0.10);

  const NoisePlan atis = PresetPlan("bp_atis");
  const std::map<NoiseType, double> expected = {
      {NoiseType::kAbbreviation, 0.15}, {NoiseType::kCasing, 0.50},
      {NoiseType::kMisspelling, 0.20},  {NoiseType::kMorph, 0.10},
      {NoiseType::kParaphrase, 0.15},   {NoiseType::kPunctuation, 0.15},
      {NoiseType::kSynonym, 0.10}};
  EXPECT_EQ(atis.proportions, expected);
  EXPECT_EQ(PresetPlan("bp-atis").proportions, expected);

  const NoisePlan snips = PresetPlan("bp_snips");
  EXPECT_FALSE(snips.proportions.count(NoiseType::kPunctuation));
  EXPECT_DOUBLE_EQ(snips.proportions.at(NoiseType::kCasing), 0.50);
  EXPECT_EQ(snips.proportions.size(), 6u);
  EXPECT_THROW(PresetPlan("bp_other"), std::invalid_argument);
}

TEST(PlanTest, Validation) {
  NoisePlan p;
  p.proportions[NoiseType::kCasing] = 1.5;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p.proportions = {{NoiseType::kOriginal, 0.1}};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
  p.proportions = {{NoiseType::kCasing, 1.0}};
  p.rates = {{NoiseType::kCasing, -0.1}};
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

TEST(PlanTest, ParseConfig) {
  const NoisePlan p = ParsePlanConfig(
      "# tuned\npreset = bp_snips\ncasing = 0.25\n\nmisspelling.rate = 0.3\n");
  EXPECT_DOUBLE_EQ(p.proportions.at(NoiseType::kCasing), 0.25);
  EXPECT_DOUBLE_EQ(p.proportions.at(NoiseType::kSynonym), 0.10);
  EXPECT_DOUBLE_EQ(p.rates.at(NoiseType::kMisspelling), 0.3);
  const auto line_of = [](const std::string& text) -> std::size_t {
    try {
      ParsePlanConfig(text);
    } catch (const DataError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("casing = 0.1\nbogus = 0.2\n"), 2u);
  EXPECT_EQ(line_of("casing 0.1\n"), 1u);
  EXPECT_EQ(line_of("\ncasing = 2\n"), 2u);
  EXPECT_EQ(line_of("casing = x\n"), 1u);
  EXPECT_EQ(line_of("preset = nope\n"), 1u);
}

TEST(PlanTest, ResolvePlan) {
  EXPECT_EQ(ResolvePlan("uniform").proportions, PresetPlan("uniform").proportions);
  EXPECT_THROW(ResolvePlan("/nonexistent/plan.cfg"), ResourceError);
}

TEST(SearchSpaceTest, Ranges) {
  const auto space = EnumerateSearchSpace();
  std::size_t total = 0;
  std::map<NoiseType, std::vector<double>> by_type;
  for (const SearchRange& r : space) {
    total += r.rates.size();
    by_type[r.type] = r.rates;
  }
  EXPECT_EQ(total, 27u);
  EXPECT_EQ(by_type.at(NoiseType::kCasing),
            (std::vector<double>{0.15, 0.25, 0.50, 1.00}));
  EXPECT_EQ(by_type.at(NoiseType::kMisspelling),
            (std::vector<double>{0.10, 0.15, 0.20, 0.25, 0.30}));
  EXPECT_EQ(by_type.at(NoiseType::kAbbreviation),
            (std::vector<double>{0.10, 0.15, 0.20, 0.25}));
  EXPECT_EQ(by_type.at(NoiseType::kMorph),
            (std::vector<double>{0.10, 0.20, 0.25, 0.30, 0.50}));
  EXPECT_EQ(by_type.at(NoiseType::kSynonym),
            (std::vector<double>{0.10, 0.20, 0.25, 0.30, 0.50}));
  EXPECT_EQ(by_type.at(NoiseType::kParaphrase),
            (std::vector<double>{0.05, 0.10, 0.15, 0.20}));
}

TEST(BuildAugmentedTest, AllZeroPlan) {
  const Dataset d = MakeDataset(1, 50);
  NoisePlan plan;
  for (NoiseType t : kAllNoiseTypes) plan.proportions[t] = 0.0;
  const AugmentedDataset out = BuildAugmented(d, plan, NoiseResources{}, 1);
  EXPECT_EQ(out.dataset, d);
  EXPECT_EQ(out.report.final_size, 50u);
  for (const auto& [t, rep] : out.report.per_type) {
    EXPECT_EQ(rep.requested, 0u);
    EXPECT_EQ(rep.achieved, 0u);
  }
}

TEST(BuildAugmentedTest, FullCasing) {
  const Dataset d = MakeDataset(2, 100);
  NoisePlan plan;
  plan.proportions[NoiseType::kCasing] = 1.0;
  const AugmentedDataset out = BuildAugmented(d, plan, NoiseResources{}, 9);
  ASSERT_EQ(out.dataset.utterances.size(), 200u);
  std::size_t casing = 0;
  for (const Utterance& u : out.dataset.utterances) {
    casing += u.provenance && u.provenance->noise_type == NoiseType::kCasing;
  }
  EXPECT_EQ(casing, 100u);
  EXPECT_EQ(out.dataset.utterances[100].id, d.utterances[0].id + "~casing");
  CheckSizeLaw(d, plan, out);
}

TEST(BuildAugmentedTest, UniformWithoutPunctuation) {
  const Dataset d = MakeDataset(3, 1000);
  NoisePlan plan = PresetPlan("uniform");
  plan.proportions.erase(NoiseType::kPunctuation);
  const Resources res(d);
  const AugmentedDataset out = BuildAugmented(d, plan, res.Get(), 5, 4);
  ASSERT_EQ(out.report.per_type.size(), 6u);
  for (const auto& [t, rep] : out.report.per_type) EXPECT_EQ(rep.requested, 100u);
  CheckSizeLaw(d, plan, out);
}

TEST(BuildAugmentedTest, SizeLawOverRandomPlans) {
  Rng rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = MakeDataset(100 + trial, 1 + rng.UniformIndex(120));
    const Resources res(d);
    NoisePlan plan;
    for (NoiseType t : kAllNoiseTypes) {
      if (rng.Bernoulli(0.7)) plan.proportions[t] = rng.UniformDouble();
    }
    const AugmentedDataset out =
        BuildAugmented(d, plan, res.Get(), trial, 1 + trial % 3);
    CheckSizeLaw(d, plan, out);
  }
}

TEST(BuildAugmentedTest, DeterministicAcrossJobs) {
  const Dataset d = MakeDataset(4, 300);
  const Resources res(d);
  const NoisePlan plan = PresetPlan("bp_atis");
  const AugmentedDataset a = BuildAugmented(d, plan, res.Get(), 11, 1);
  const AugmentedDataset b = BuildAugmented(d, plan, res.Get(), 11, 8);
  EXPECT_EQ(WriteDataset(a.dataset, DatasetFormat::kJsonl),
            WriteDataset(b.dataset, DatasetFormat::kJsonl));
  EXPECT_EQ(AugmentationReportToJson(a.report), AugmentationReportToJson(b.report));
  const AugmentedDataset c = BuildAugmented(d, plan, res.Get(), 12, 1);
  EXPECT_NE(a.dataset, c.dataset);
}

TEST(BuildAugmentedTest, MissingParaphrasesIsResourceError) {
  const Dataset d = MakeDataset(5, 20);
  NoisePlan plan;
  plan.proportions[NoiseType::kParaphrase] = 0.5;
  EXPECT_THROW(BuildAugmented(d, plan, NoiseResources{}, 1), ResourceError);
  plan.proportions[NoiseType::kParaphrase] = 0.0;
  EXPECT_NO_THROW(BuildAugmented(d, plan, NoiseResources{}, 1));
}

TEST(BuildAugmentedTest, RateOverride) {
  const Dataset d = MakeDataset(6, 40);
  NoisePlan plan;
  plan.proportions[NoiseType::kMisspelling] = 1.0;
  plan.rates[NoiseType::kMisspelling] = 0.0;
  const AugmentedDataset out = BuildAugmented(d, plan, NoiseResources{}, 3);
  ASSERT_EQ(out.dataset.utterances.size(), 80u);
  for (std::size_t i = 0; i < 40; ++i) {
    EXPECT_EQ(out.dataset.utterances[40 + i].tokens, d.utterances[i].tokens);
  }
}

TEST(ReportTest, Serialization) {
  AugmentationReport r;
  r.original_size = 10;
  r.final_size = 12;
  r.per_type[NoiseType::kCasing] = {0.5, 5, 2, 3};
  const auto j = nlohmann::json::parse(AugmentationReportToJson(r));
  EXPECT_EQ(j["final_size"], 12);
  EXPECT_EQ(j["types"]["casing"]["rejected"], 3);
  const std::string tsv = AugmentationReportToTsv(r);
  EXPECT_NE(tsv.find("casing\t"), std::string::npos);
  EXPECT_NE(tsv.find("total\t"), std::string::npos);
}

}  // namespace
}  // namespace nlunoise
