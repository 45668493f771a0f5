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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "nlunoise/errors.h"
#include "nlunoise/lexicons.h"
#include "nlunoise/text.h"
#include "test_util.h"

namespace nlunoise {
namespace {

using testing::DataPath;

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("nlunoise_lex_" + std::to_string(::testing::UnitTest::GetInstance()
                                                  ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(WordNetTest, ToyDatabase) {
  const SynonymLexicon lex = LoadWordNet(DataPath("wordnet"));
  EXPECT_TRUE(lex.Synonyms("book").contains("reserve"));
  EXPECT_TRUE(lex.Synonyms("Book").contains("hold"));
  EXPECT_TRUE(lex.Synonyms("find").contains("look_for"));
  EXPECT_TRUE(lex.Synonyms("cheap").contains("inexpensive"));
  EXPECT_TRUE(lex.Synonyms("zebra").empty());
  EXPECT_TRUE(lex.Synonyms("book", PartOfSpeech::kNoun).empty());
  EXPECT_FALSE(lex.Synonyms("book", PartOfSpeech::kVerb).empty());
}

TEST(WordNetTest, SingletonSynsetHasNoSynonyms) {
  TempDir dir;
  dir.Write("data.noun", "  1 license\n00000010 05 n 01 lonely 0 000 | x\n");
  dir.Write("index.noun", "lonely n 1 0 1 0 00000010\n");
  const SynonymLexicon lex = LoadWordNet(dir.path());
  EXPECT_TRUE(lex.Synonyms("lonely").empty());
}

TEST(WordNetTest, SymmetricAndSelfFree) {
  const SynonymLexicon lex = LoadWordNet(DataPath("wordnet"));
  for (const std::string w : {"book", "reserve", "show", "film", "movie",
                              "want", "need", "first", "fare"}) {
    for (const std::string& s : lex.Synonyms(w)) {
      EXPECT_NE(s, w);
      EXPECT_TRUE(lex.Synonyms(s).contains(w)) << w << " / " << s;
    }
  }
}

TEST(WordNetTest, Errors) {
  TempDir dir;
  EXPECT_THROW(LoadWordNet(dir.path()), ResourceError);
  EXPECT_THROW(LoadWordNet(dir.path() + "/missing"), ResourceError);
  dir.Write("data.noun", "00000010 05 n zz lonely 0 000 | x\n");
  dir.Write("index.noun", "lonely n 1 0 1 0 00000010\n");
  try {
    LoadWordNet(dir.path());
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("data.noun:0"), std::string::npos)
        << e.what();
  }
  dir.Write("data.noun", "00000010 05 n 01 lonely 0 000 | x\n");
  dir.Write("index.noun", "lonely n 1 0 1 0 00000099\n");
  EXPECT_THROW(LoadWordNet(dir.path()), DataError);
}

TEST(MisspellingDbTest, ParsesBlocks) {
  const MisspellingDb db = ParseMisspellingDb("$flight\nflite\nflihgt\n");
  ASSERT_EQ(db.entries.size(), 1u);
  EXPECT_EQ(db.entries.at("flight"),
            (std::vector<std::string>{"flite", "flihgt"}));
  EXPECT_NE(db.Find("Flight"), nullptr);
  EXPECT_TRUE(ParseMisspellingDb("").empty());
}

TEST(MisspellingDbTest, OrphanLineIsPositionedError) {
  try {
    ParseMisspellingDb("\nflite\n$flight\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(MisspellingDbTest, FixtureSkipsUnknownBlock) {
  const MisspellingDb db = LoadMisspellingDb(DataPath("misspellings.dat"));
  EXPECT_EQ(db.entries.size(), 5u);
  EXPECT_EQ(db.Find("?"), nullptr);
  EXPECT_EQ(db.Find("weather")->size(), 2u);
}

// Line-counting oracle: every non-header line of a clean file is an entry.
TEST(MisspellingDbTest, CountParity) {
  Rng rng(3);
  std::string text;
  std::size_t lines = 0;
  for (int w = 0; w < 50; ++w) {
    text += "$word" + std::to_string(w) + "\n";
    const std::size_t k = rng.UniformIndex(5);
    for (std::size_t i = 0; i < k; ++i) {
      text += "wrd" + std::to_string(w) + "x" + std::to_string(i) + "\n";
      ++lines;
    }
  }
  std::size_t entries = 0;
  for (const auto& [word, list] : ParseMisspellingDb(text).entries) {
    entries += list.size();
  }
  EXPECT_EQ(entries, lines);
}

TEST(TsvPairsTest, ParsesAndDeduplicates) {
  const auto pairs =
      ParseTsvPairs("# comment\npeople\tppl\n\npeople\tppl\nplease\tpls\n");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].source, "people");
  EXPECT_EQ(pairs[0].variant, "ppl");
  EXPECT_EQ(pairs[1].line, 5u);
}

TEST(TsvPairsTest, BadColumnCountIsPositioned) {
  try {
    ParseTsvPairs("a\tb\nbad line\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseTsvPairs("a\tb\tc\n"), DataError);
}

TEST(TsvPairsTest, CountParity) {
  std::string text = "# header\n";
  for (int i = 0; i < 300; ++i) {
    text += "source" + std::to_string(i) + "\tv" + std::to_string(i) + "\n";
  }
  EXPECT_EQ(ParseTsvPairs(text).size(), 300u);
}

TEST(AbbreviationKbTest, FromPairs) {
  const auto pairs = ParseTsvPairs("people\tppl\nto\t2\nyou\tu\n");
  const AbbreviationKb kb = AbbreviationKb::FromPairs(pairs);
  EXPECT_EQ(kb.abbreviations.at("people"), (std::vector<std::string>{"ppl"}));
  EXPECT_EQ(kb.phonetic_numerals.at("to"), (std::vector<std::string>{"2"}));
  EXPECT_EQ(kb.phonetic_numerals.at("you"), (std::vector<std::string>{"u"}));
  EXPECT_THROW(AbbreviationKb::FromPairs(ParseTsvPairs("ppl\tpeople\n")),
               DataError);
}

TEST(AbbreviationKbTest, DefaultsCoverRequiredEntries) {
  const AbbreviationKb kb = DefaultAbbreviationKb();
  EXPECT_GE(kb.abbreviations.size() + kb.phonetic_numerals.size(), 100u);
  for (const auto& [src, dst] :
       std::vector<std::pair<std::string, std::string>>{
           {"to", "2"}, {"too", "2"}, {"for", "4"}, {"ate", "8"},
           {"you", "u"}, {"are", "r"}}) {
    const auto& v = kb.phonetic_numerals.at(src);
    EXPECT_NE(std::find(v.begin(), v.end(), dst), v.end()) << src;
  }
  EXPECT_EQ(kb.abbreviations.at("people"), (std::vector<std::string>{"ppl"}));
  EXPECT_GE(kb.longest_phrase(), 2u);
}

TEST(MorphLexiconTest, Bidirectional) {
  const MorphLexicon m =
      MorphLexicon::FromPairs(ParseTsvPairs("booking\tbook\n"));
  EXPECT_EQ(m.variants.at("booking"), (std::vector<std::string>{"book"}));
  EXPECT_EQ(m.variants.at("book"), (std::vector<std::string>{"booking"}));
}

TEST(MorphLexiconTest, DefaultsAreLargeAndRegular) {
  EXPECT_GE(DefaultMorphPairs().size(), 200u);
  const MorphLexicon m = DefaultMorphLexicon();
  const auto& book = m.variants.at("book");
  for (const std::string v : {"books", "booking", "booked"}) {
    EXPECT_NE(std::find(book.begin(), book.end(), v), book.end()) << v;
  }
  const auto& stop = m.variants.at("stop");
  EXPECT_NE(std::find(stop.begin(), stop.end(), "stopping"), stop.end());
  EXPECT_TRUE(m.variants.contains("flights"));
}

TEST(QwertyTest, DocumentedNeighbors) {
  const QwertyMap& q = QwertyMap::Default();
  EXPECT_EQ(q.Neighbors('d'), "cefrsx");
  EXPECT_EQ(q.Neighbors('q'), "12aw");
  EXPECT_EQ(q.Neighbors('m'), "jkn");
  EXPECT_EQ(q.Neighbors('1'), "2q");
  EXPECT_TRUE(q.Neighbors('#').empty());
  EXPECT_TRUE(q.Neighbors('\xa7').empty());
}

TEST(QwertyTest, SymmetricAndIrreflexive) {
  const QwertyMap& q = QwertyMap::Default();
  const std::string keys = "1234567890qwertyuiopasdfghjklzxcvbnm";
  for (char a : keys) {
    EXPECT_FALSE(q.AreNeighbors(a, a));
    EXPECT_FALSE(q.Neighbors(a).empty());
    for (char b : q.Neighbors(a)) EXPECT_TRUE(q.AreNeighbors(b, a));
  }
}

TEST(NgramScorerTest, PrefersTrainingOrder) {
  Rng rng(17);
  const Dataset corpus = testing::RandomDataset(rng, 300);
  for (int order : {2, 3}) {
    const NgramScorer scorer(corpus, order);
    int wins = 0, trials = 0;
    for (int i = 0; i < 50; ++i) {
      const Utterance& u = corpus.utterances[rng.UniformIndex(300)];
      if (u.tokens.size() < 4) {
        --i;
        continue;
      }
      std::vector<std::string> shuffled = u.tokens;
      rng.Shuffle(shuffled.begin(), shuffled.end());
      ++trials;
      wins += scorer.Score(u.tokens) <= scorer.Score(shuffled);
    }
    EXPECT_GT(wins, trials / 2) << "order " << order;
  }
}

TEST(NgramScorerTest, UnseenTokensAndDeterminism) {
  Rng rng(1);
  const NgramScorer scorer(testing::RandomDataset(rng, 20), 2);
  const std::vector<std::string> s = {"qqq", "zzz"};
  const double a = scorer.Score(s);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_GT(a, 0.0);
  EXPECT_EQ(a, scorer.Score(s));
  EXPECT_THROW(NgramScorer(Dataset{}, 2), DataError);
  EXPECT_THROW(NgramScorer(testing::RandomDataset(rng, 2), 4),
               std::invalid_argument);
}

TEST(CommandScorerTest, LineProtocol) {
  const CommandScorer scorer("while read line; do echo ${#line}; done");
  EXPECT_DOUBLE_EQ(scorer.Score(std::vector<std::string>{"ab", "c"}), 4.0);
  EXPECT_DOUBLE_EQ(scorer.Score(std::vector<std::string>{"x"}), 1.0);
}

TEST(CommandScorerTest, BadReplyIsResourceError) {
  const CommandScorer scorer("while read line; do echo nope; done");
  EXPECT_THROW(scorer.Score(std::vector<std::string>{"x"}), ResourceError);
}

}  // namespace
}  // namespace nlunoise
