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

// Linguistic resources consumed by the injectors: WordNet synonyms, human
// misspelling pairs, abbreviation and morphological-variant tables, the
// QWERTY adjacency map, and fluency scorers used to rank candidates.

#ifndef NLUNOISE_LEXICONS_H_
#define NLUNOISE_LEXICONS_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nlunoise/corpus.h"

namespace nlunoise {

enum class PartOfSpeech { kNoun, kVerb, kAdjective, kAdverb };

// Lemma -> synonym lemmas, symmetric, lowercase. Multiword lemmas keep the
// WordNet underscore joiner ("look_up").
class SynonymLexicon {
 public:
  // Every member becomes a synonym of every other member.
  void AddSynset(PartOfSpeech pos, std::span<const std::string> members);

  // Lookup is case-insensitive. With `pos`, only that bucket is consulted.
  std::set<std::string> Synonyms(
      std::string_view lemma,
      std::optional<PartOfSpeech> pos = std::nullopt) const;

  std::size_t size() const { return all_.size(); }
  bool empty() const { return all_.empty(); }

 private:
  std::map<std::string, std::set<std::string>, std::less<>> all_;
  std::array<std::map<std::string, std::set<std::string>, std::less<>>, 4>
      by_pos_;
};

// Reads WNDB `index.{noun,verb,adj,adv}` and matching `data.*` files from
// `dir`. A missing part of speech is skipped; a directory with none throws
// ResourceError. Malformed lines throw DataError naming file and offset.
SynonymLexicon LoadWordNet(const std::string& dir);

// Correct word (lowercase) -> observed misspellings.
struct MisspellingDb {
  std::map<std::string, std::vector<std::string>, std::less<>> entries;

  // Case-insensitive; nullptr when absent.
  const std::vector<std::string>* Find(std::string_view word) const;
  bool empty() const { return entries.empty(); }
};

// Birkbeck format: "$correct" header lines, each followed by misspellings
// (first whitespace field). Headers "$?" skip their block.
MisspellingDb ParseMisspellingDb(std::string_view text);
MisspellingDb LoadMisspellingDb(const std::string& path);

struct TsvPair {
  std::string source;
  std::string variant;
  std::size_t line = 0;
};

// Two-column TSV, '#' comments and blank lines allowed. Exact duplicate
// pairs are dropped; any other line with != 2 columns throws DataError.
std::vector<TsvPair> ParseTsvPairs(std::string_view text);
std::vector<TsvPair> LoadTsvPairs(const std::string& path);

struct AbbreviationKb {
  // Lowercase word or space-joined phrase -> abbreviations.
  std::map<std::string, std::vector<std::string>, std::less<>> abbreviations;
  // Homophone rewrites ("to" -> "2", "you" -> "u").
  std::map<std::string, std::vector<std::string>, std::less<>>
      phonetic_numerals;

  // Variants made only of digits, or a single letter, are phonetic; all
  // others must be strictly shorter than their source.
  static AbbreviationKb FromPairs(std::span<const TsvPair> pairs);
  std::size_t longest_phrase() const;
};

struct MorphLexicon {
  std::map<std::string, std::vector<std::string>, std::less<>> variants;

  // Both directions of every pair are recorded.
  static MorphLexicon FromPairs(std::span<const TsvPair> pairs);
};

// Curated defaults shipped with the library.
AbbreviationKb DefaultAbbreviationKb();
MorphLexicon DefaultMorphLexicon();
std::vector<TsvPair> DefaultAbbreviationPairs();
std::vector<TsvPair> DefaultMorphPairs();

// Adjacency on a staggered US QWERTY layout over [a-z0-9]:
//
//   1 2 3 4 5 6 7 8 9 0
//    q w e r t y u i o p
//     a s d f g h j k l
//       z x c v b n m
//
// Key i of a row touches keys i-1 and i+1 of its row, keys i and i+1 of the
// row above and keys i-1 and i of the row below.
class QwertyMap {
 public:
  static const QwertyMap& Default();

  // Sorted neighbors of a lowercase key; empty for unsupported characters.
  const std::string& Neighbors(char c) const;
  bool AreNeighbors(char a, char b) const;

 private:
  QwertyMap();
  std::array<std::string, 128> neighbors_;
};

// Lower score = more fluent.
class FluencyScorer {
 public:
  virtual ~FluencyScorer() = default;
  virtual double Score(std::span<const std::string> tokens) const = 0;
};

// Word n-gram model with add-k smoothing; Score is per-token perplexity
// including the end-of-sentence event. Immutable after construction and
// safe for concurrent use.
class NgramScorer : public FluencyScorer {
 public:
  NgramScorer(const Dataset& corpus, int order, double add_k = 0.1);

  double Score(std::span<const std::string> tokens) const override;
  int order() const { return order_; }

 private:
  std::uint32_t Id(std::string_view token) const;
  std::string Key(std::span<const std::uint32_t> ids) const;

  int order_;
  double add_k_;
  std::unordered_map<std::string, std::uint32_t> vocab_;
  std::unordered_map<std::string, double> ngram_counts_;
  std::unordered_map<std::string, double> context_counts_;
};

// Line protocol to an external process: one space-joined sentence per line
// on its stdin, one number per line back on its stdout. Calls are
// serialized.
class CommandScorer : public FluencyScorer {
 public:
  explicit CommandScorer(const std::string& command);
  ~CommandScorer() override;
  CommandScorer(const CommandScorer&) = delete;
  CommandScorer& operator=(const CommandScorer&) = delete;

  double Score(std::span<const std::string> tokens) const override;

 private:
  mutable std::mutex mu_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  mutable std::string buffer_;
};

}  // namespace nlunoise

#endif  // NLUNOISE_LEXICONS_H_
