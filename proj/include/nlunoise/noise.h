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

// Noise injectors. Every injector keeps the intent, keeps tokens and tags
// aligned, and (except paraphrase realignment) keeps the multiset of
// (slot label, slot length) unchanged.

#ifndef NLUNOISE_NOISE_H_
#define NLUNOISE_NOISE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlunoise/corpus.h"
#include "nlunoise/lexicons.h"
#include "nlunoise/rng.h"

namespace nlunoise {

// --- Casing ----------------------------------------------------------------

Utterance InjectCasingAll(const Utterance& u);

// Uppercases each (eligible) token independently with probability `rate`.
Utterance InjectCasingTokens(const Utterance& u, double rate, Rng& rng,
                             bool carrier_only = false);

// --- Synthetic misspellings ------------------------------------------------

enum class EditType { kInsertion, kDeletion, kSubstitution, kTransposition };

std::string_view EditTypeName(EditType type);

// Per-token edit model: a token is left alone with probability 1 - rate,
// otherwise receives exactly one edit whose type is drawn from the shares.
struct EditModel {
  double rate = 0.0;
  double insertion = 0.33;
  double deletion = 0.18;
  double substitution = 0.43;
  double transposition = 0.06;
  const QwertyMap* qwerty = &QwertyMap::Default();

  // Throws std::invalid_argument unless rate is in [0, 1] and the shares are
  // nonnegative and sum to 1.
  void Validate() const;
};

struct CharEdit {
  EditType type = EditType::kInsertion;
  std::size_t position = 0;  // index of the anchor character
  char anchor = 0;           // character at `position` before the edit
  char introduced = 0;       // inserted/substituted character, else 0
};

// Applies `edit` to `word` (anchor and introduced must be set as produced by
// MisspellWord).
std::string ApplyCharEdit(std::string_view word, const CharEdit& edit);

// ASCII letters only, length >= 3.
bool IsMisspellingEligible(std::string_view token);

// Applies one edit to `word` with probability model.rate. Positions:
// insertion puts a QWERTY neighbor of word[i] before word[i]; deletion
// removes word[i]; substitution replaces word[i] by a neighbor;
// transposition swaps word[i] and word[i+1]. The introduced character
// follows the case of the anchor.
std::optional<CharEdit> MisspellWord(std::string& word, const EditModel& model,
                                     Rng& rng);

struct SyntheticMisspellingResult {
  Utterance utterance;
  std::vector<std::pair<std::size_t, CharEdit>> edits;  // (token index, edit)
};

SyntheticMisspellingResult InjectMisspellingSynthetic(const Utterance& u,
                                                      const EditModel& model,
                                                      Rng& rng,
                                                      bool carrier_only = false);

// --- Natural misspellings --------------------------------------------------

struct NaturalMisspellingResult {
  Utterance utterance;
  std::size_t replacements = 0;
};

// Replaces up to ceil(rate * |tokens|) tokens found in `db` with a uniformly
// chosen misspelling. Carrier tokens are used before slot tokens.
NaturalMisspellingResult InjectMisspellingNatural(const Utterance& u,
                                                  double rate,
                                                  const MisspellingDb& db,
                                                  Rng& rng,
                                                  bool carrier_only = false);

// --- Lexical substitution --------------------------------------------------

struct InjectorConfig {
  bool carrier_only = true;
  double rate = 0.0;
  // Synonym/morph: number of tokens replaced.
  std::size_t max_replacements = 1;
  // Synonym/morph: when > 0, score only a random subset of this many
  // (position, candidate) pairs per replacement round.
  std::size_t max_candidates = 0;
  std::optional<PartOfSpeech> pos_filter;
};

// Scores every (position, candidate) substitution as a full utterance and
// keeps the lowest-scoring one; ties go to the earliest position, then the
// lexicographically first candidate. Absent when no token has a candidate.
std::optional<Utterance> InjectSynonym(const Utterance& u,
                                       const SynonymLexicon& lexicon,
                                       const FluencyScorer& scorer, Rng& rng,
                                       const InjectorConfig& cfg = {});

std::optional<Utterance> InjectMorph(const Utterance& u,
                                     const MorphLexicon& lexicon,
                                     const FluencyScorer& scorer, Rng& rng,
                                     const InjectorConfig& cfg = {});

// Rewrites max(1, round(rate * n)) of the n rewritable tokens (or KB
// phrases). Each position uses the first applicable rule: abbreviation KB,
// phonetic numeral, then internal-vowel drop for tokens of length >= 4.
std::optional<Utterance> InjectAbbreviation(const Utterance& u,
                                            const AbbreviationKb& kb, Rng& rng,
                                            const InjectorConfig& cfg = {});

// Removes the internal vowels of `token`, keeping its first and last
// character. Returns the input unchanged when it is shorter than 4 or not
// alphabetic.
std::string DropInternalVowels(std::string_view token);

// --- Punctuation -----------------------------------------------------------

class Punctuator {
 public:
  virtual ~Punctuator() = default;
  // Returns `tokens` with punctuation tokens inserted.
  virtual std::vector<std::string> Punctuate(
      std::span<const std::string> tokens) const = 0;
};

// Appends "?" after utterances opening with what/which/when/where/how/who
// and "." otherwise, unless the last token is already punctuation.
// Optionally inserts "," before the last preposition that opens a trailing
// phrase.
class RulePunctuator : public Punctuator {
 public:
  explicit RulePunctuator(bool comma_before_trailing_phrase = false)
      : comma_(comma_before_trailing_phrase) {}

  std::vector<std::string> Punctuate(
      std::span<const std::string> tokens) const override;

 private:
  bool comma_;
};

// Inserted tokens are tagged O. Insertions that would split a slot span are
// dropped. Throws std::logic_error if the punctuator altered or dropped an
// original token or inserted a non-punctuation token.
Utterance InjectPunctuation(const Utterance& u, const Punctuator& punctuator);

// --- Paraphrases -----------------------------------------------------------

class ParaphraseProvider {
 public:
  virtual ~ParaphraseProvider() = default;
  virtual std::optional<std::vector<std::string>> Paraphrase(
      const Utterance& u) const = 0;
};

// Precomputed paraphrases keyed by utterance id; the first line for an id
// wins.
class FileParaphraseProvider : public ParaphraseProvider {
 public:
  // "utterance_id<TAB>paraphrase text" per line.
  static FileParaphraseProvider Parse(std::string_view text);
  static FileParaphraseProvider Load(const std::string& path);

  std::optional<std::vector<std::string>> Paraphrase(
      const Utterance& u) const override;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, std::vector<std::vector<std::string>>, std::less<>>
      table_;
};

struct RealignResult {
  std::optional<Utterance> utterance;
  std::size_t collisions = 0;
};

// Re-tags the slot values of `original` inside `paraphrase` by
// case-insensitive contiguous match. Longer values are placed first, each at
// its leftmost free occurrence; occurrences overlapping an earlier placement
// count as collisions. Absent if any value cannot be placed.
RealignResult RealignParaphrase(const Utterance& original,
                                std::span<const std::string> paraphrase);

// --- Dispatch --------------------------------------------------------------

enum class InjectorKind {
  kCasingAll,
  kCasingTokens,
  kMisspellSynthetic,
  kMisspellNatural,
  kSynonym,
  kMorph,
  kAbbreviation,
  kPunctuation,
  kParaphrase,
};

// "casing-all", "casing", "misspell-syn", "misspell-nat", "synonym",
// "morph", "abbrev", "punct", "paraphrase".
std::string_view InjectorName(InjectorKind kind);
std::optional<InjectorKind> ParseInjectorKind(std::string_view name);
NoiseType InjectorNoiseType(InjectorKind kind);
bool IsStochastic(InjectorKind kind);

// carrier_only is true for synonym/morph/abbreviation/punctuation. Rates:
// casing 0.5, misspell-syn 0.15, misspell-nat 0.15, abbreviation 0.
InjectorConfig DefaultInjectorConfig(InjectorKind kind);

struct NoiseResources {
  const SynonymLexicon* synonyms = nullptr;
  const MorphLexicon* morph = nullptr;
  const AbbreviationKb* abbreviations = nullptr;
  const MisspellingDb* misspellings = nullptr;
  const FluencyScorer* scorer = nullptr;
  const ParaphraseProvider* paraphrases = nullptr;
  const Punctuator* punctuator = nullptr;
  const QwertyMap* qwerty = &QwertyMap::Default();
};

// Throws ResourceError naming the first missing resource for `kind`.
void CheckResources(InjectorKind kind, const NoiseResources& resources);

struct InjectionOutcome {
  std::optional<Utterance> utterance;  // absent = rejected
  std::size_t replacements = 0;
  std::size_t collisions = 0;
};

InjectionOutcome ApplyInjector(InjectorKind kind, const Utterance& u,
                               const InjectorConfig& cfg,
                               const NoiseResources& resources, Rng& rng);

struct NoisedDataset {
  Dataset dataset;
  std::vector<std::string> rejected_ids;
};

// Applies `kind` to every utterance with the stream Rng::ForStream(seed,
// {kind, index}). Outputs keep their ids and carry provenance (id, type);
// rejected utterances are omitted. Output is independent of `jobs`.
NoisedDataset NoiseDataset(const Dataset& d, InjectorKind kind,
                           const InjectorConfig& cfg,
                           const NoiseResources& resources, std::uint64_t seed,
                           int jobs = 1);

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn);

}  // namespace nlunoise

#endif  // NLUNOISE_NOISE_H_
