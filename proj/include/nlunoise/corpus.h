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

// Intent/slot datasets: the utterance model, the CoNLL-style TSV and JSONL
// file formats, BIO span decoding and Table-style dataset statistics.
//
// CoNLL TSV grammar (UTF-8, '\n' line ends, '\r\n' accepted on input):
//
//   file     := header? block*
//   header   := "# dataset: " NAME "\n"
//   block    := "\n"+ meta* token+
//   meta     := "# id: " ID | "# intent: " INTENT
//             | "# source: " ID | "# noise: " NOISE_TYPE      (each + "\n")
//   token    := TOKEN "\t" TAG "\n"
//
// Blocks are separated by blank lines. Comment lines with an unknown key are
// ignored. A block without "# id:" gets the id "utt-<n>" (1-based block
// number). "# source:" and "# noise:" must appear together.
//
// JSONL: a header object {"dataset": NAME} on the first line, then one
// object per utterance with keys id, intent, tokens, tags and, when present,
// source and noise.

#ifndef NLUNOISE_CORPUS_H_
#define NLUNOISE_CORPUS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlunoise {

// The seven noise families, in canonical (alphabetical) order, plus the
// clean original.
enum class NoiseType {
  kAbbreviation,
  kCasing,
  kMisspelling,
  kMorph,
  kParaphrase,
  kPunctuation,
  kSynonym,
  kOriginal,
};

inline constexpr NoiseType kAllNoiseTypes[] = {
    NoiseType::kAbbreviation, NoiseType::kCasing,      NoiseType::kMisspelling,
    NoiseType::kMorph,        NoiseType::kParaphrase,  NoiseType::kPunctuation,
    NoiseType::kSynonym};

// "abbrev", "casing", "misspelling", "morph", "paraphrase", "punctuation",
// "synonym", "original".
std::string_view NoiseTypeName(NoiseType type);
std::optional<NoiseType> ParseNoiseType(std::string_view name);

struct Provenance {
  std::string source_id;
  NoiseType noise_type = NoiseType::kOriginal;

  bool operator==(const Provenance&) const = default;
};

struct Utterance {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<std::string> slot_tags;
  std::string intent;
  std::optional<Provenance> provenance;

  bool operator==(const Utterance&) const = default;
};

struct SlotSpan {
  std::string label;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive
  std::string value;    // tokens joined by single spaces

  bool operator==(const SlotSpan&) const = default;
};

struct Dataset {
  std::string name;
  std::vector<Utterance> utterances;

  bool operator==(const Dataset&) const = default;
};

enum class DatasetFormat { kConllTsv, kJsonl };

// "conll" / "tsv" / "conll_tsv" and "jsonl".
std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name);

// `O`, `B-<label>` or `I-<label>` with a nonempty, whitespace-free label.
bool IsValidTag(std::string_view tag);

// Throws DataError when an Utterance invariant does not hold.
void ValidateUtterance(const Utterance& u);

// Validates every utterance and id uniqueness.
void ValidateDataset(const Dataset& d);

// Parse errors carry the 1-based line number.
Dataset ParseDataset(std::string_view text, DatasetFormat format);
std::string WriteDataset(const Dataset& d, DatasetFormat format);

// Lenient IOB2 decoding: a span starts at every B-X, and at an I-X whose
// predecessor is not B-X/I-X. Values are left empty.
std::vector<SlotSpan> ExtractSpans(std::span<const std::string> tags);

// ExtractSpans with slot values filled from the tokens.
std::vector<SlotSpan> SlotSpans(const Utterance& u);

// Indices of O-tagged (carrier phrase) tokens.
std::vector<std::size_t> CarrierIndices(const Utterance& u);

struct DatasetStats {
  std::size_t n_utt = 0;
  std::size_t n_intents = 0;
  std::size_t n_slot_labels = 0;
  std::size_t n_slot_values = 0;  // distinct, case-sensitive surface strings
  double avg_bleu = 1.0;

  bool operator==(const DatasetStats&) const = default;
};

// Counts over `d`; avg_bleu is the mean sentence BLEU of each utterance
// against the same-id utterance of `reference` (1.0 without reference).
// Throws DataError on an empty dataset or an id missing from the reference.
DatasetStats ComputeDatasetStats(const Dataset& d,
                                 const Dataset* reference = nullptr);

// "Utt\tIC\tSL\tSV\tBLEU\n" followed by one row.
std::string FormatStatsTsv(const DatasetStats& stats);

}  // namespace nlunoise

#endif  // NLUNOISE_CORPUS_H_
