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

#include "nlunoise/corpus.h"

#include <cstdio>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "nlunoise/errors.h"
#include "nlunoise/metrics.h"
#include "nlunoise/text.h"

namespace nlunoise {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kNoiseNames[] = {
    "abbrev", "casing",      "misspelling", "morph",
    "paraphrase", "punctuation", "synonym", "original"};

void CheckUtterance(const Utterance& u, std::size_t line) {
  if (u.id.empty() || HasAsciiWhitespace(u.id)) {
    throw DataError("utterance id must be nonempty without whitespace", line);
  }
  if (u.intent.empty() || HasAsciiWhitespace(u.intent)) {
    throw DataError("utterance '" + u.id +
                        "': intent must be nonempty without whitespace",
                    line);
  }
  if (u.tokens.empty()) {
    throw DataError("utterance '" + u.id + "' has no tokens", line);
  }
  if (u.tokens.size() != u.slot_tags.size()) {
    throw DataError("utterance '" + u.id + "' has " +
                        std::to_string(u.tokens.size()) + " tokens but " +
                        std::to_string(u.slot_tags.size()) + " tags",
                    line);
  }
  for (const std::string& t : u.tokens) {
    if (t.empty() || HasAsciiWhitespace(t)) {
      throw DataError("utterance '" + u.id +
                          "': tokens must be nonempty without whitespace",
                      line);
    }
  }
  for (const std::string& tag : u.slot_tags) {
    if (!IsValidTag(tag)) {
      throw DataError("utterance '" + u.id + "': bad tag '" + tag + "'",
                      line);
    }
  }
  if (u.provenance) {
    if (u.provenance->source_id.empty() ||
        HasAsciiWhitespace(u.provenance->source_id)) {
      throw DataError("utterance '" + u.id + "': bad provenance source id",
                      line);
    }
  }
}

// --- CoNLL TSV -------------------------------------------------------------

struct Block {
  Utterance u;
  bool open = false;
  bool has_id = false;
  std::size_t first_line = 0;
  std::optional<std::string> source;
  std::optional<NoiseType> noise;
};

bool SplitMeta(std::string_view line, std::string_view& key,
               std::string_view& value) {
  // line starts with '#'
  std::string_view rest = Trim(line.substr(1));
  const std::size_t colon = rest.find(':');
  if (colon == std::string_view::npos) return false;
  key = Trim(rest.substr(0, colon));
  value = Trim(rest.substr(colon + 1));
  return true;
}

Dataset ParseConll(std::string_view text) {
  Dataset d;
  std::vector<std::string_view> lines = SplitLines(text);
  Block block;
  std::size_t n_blocks = 0;
  bool seen_block = false;

  auto finish = [&](std::size_t line_no) {
    if (!block.open) return;
    if (block.u.tokens.empty()) {
      throw DataError("utterance block without tokens", block.first_line);
    }
    if (block.u.intent.empty()) {
      throw DataError("utterance block without '# intent:'",
                      block.first_line);
    }
    if (block.source.has_value() != block.noise.has_value()) {
      throw DataError("'# source:' and '# noise:' must appear together",
                      block.first_line);
    }
    ++n_blocks;
    if (!block.has_id) block.u.id = "utt-" + std::to_string(n_blocks);
    if (block.source) {
      block.u.provenance = Provenance{*block.source, *block.noise};
    }
    CheckUtterance(block.u, block.first_line);
    d.utterances.push_back(std::move(block.u));
    block = Block{};
    (void)line_no;
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (Trim(line).empty()) {
      finish(line_no);
      continue;
    }
    // Tokens never contain spaces, so "# " always starts a comment; a bare
    // '#' followed by a tab is a token line.
    const bool comment =
        line.front() == '#' &&
        (line.starts_with("# ") || line.find('\t') == std::string_view::npos);
    if (comment) {
      std::string_view key, value;
      if (!SplitMeta(line, key, value)) continue;
      if (key == "dataset") {
        if (block.open || seen_block) {
          throw DataError("'# dataset:' must precede all utterances",
                          line_no);
        }
        d.name = std::string(value);
        continue;
      }
      if (key != "id" && key != "intent" && key != "source" &&
          key != "noise") {
        continue;
      }
      if (block.open && !block.u.tokens.empty()) {
        throw DataError("metadata line after tokens (missing blank line?)",
                        line_no);
      }
      if (!block.open) {
        block.open = true;
        block.first_line = line_no;
        seen_block = true;
      }
      if (key == "id") {
        if (block.has_id) throw DataError("duplicate '# id:' line", line_no);
        block.u.id = std::string(value);
        block.has_id = true;
      } else if (key == "intent") {
        if (!block.u.intent.empty()) {
          throw DataError("duplicate '# intent:' line", line_no);
        }
        block.u.intent = std::string(value);
      } else if (key == "source") {
        block.source = std::string(value);
      } else {
        const auto type = ParseNoiseType(value);
        if (!type) {
          throw DataError("unknown noise type '" + std::string(value) + "'",
                          line_no);
        }
        block.noise = *type;
      }
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      throw DataError("expected 'token<TAB>tag' (misaligned columns)",
                      line_no);
    }
    std::string_view token = line.substr(0, tab);
    std::string_view tag = line.substr(tab + 1);
    if (token.empty() || HasAsciiWhitespace(token)) {
      throw DataError("empty or whitespace-bearing token", line_no);
    }
    if (!IsValidTag(tag)) {
      throw DataError("unknown tag shape '" + std::string(tag) + "'",
                      line_no);
    }
    if (!block.open) {
      block.open = true;
      block.first_line = line_no;
      seen_block = true;
    }
    block.u.tokens.emplace_back(token);
    block.u.slot_tags.emplace_back(tag);
  }
  finish(lines.size() + 1);
  return d;
}

std::string WriteConll(const Dataset& d) {
  std::string out = "# dataset: " + d.name + "\n";
  for (const Utterance& u : d.utterances) {
    out += "\n# id: " + u.id + "\n# intent: " + u.intent + "\n";
    if (u.provenance) {
      out += "# source: " + u.provenance->source_id + "\n# noise: ";
      out += NoiseTypeName(u.provenance->noise_type);
      out += "\n";
    }
    for (std::size_t i = 0; i < u.tokens.size(); ++i) {
      out += u.tokens[i];
      out += '\t';
      out += u.slot_tags[i];
      out += '\n';
    }
  }
  return out;
}

// --- JSONL -------------------------------------------------------------

std::vector<std::string> StringArray(const ordered_json& j, const char* key,
                                     std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw DataError(std::string("missing array field '") + key + "'",
                    line_no);
  }
  std::vector<std::string> out;
  for (const auto& e : j[key]) {
    if (!e.is_string()) {
      throw DataError(std::string("non-string element in '") + key + "'",
                      line_no);
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::string StringField(const ordered_json& j, const char* key,
                        std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw DataError(std::string("missing string field '") + key + "'",
                    line_no);
  }
  return j[key].get<std::string>();
}

Dataset ParseJsonl(std::string_view text) {
  Dataset d;
  std::vector<std::string_view> lines = SplitLines(text);
  bool header_seen = false;
  std::size_t n = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (Trim(lines[i]).empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!j.is_object()) throw DataError("expected a JSON object", line_no);
    if (!header_seen && n == 0 && j.contains("dataset") &&
        !j.contains("tokens")) {
      d.name = StringField(j, "dataset", line_no);
      header_seen = true;
      continue;
    }
    ++n;
    Utterance u;
    u.id = j.contains("id") ? StringField(j, "id", line_no)
                            : "utt-" + std::to_string(n);
    u.intent = StringField(j, "intent", line_no);
    u.tokens = StringArray(j, "tokens", line_no);
    u.slot_tags = StringArray(j, "tags", line_no);
    const bool has_source = j.contains("source");
    if (has_source != j.contains("noise")) {
      throw DataError("'source' and 'noise' must appear together", line_no);
    }
    if (has_source) {
      const std::string noise = StringField(j, "noise", line_no);
      const auto type = ParseNoiseType(noise);
      if (!type) throw DataError("unknown noise type '" + noise + "'", line_no);
      u.provenance = Provenance{StringField(j, "source", line_no), *type};
    }
    CheckUtterance(u, line_no);
    d.utterances.push_back(std::move(u));
  }
  return d;
}

std::string WriteJsonl(const Dataset& d) {
  ordered_json header;
  header["dataset"] = d.name;
  std::string out = header.dump() + "\n";
  for (const Utterance& u : d.utterances) {
    ordered_json j;
    j["id"] = u.id;
    j["intent"] = u.intent;
    j["tokens"] = u.tokens;
    j["tags"] = u.slot_tags;
    if (u.provenance) {
      j["source"] = u.provenance->source_id;
      j["noise"] = std::string(NoiseTypeName(u.provenance->noise_type));
    }
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

void CheckUniqueIds(const Dataset& d) {
  std::unordered_set<std::string> seen;
  for (const Utterance& u : d.utterances) {
    if (!seen.insert(u.id).second) {
      throw DataError("duplicate utterance id '" + u.id + "'");
    }
  }
}

}  // namespace

std::string_view NoiseTypeName(NoiseType type) {
  return kNoiseNames[static_cast<int>(type)];
}

std::optional<NoiseType> ParseNoiseType(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    if (kNoiseNames[i] == name) return static_cast<NoiseType>(i);
  }
  if (name == "abbreviation") return NoiseType::kAbbreviation;
  if (name == "punc") return NoiseType::kPunctuation;
  return std::nullopt;
}

std::optional<DatasetFormat> ParseDatasetFormat(std::string_view name) {
  if (name == "conll" || name == "tsv" || name == "conll_tsv" ||
      name == "conll-tsv") {
    return DatasetFormat::kConllTsv;
  }
  if (name == "jsonl") return DatasetFormat::kJsonl;
  return std::nullopt;
}

bool IsValidTag(std::string_view tag) {
  if (tag == "O") return true;
  if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-') {
    return false;
  }
  return !HasAsciiWhitespace(tag.substr(2));
}

void ValidateUtterance(const Utterance& u) { CheckUtterance(u, 0); }

void ValidateDataset(const Dataset& d) {
  for (const Utterance& u : d.utterances) CheckUtterance(u, 0);
  CheckUniqueIds(d);
}

Dataset ParseDataset(std::string_view text, DatasetFormat format) {
  Dataset d = format == DatasetFormat::kConllTsv ? ParseConll(text)
                                                 : ParseJsonl(text);
  CheckUniqueIds(d);
  return d;
}

std::string WriteDataset(const Dataset& d, DatasetFormat format) {
  return format == DatasetFormat::kConllTsv ? WriteConll(d) : WriteJsonl(d);
}

std::vector<SlotSpan> ExtractSpans(std::span<const std::string> tags) {
  std::vector<SlotSpan> spans;
  std::string_view current;  // label of the open span, empty if none
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::string& tag = tags[i];
    if (tag == "O" || tag.size() < 3) {
      current = {};
      continue;
    }
    const std::string_view label = std::string_view(tag).substr(2);
    if (tag[0] == 'I' && !current.empty() && current == label) {
      spans.back().end = i + 1;
      continue;
    }
    spans.push_back(SlotSpan{std::string(label), i, i + 1, {}});
    current = spans.back().label;
  }
  return spans;
}

std::vector<SlotSpan> SlotSpans(const Utterance& u) {
  std::vector<SlotSpan> spans = ExtractSpans(u.slot_tags);
  for (SlotSpan& s : spans) {
    s.value = Join(std::span(u.tokens).subspan(s.start, s.end - s.start), " ");
  }
  return spans;
}

std::vector<std::size_t> CarrierIndices(const Utterance& u) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < u.slot_tags.size(); ++i) {
    if (u.slot_tags[i] == "O") out.push_back(i);
  }
  return out;
}

DatasetStats ComputeDatasetStats(const Dataset& d, const Dataset* reference) {
  if (d.utterances.empty()) {
    throw DataError("dataset '" + d.name + "' is empty; counts undefined");
  }
  std::set<std::string> intents, labels, values;
  for (const Utterance& u : d.utterances) {
    intents.insert(u.intent);
    for (SlotSpan& s : SlotSpans(u)) {
      labels.insert(s.label);
      values.insert(std::move(s.value));
    }
  }
  DatasetStats stats;
  stats.n_utt = d.utterances.size();
  stats.n_intents = intents.size();
  stats.n_slot_labels = labels.size();
  stats.n_slot_values = values.size();
  if (reference != nullptr) {
    std::unordered_map<std::string_view, const Utterance*> by_id;
    for (const Utterance& r : reference->utterances) by_id[r.id] = &r;
    double sum = 0.0;
    for (const Utterance& u : d.utterances) {
      const auto it = by_id.find(u.id);
      if (it == by_id.end()) {
        throw DataError("utterance '" + u.id + "' missing from reference");
      }
      sum += SentenceBleu(u.tokens, it->second->tokens);
    }
    stats.avg_bleu = sum / static_cast<double>(d.utterances.size());
  }
  return stats;
}

std::string FormatStatsTsv(const DatasetStats& stats) {
  char bleu[32];
  std::snprintf(bleu, sizeof(bleu), "%.6f", stats.avg_bleu);
  return "Utt\tIC\tSL\tSV\tBLEU\n" + std::to_string(stats.n_utt) + "\t" +
         std::to_string(stats.n_intents) + "\t" +
         std::to_string(stats.n_slot_labels) + "\t" +
         std::to_string(stats.n_slot_values) + "\t" + bleu + "\n";
}

}  // namespace nlunoise
