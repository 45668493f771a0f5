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


#include "nlunoise/subword.h"

#include <algorithm>

#include "nlunoise/errors.h"
#include "nlunoise/text.h"

namespace nlunoise {

WordPieceVocab::WordPieceVocab(std::vector<std::string> tokens,
                               std::string unk)
    : tokens_(std::make_move_iterator(tokens.begin()),
              std::make_move_iterator(tokens.end())),
      unk_(std::move(unk)) {}

WordPieceVocab WordPieceVocab::Load(const std::string& path) {
  const std::string text = ReadFile(path);
  std::vector<std::string> tokens;
  for (std::string_view line : SplitLines(text)) {
    const std::string_view t = Trim(line);
    if (!t.empty()) tokens.emplace_back(t);
  }
  if (tokens.empty()) throw ResourceError("vocab file is empty: " + path);
  return WordPieceVocab(std::move(tokens));
}

std::vector<std::string> WordpieceTokenize(std::string_view word,
                                           const WordPieceVocab& vocab,
                                           bool continuation) {
  const std::vector<std::size_t> bounds = CodePointBoundaries(word);
  const std::size_t n_chars = bounds.size() - 1;
  if (n_chars == 0 || n_chars > kMaxWordpieceChars) return {vocab.unk()};

  std::vector<std::string> pieces;
  std::size_t start = 0;  // index into bounds
  while (start < n_chars) {
    bool found = false;
    for (std::size_t end = n_chars; end > start; --end) {
      std::string piece(word.substr(bounds[start],
                                    bounds[end] - bounds[start]));
      if (start > 0 || continuation) piece.insert(0, kContinuationPrefix);
      if (vocab.Contains(piece)) {
        pieces.push_back(std::move(piece));
        start = end;
        found = true;
        break;
      }
    }
    if (!found) return {vocab.unk()};
  }
  return pieces;
}

std::vector<std::pair<std::string, std::string>> EnumerateManualSplits(
    std::string_view word) {
  const std::vector<std::size_t> bounds = CodePointBoundaries(word);
  std::vector<std::pair<std::string, std::string>> splits;
  for (std::size_t i = 1; i + 1 < bounds.size(); ++i) {
    splits.emplace_back(std::string(word.substr(0, bounds[i])),
                        std::string(word.substr(bounds[i])));
  }
  return splits;
}

SubwordDistribution BsrDistribution(std::string_view word,
                                    const WordPieceVocab& vocab) {
  SubwordDistribution dist;
  dist.entries.push_back({WordpieceTokenize(word, vocab), 0.0, 4});
  const auto splits = EnumerateManualSplits(word);
  dist.k = splits.size();
  dist.denominator = 4 + dist.k;
  for (const auto& [left, right] : splits) {
    std::vector<std::string> tokens = WordpieceTokenize(left, vocab);
    const std::vector<std::string> tail = WordpieceTokenize(right, vocab, true);
    tokens.insert(tokens.end(), tail.begin(), tail.end());
    auto it = std::find_if(
        dist.entries.begin(), dist.entries.end(),
        [&](const SubwordEntry& e) { return e.tokens == tokens; });
    if (it != dist.entries.end()) {
      ++it->weight;
    } else {
      dist.entries.push_back({std::move(tokens), 0.0, 1});
    }
  }
  for (SubwordEntry& e : dist.entries) {
    e.probability = static_cast<double>(e.weight) /
                    static_cast<double>(dist.denominator);
  }
  return dist;
}

std::vector<std::string> BsrSample(std::string_view word,
                                   const WordPieceVocab& vocab, Rng& rng) {
  SubwordDistribution dist = BsrDistribution(word, vocab);
  std::size_t r = rng.UniformIndex(dist.denominator);
  for (SubwordEntry& e : dist.entries) {
    if (r < e.weight) return std::move(e.tokens);
    r -= e.weight;
  }
  return std::move(dist.entries.back().tokens);
}

std::string Detokenize(const std::vector<std::string>& pieces) {
  std::string out;
  for (const std::string& p : pieces) {
    out += std::string_view(p).starts_with(kContinuationPrefix)
               ? std::string_view(p).substr(kContinuationPrefix.size())
               : std::string_view(p);
  }
  return out;
}

}  // namespace nlunoise
