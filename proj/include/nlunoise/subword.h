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


// WordPiece tokenization and stochastic sub-word regularization: a word is
// tokenized either as a whole or through one manual split, each split
// weighted at a quarter of the unsplit tokenization.

#ifndef NLUNOISE_SUBWORD_H_
#define NLUNOISE_SUBWORD_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlunoise/rng.h"

namespace nlunoise {

inline constexpr std::string_view kContinuationPrefix = "##";
inline constexpr std::size_t kMaxWordpieceChars = 100;

class WordPieceVocab {
 public:
  WordPieceVocab() = default;
  explicit WordPieceVocab(std::vector<std::string> tokens,
                          std::string unk = "[UNK]");

  // One token per line (BERT vocab.txt). Throws ResourceError if the file
  // is missing or holds no tokens.
  static WordPieceVocab Load(const std::string& path);

  bool Contains(std::string_view token) const {
    return tokens_.find(token) != tokens_.end();
  }
  const std::string& unk() const { return unk_; }
  std::size_t size() const { return tokens_.size(); }

 private:
  std::set<std::string, std::less<>> tokens_;
  std::string unk_ = "[UNK]";
};

// Greedy longest-match-first. Pieces after the first carry "##"; with
// `continuation` the first piece does too. A word that cannot be covered
// (or exceeds kMaxWordpieceChars code points) becomes a single unk token.
std::vector<std::string> WordpieceTokenize(std::string_view word,
                                           const WordPieceVocab& vocab,
                                           bool continuation = false);

// (word[..i], word[i..]) for every internal code point boundary i.
std::vector<std::pair<std::string, std::string>> EnumerateManualSplits(
    std::string_view word);

struct SubwordEntry {
  std::vector<std::string> tokens;
  double probability = 0.0;
  // Integer mass out of SubwordDistribution::denominator.
  std::size_t weight = 0;
};

struct SubwordDistribution {
  // Original tokenization first, then alternatives by first split index.
  std::vector<SubwordEntry> entries;
  std::size_t original_index = 0;
  // Number of manual splits; the original has weight 4 and each split 1.
  std::size_t k = 0;
  std::size_t denominator = 4;
};

// Splits tokenize as WordpieceTokenize(left) + WordpieceTokenize(right,
// continuation=true). Identical tokenizations are merged by summing mass.
SubwordDistribution BsrDistribution(std::string_view word,
                                    const WordPieceVocab& vocab);

// Draws one tokenization of `word` according to BsrDistribution.
std::vector<std::string> BsrSample(std::string_view word,
                                   const WordPieceVocab& vocab, Rng& rng);

// Strips "##" and concatenates.
std::string Detokenize(const std::vector<std::string>& pieces);

}  // namespace nlunoise

#endif  // NLUNOISE_SUBWORD_H_
