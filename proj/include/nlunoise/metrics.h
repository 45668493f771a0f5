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

#ifndef NLUNOISE_METRICS_H_
#define NLUNOISE_METRICS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "nlunoise/corpus.h"

namespace nlunoise {

// Percentage of exact intent matches. Throws std::invalid_argument on
// empty or unequal-length input.
double IntentAccuracy(std::span<const std::string> gold,
                      std::span<const std::string> pred);

struct SpanCounts {
  std::size_t true_positives = 0;
  std::size_t n_gold = 0;
  std::size_t n_pred = 0;

  // Percentages. F1 is 100 when both span sets are empty.
  double Precision() const;
  double Recall() const;
  double F1() const;
};

// Exact (label, start, end) span matching under lenient IOB2 decoding,
// accumulated over all sequences. Throws std::invalid_argument when a gold
// and predicted sequence differ in length.
SpanCounts CountSpanMatches(std::span<const std::vector<std::string>> gold,
                            std::span<const std::vector<std::string>> pred);

// Micro span F1, as a percentage.
double SlotF1(std::span<const std::vector<std::string>> gold,
              std::span<const std::vector<std::string>> pred);

struct BleuOptions {
  int max_order = 4;
  double epsilon = 1e-9;  // numerator used for n-gram orders with no match
};

// Case-sensitive sentence BLEU with uniform weights and brevity penalty.
// The effective order is min(max_order, |hyp|, |ref|) so that identical
// short sentences still score 1. Orders with zero clipped matches use
// epsilon / total in place of 0. Empty hypothesis scores 0; an empty
// reference throws std::invalid_argument.
double SentenceBleu(std::span<const std::string> hypothesis,
                    std::span<const std::string> reference,
                    const BleuOptions& options = {});

struct EvalReport {
  double ic_accuracy = 0.0;
  double sl_f1 = 0.0;
  std::map<std::string, double> per_intent_accuracy;  // keyed by gold intent
  std::map<std::string, double> per_label_f1;  // labels seen in gold or pred
  std::size_t n_examples = 0;
};

// Joins predictions to gold by utterance id. Throws DataError naming the
// unmatched ids, or a per-utterance token count mismatch.
EvalReport Evaluate(const Dataset& gold, const Dataset& pred);

std::string EvalReportToTsv(const EvalReport& report);
std::string EvalReportToJson(const EvalReport& report);

}  // namespace nlunoise

#endif  // NLUNOISE_METRICS_H_
