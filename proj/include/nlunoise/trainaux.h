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


// Adversarial logit pairing loss over (clean, noised) logit vectors.

#ifndef NLUNOISE_TRAINAUX_H_
#define NLUNOISE_TRAINAUX_H_

#include <string_view>
#include <vector>

namespace nlunoise {

struct LogitPair {
  std::vector<double> clean;
  std::vector<double> noised;
};

struct LogitPairBatch {
  std::vector<LogitPair> intent_pairs;
  std::vector<LogitPair> slot_pairs;
};

// Mean L2 distance of the intent pairs plus mean L2 distance of the slot
// pairs; an empty side contributes 0. Throws std::invalid_argument when a
// pair has mismatched dimensions or the batch has no pairs.
double AlpLoss(const LogitPairBatch& batch);

// {"intent_pairs": [[[...], [...]], ...], "slot_pairs": [...]}; either key
// may be omitted. Throws DataError on malformed input.
LogitPairBatch ParseLogitPairBatchJson(std::string_view text);

}  // namespace nlunoise

#endif  // NLUNOISE_TRAINAUX_H_
