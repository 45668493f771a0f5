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


#include "nlunoise/trainaux.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "nlunoise/errors.h"

namespace nlunoise {
namespace {

double MeanDistance(const std::vector<LogitPair>& pairs, const char* side) {
  if (pairs.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const LogitPair& p = pairs[i];
    if (p.clean.size() != p.noised.size()) {
      throw std::invalid_argument(std::string(side) + " pair " +
                                  std::to_string(i) + ": dimension mismatch");
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < p.clean.size(); ++k) {
      const double diff = p.clean[k] - p.noised[k];
      sq += diff * diff;
    }
    total += std::sqrt(sq);
  }
  return total / static_cast<double>(pairs.size());
}

std::vector<LogitPair> ParsePairs(const nlohmann::json& j, const char* key) {
  std::vector<LogitPair> pairs;
  if (!j.contains(key)) return pairs;
  const nlohmann::json& arr = j.at(key);
  if (!arr.is_array()) throw DataError(std::string(key) + " must be an array");
  for (const nlohmann::json& pair : arr) {
    if (!pair.is_array() || pair.size() != 2) {
      throw DataError(std::string(key) + ": each entry must be [clean, noised]");
    }
    LogitPair p;
    try {
      p.clean = pair[0].get<std::vector<double>>();
      p.noised = pair[1].get<std::vector<double>>();
    } catch (const nlohmann::json::exception&) {
      throw DataError(std::string(key) + ": logits must be number arrays");
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace

double AlpLoss(const LogitPairBatch& batch) {
  if (batch.intent_pairs.empty() && batch.slot_pairs.empty()) {
    throw std::invalid_argument("AlpLoss: batch has no pairs");
  }
  return MeanDistance(batch.intent_pairs, "intent") +
         MeanDistance(batch.slot_pairs, "slot");
}

LogitPairBatch ParseLogitPairBatchJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DataError("logit batch must be a JSON object");
  LogitPairBatch batch;
  batch.intent_pairs = ParsePairs(j, "intent_pairs");
  batch.slot_pairs = ParsePairs(j, "slot_pairs");
  return batch;
}

}  // namespace nlunoise
