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

#include "nlunoise/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "json.hpp"
#include "nlunoise/errors.h"
#include "nlunoise/text.h"

namespace nlunoise {
namespace {

using SpanKey = std::tuple<std::string, std::size_t, std::size_t>;

std::set<SpanKey> SpanSet(std::span<const std::string> tags) {
  std::set<SpanKey> out;
  for (SlotSpan& s : ExtractSpans(tags)) {
    out.emplace(std::move(s.label), s.start, s.end);
  }
  return out;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) /
                              static_cast<double>(den);
}

// Counts of each n-gram of order n in `tokens`, keyed by joined text.
std::unordered_map<std::string, std::size_t> NgramCounts(
    std::span<const std::string> tokens, std::size_t n) {
  std::unordered_map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      key += tokens[i + k];
      key += '\x1f';
    }
    ++counts[key];
  }
  return counts;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

double IntentAccuracy(std::span<const std::string> gold,
                      std::span<const std::string> pred) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("IntentAccuracy: length mismatch");
  }
  if (gold.empty()) throw std::invalid_argument("IntentAccuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == pred[i];
  return Ratio(hits, gold.size());
}

double SpanCounts::Precision() const { return Ratio(true_positives, n_pred); }
double SpanCounts::Recall() const { return Ratio(true_positives, n_gold); }

double SpanCounts::F1() const {
  if (n_gold == 0 && n_pred == 0) return 100.0;
  const double p = Precision();
  const double r = Recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

SpanCounts CountSpanMatches(std::span<const std::vector<std::string>> gold,
                            std::span<const std::vector<std::string>> pred) {
  if (gold.size() != pred.size()) {
    throw std::invalid_argument("CountSpanMatches: sequence count mismatch");
  }
  SpanCounts counts;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw std::invalid_argument("CountSpanMatches: length mismatch in pair " +
                                  std::to_string(i));
    }
    const std::set<SpanKey> g = SpanSet(gold[i]);
    const std::set<SpanKey> p = SpanSet(pred[i]);
    counts.n_gold += g.size();
    counts.n_pred += p.size();
    for (const SpanKey& k : p) counts.true_positives += g.count(k);
  }
  return counts;
}

double SlotF1(std::span<const std::vector<std::string>> gold,
              std::span<const std::vector<std::string>> pred) {
  return CountSpanMatches(gold, pred).F1();
}

double SentenceBleu(std::span<const std::string> hypothesis,
                    std::span<const std::string> reference,
                    const BleuOptions& options) {
  if (reference.empty()) {
    throw std::invalid_argument("SentenceBleu: empty reference");
  }
  if (hypothesis.empty()) return 0.0;
  const std::size_t order =
      std::min({static_cast<std::size_t>(options.max_order), hypothesis.size(),
                reference.size()});
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= order; ++n) {
    const auto hyp = NgramCounts(hypothesis, n);
    const auto ref = NgramCounts(reference, n);
    std::size_t matches = 0;
    for (const auto& [gram, count] : hyp) {
      const auto it = ref.find(gram);
      if (it != ref.end()) matches += std::min(count, it->second);
    }
    const double total = static_cast<double>(hypothesis.size() - n + 1);
    const double numerator =
        matches > 0 ? static_cast<double>(matches) : options.epsilon;
    log_sum += std::log(numerator / total);
  }
  const double c = static_cast<double>(hypothesis.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c > r ? 1.0 : std::exp(1.0 - r / c);
  return brevity * std::exp(log_sum / static_cast<double>(order));
}

EvalReport Evaluate(const Dataset& gold, const Dataset& pred) {
  if (gold.utterances.empty()) {
    throw DataError("gold dataset is empty");
  }
  std::unordered_map<std::string_view, const Utterance*> pred_by_id;
  for (const Utterance& u : pred.utterances) pred_by_id[u.id] = &u;

  std::vector<std::string> missing;
  std::set<std::string_view> gold_ids;
  for (const Utterance& g : gold.utterances) {
    gold_ids.insert(g.id);
    if (!pred_by_id.contains(g.id)) missing.push_back(g.id);
  }
  std::vector<std::string> extra;
  for (const Utterance& p : pred.utterances) {
    if (!gold_ids.contains(p.id)) extra.push_back(p.id);
  }
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "prediction/gold id mismatch;";
    if (!missing.empty()) {
      msg += " missing predictions: " + Join(missing, ",") + ";";
    }
    if (!extra.empty()) msg += " unknown ids: " + Join(extra, ",") + ";";
    throw DataError(msg);
  }

  std::vector<std::string> gold_intents, pred_intents;
  std::vector<std::vector<std::string>> gold_tags, pred_tags;
  for (const Utterance& g : gold.utterances) {
    const Utterance& p = *pred_by_id.at(g.id);
    if (p.slot_tags.size() != g.slot_tags.size()) {
      throw DataError("utterance '" + g.id + "': predicted " +
                      std::to_string(p.slot_tags.size()) + " tags for " +
                      std::to_string(g.slot_tags.size()) + " tokens");
    }
    gold_intents.push_back(g.intent);
    pred_intents.push_back(p.intent);
    gold_tags.push_back(g.slot_tags);
    pred_tags.push_back(p.slot_tags);
  }

  EvalReport report;
  report.n_examples = gold_intents.size();
  report.ic_accuracy = IntentAccuracy(gold_intents, pred_intents);
  report.sl_f1 = SlotF1(gold_tags, pred_tags);

  std::map<std::string, std::pair<std::size_t, std::size_t>> intent_hits;
  for (std::size_t i = 0; i < gold_intents.size(); ++i) {
    auto& [hits, total] = intent_hits[gold_intents[i]];
    hits += gold_intents[i] == pred_intents[i];
    ++total;
  }
  for (const auto& [intent, ht] : intent_hits) {
    report.per_intent_accuracy[intent] = Ratio(ht.first, ht.second);
  }

  std::map<std::string, SpanCounts> per_label;
  for (std::size_t i = 0; i < gold_tags.size(); ++i) {
    const std::set<SpanKey> g = SpanSet(gold_tags[i]);
    const std::set<SpanKey> p = SpanSet(pred_tags[i]);
    for (const SpanKey& k : g) ++per_label[std::get<0>(k)].n_gold;
    for (const SpanKey& k : p) {
      SpanCounts& c = per_label[std::get<0>(k)];
      ++c.n_pred;
      c.true_positives += g.count(k);
    }
  }
  for (const auto& [label, counts] : per_label) {
    report.per_label_f1[label] = counts.F1();
  }
  return report;
}

std::string EvalReportToTsv(const EvalReport& report) {
  std::string out = "metric\tkey\tvalue\n";
  out += "n_examples\t\t" + std::to_string(report.n_examples) + "\n";
  out += "ic_accuracy\t\t" + Fixed(report.ic_accuracy, 4) + "\n";
  out += "sl_f1\t\t" + Fixed(report.sl_f1, 4) + "\n";
  for (const auto& [intent, acc] : report.per_intent_accuracy) {
    out += "intent_accuracy\t" + intent + "\t" + Fixed(acc, 4) + "\n";
  }
  for (const auto& [label, f1] : report.per_label_f1) {
    out += "label_f1\t" + label + "\t" + Fixed(f1, 4) + "\n";
  }
  return out;
}

std::string EvalReportToJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["n_examples"] = report.n_examples;
  j["ic_accuracy"] = report.ic_accuracy;
  j["sl_f1"] = report.sl_f1;
  j["per_intent_accuracy"] = report.per_intent_accuracy;
  j["per_label_f1"] = report.per_label_f1;
  return j.dump(2) + "\n";
}

}  // namespace nlunoise
