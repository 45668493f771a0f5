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


#include "nlunoise/augment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "nlunoise/errors.h"
#include "nlunoise/text.h"

namespace nlunoise {
namespace {

constexpr std::uint64_t kSampleStream = 0x61756730;  // "aug0"
constexpr std::uint64_t kInjectStream = 0x61756731;  // "aug1"

std::optional<NoisePlan> FindPreset(std::string_view name) {
  NoisePlan plan;
  if (name == "uniform") {
    for (NoiseType t : kAllNoiseTypes) plan.proportions[t] = 0.10;
    return plan;
  }
  if (name == "bp_atis" || name == "bp-atis" || name == "bp_snips" ||
      name == "bp-snips") {
    plan.proportions = {
        {NoiseType::kAbbreviation, 0.15}, {NoiseType::kCasing, 0.50},
        {NoiseType::kMisspelling, 0.20},  {NoiseType::kMorph, 0.10},
        {NoiseType::kParaphrase, 0.15},   {NoiseType::kPunctuation, 0.15},
        {NoiseType::kSynonym, 0.10},
    };
    if (name.ends_with("snips")) plan.proportions.erase(NoiseType::kPunctuation);
    return plan;
  }
  return std::nullopt;
}

double ParseUnitValue(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("not a number: '" + std::string(s) + "'", line);
  }
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DataError("value out of [0, 1]: '" + std::string(s) + "'", line);
  }
  return v;
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

void NoisePlan::Validate() const {
  for (const auto* m : {&proportions, &rates}) {
    for (const auto& [type, value] : *m) {
      if (type == NoiseType::kOriginal) {
        throw std::invalid_argument("plan cannot contain 'original'");
      }
      if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("plan value for " +
                                    std::string(NoiseTypeName(type)) +
                                    " outside [0, 1]");
      }
    }
  }
}

NoisePlan PresetPlan(std::string_view name) {
  if (auto plan = FindPreset(name)) return *plan;
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

NoisePlan ParsePlanConfig(std::string_view text) {
  NoisePlan plan;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    std::string_view s = lines[i];
    if (const std::size_t hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = Trim(s);
    if (s.empty()) continue;
    const std::size_t eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw DataError("expected 'key = value'", line);
    }
    const std::string_view key = Trim(s.substr(0, eq));
    const std::string_view value = Trim(s.substr(eq + 1));
    if (key == "preset") {
      auto base = FindPreset(value);
      if (!base) {
        throw DataError("unknown preset '" + std::string(value) + "'", line);
      }
      for (const auto& [t, r] : base->proportions) plan.proportions[t] = r;
      continue;
    }
    const bool is_rate = key.ends_with(".rate");
    const std::string_view type_name =
        is_rate ? key.substr(0, key.size() - 5) : key;
    const auto type = ParseNoiseType(type_name);
    if (!type || *type == NoiseType::kOriginal) {
      throw DataError("unknown noise type '" + std::string(type_name) + "'",
                      line);
    }
    (is_rate ? plan.rates : plan.proportions)[*type] =
        ParseUnitValue(value, line);
  }
  return plan;
}

NoisePlan ResolvePlan(const std::string& preset_or_path) {
  if (auto plan = FindPreset(preset_or_path)) return *plan;
  if (!std::filesystem::exists(preset_or_path)) {
    throw ResourceError("plan '" + preset_or_path +
                        "' is neither a preset nor a readable file");
  }
  return ParsePlanConfig(ReadFile(preset_or_path));
}

std::vector<SearchRange> EnumerateSearchSpace() {
  return {
      {NoiseType::kCasing, {0.15, 0.25, 0.50, 1.00}},
      {NoiseType::kMisspelling, {0.10, 0.15, 0.20, 0.25, 0.30}},
      {NoiseType::kAbbreviation, {0.10, 0.15, 0.20, 0.25}},
      {NoiseType::kMorph, {0.10, 0.20, 0.25, 0.30, 0.50}},
      {NoiseType::kSynonym, {0.10, 0.20, 0.25, 0.30, 0.50}},
      {NoiseType::kParaphrase, {0.05, 0.10, 0.15, 0.20}},
  };
}

InjectorKind AugmentInjector(NoiseType type) {
  switch (type) {
    case NoiseType::kAbbreviation:
      return InjectorKind::kAbbreviation;
    case NoiseType::kCasing:
      return InjectorKind::kCasingTokens;
    case NoiseType::kMisspelling:
      return InjectorKind::kMisspellSynthetic;
    case NoiseType::kMorph:
      return InjectorKind::kMorph;
    case NoiseType::kParaphrase:
      return InjectorKind::kParaphrase;
    case NoiseType::kPunctuation:
      return InjectorKind::kPunctuation;
    case NoiseType::kSynonym:
      return InjectorKind::kSynonym;
    case NoiseType::kOriginal:
      break;
  }
  throw std::invalid_argument("no injector for 'original'");
}

InjectorConfig AugmentInjectorConfig(NoiseType type, const NoisePlan& plan) {
  InjectorConfig cfg = DefaultInjectorConfig(AugmentInjector(type));
  if (type == NoiseType::kCasing) cfg.rate = 1.0;
  if (const auto it = plan.rates.find(type); it != plan.rates.end()) {
    cfg.rate = it->second;
  }
  return cfg;
}

std::string AugmentationReportToJson(const AugmentationReport& report) {
  nlohmann::ordered_json j;
  j["original_size"] = report.original_size;
  j["final_size"] = report.final_size;
  nlohmann::ordered_json types = nlohmann::ordered_json::object();
  for (const auto& [type, r] : report.per_type) {
    types[std::string(NoiseTypeName(type))] = {{"proportion", r.proportion},
                                               {"requested", r.requested},
                                               {"achieved", r.achieved},
                                               {"rejected", r.rejected}};
  }
  j["types"] = std::move(types);
  return j.dump(2) + "\n";
}

std::string AugmentationReportToTsv(const AugmentationReport& report) {
  std::string out = "type\tproportion\trequested\tachieved\trejected\n";
  std::size_t requested = 0, achieved = 0, rejected = 0;
  for (const auto& [type, r] : report.per_type) {
    out += std::string(NoiseTypeName(type)) + "\t" + Fixed(r.proportion, 4) +
           "\t" + std::to_string(r.requested) + "\t" +
           std::to_string(r.achieved) + "\t" + std::to_string(r.rejected) +
           "\n";
    requested += r.requested;
    achieved += r.achieved;
    rejected += r.rejected;
  }
  out += "total\t\t" + std::to_string(requested) + "\t" +
         std::to_string(achieved) + "\t" + std::to_string(rejected) + "\n";
  return out;
}

AugmentedDataset BuildAugmented(const Dataset& d, const NoisePlan& plan,
                                const NoiseResources& resources,
                                std::uint64_t seed, int jobs) {
  plan.Validate();
  const std::size_t n = d.utterances.size();
  for (const auto& [type, r] : plan.proportions) {
    if (r > 0.0) CheckResources(AugmentInjector(type), resources);
  }

  AugmentedDataset out;
  out.dataset = d;
  out.report.original_size = n;
  std::set<std::string> ids;
  for (const Utterance& u : d.utterances) ids.insert(u.id);

  for (NoiseType type : kAllNoiseTypes) {
    const auto it = plan.proportions.find(type);
    if (it == plan.proportions.end()) continue;
    TypeReport& report = out.report.per_type[type];
    report.proportion = it->second;
    report.requested = static_cast<std::size_t>(
        std::floor(it->second * static_cast<double>(n) + 1e-9));
    report.requested = std::min(report.requested, n);
    if (report.requested == 0) continue;

    const auto type_id = static_cast<std::uint64_t>(type);
    Rng sampler = Rng::ForStream(seed, {kSampleStream, type_id});
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < report.requested; ++i) {
      const std::size_t j = i + sampler.UniformIndex(n - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(report.requested);
    std::sort(pool.begin(), pool.end());

    const InjectorKind kind = AugmentInjector(type);
    const InjectorConfig cfg = AugmentInjectorConfig(type, plan);
    std::vector<InjectionOutcome> outcomes(pool.size());
    ParallelFor(pool.size(), jobs, [&](std::size_t k) {
      Rng rng = Rng::ForStream(seed, {kInjectStream, type_id, pool[k]});
      outcomes[k] = ApplyInjector(kind, d.utterances[pool[k]], cfg, resources,
                                  rng);
    });

    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (!outcomes[k].utterance) {
        ++report.rejected;
        continue;
      }
      const Utterance& source = d.utterances[pool[k]];
      Utterance u = std::move(*outcomes[k].utterance);
      const std::string base = source.id + "~" + std::string(NoiseTypeName(type));
      u.id = base;
      for (int suffix = 2; ids.contains(u.id); ++suffix) {
        u.id = base + "~" + std::to_string(suffix);
      }
      ids.insert(u.id);
      u.provenance = Provenance{source.id, type};
      out.dataset.utterances.push_back(std::move(u));
      ++report.achieved;
    }
  }
  out.report.final_size = out.dataset.utterances.size();
  return out;
}

}  // namespace nlunoise
