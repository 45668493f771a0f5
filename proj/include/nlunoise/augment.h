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


// Noise-augmented training sets: for each noise type a fraction of the
// utterances is sampled, noised and appended next to the originals.

#ifndef NLUNOISE_AUGMENT_H_
#define NLUNOISE_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nlunoise/corpus.h"
#include "nlunoise/noise.h"

namespace nlunoise {

struct NoisePlan {
  // Fraction of the input to sample for each type.
  std::map<NoiseType, double> proportions;
  // Optional per-type override of the injector rate.
  std::map<NoiseType, double> rates;

  // Throws std::invalid_argument for out-of-range values or kOriginal.
  void Validate() const;
};

// "uniform", "bp_atis" / "bp-atis", "bp_snips" / "bp-snips". Throws
// std::invalid_argument for other names.
NoisePlan PresetPlan(std::string_view name);

// Lines of "key = value"; '#' starts a comment. Keys: "preset" (base plan),
// "<type>" (proportion) and "<type>.rate". Throws DataError with the line.
NoisePlan ParsePlanConfig(std::string_view text);

// A preset name, or else the path of a plan config file.
NoisePlan ResolvePlan(const std::string& preset_or_path);

struct SearchRange {
  NoiseType type;
  std::vector<double> rates;
};

// Candidate rates of the one-type-at-a-time tuning sweep.
std::vector<SearchRange> EnumerateSearchSpace();

// Injector used when augmenting with `type`, and its configuration.
InjectorKind AugmentInjector(NoiseType type);
InjectorConfig AugmentInjectorConfig(NoiseType type, const NoisePlan& plan);

struct TypeReport {
  double proportion = 0.0;
  std::size_t requested = 0;
  std::size_t achieved = 0;
  std::size_t rejected = 0;
};

struct AugmentationReport {
  std::map<NoiseType, TypeReport> per_type;
  std::size_t original_size = 0;
  std::size_t final_size = 0;
};

std::string AugmentationReportToJson(const AugmentationReport& report);
std::string AugmentationReportToTsv(const AugmentationReport& report);

struct AugmentedDataset {
  Dataset dataset;
  AugmentationReport report;
};

// Originals first, then each type in canonical order. For type t,
// floor(r_t * |d|) sources are drawn without replacement; successful copies
// get the id "<source>~<type>" and provenance (source, t). Throws
// ResourceError when an active type lacks its resources.
AugmentedDataset BuildAugmented(const Dataset& d, const NoisePlan& plan,
                                const NoiseResources& resources,
                                std::uint64_t seed, int jobs = 1);

}  // namespace nlunoise

#endif  // NLUNOISE_AUGMENT_H_
