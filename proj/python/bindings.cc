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


#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nlunoise/augment.h"
#include "nlunoise/corpus.h"
#include "nlunoise/errors.h"
#include "nlunoise/lexicons.h"
#include "nlunoise/metrics.h"
#include "nlunoise/noise.h"
#include "nlunoise/subword.h"
#include "nlunoise/text.h"
#include "nlunoise/trainaux.h"

namespace py = pybind11;

namespace nlunoise {
namespace {

DatasetFormat Format(const std::string& name) {
  const auto f = ParseDatasetFormat(name);
  if (!f) throw std::invalid_argument("unknown format: " + name);
  return *f;
}

Dataset ToDataset(const std::vector<Utterance>& utterances) {
  Dataset d;
  d.utterances = utterances;
  return d;
}

// Calls back into Python; safe from worker threads.
class PyScorer : public FluencyScorer {
 public:
  explicit PyScorer(py::function fn) : fn_(std::move(fn)) {}
  double Score(std::span<const std::string> tokens) const override {
    py::gil_scoped_acquire gil;
    return fn_(std::vector<std::string>(tokens.begin(), tokens.end()))
        .cast<double>();
  }

 private:
  py::function fn_;
};

struct Resources {
  std::optional<SynonymLexicon> synonyms;
  std::optional<MorphLexicon> morph;
  std::optional<AbbreviationKb> abbreviations;
  std::optional<MisspellingDb> misspellings;
  std::optional<FileParaphraseProvider> paraphrases;
  std::unique_ptr<FluencyScorer> scorer;
  NoiseResources view;
};

void LoadResources(Resources& r, const Dataset& input,
                   const std::optional<std::string>& wordnet,
                   const std::optional<std::string>& misspellings,
                   const std::optional<std::string>& paraphrases,
                   const std::optional<py::function>& scorer) {
  if (wordnet) {
    r.synonyms = LoadWordNet(*wordnet);
    r.view.synonyms = &*r.synonyms;
  }
  if (misspellings) {
    r.misspellings = LoadMisspellingDb(*misspellings);
    r.view.misspellings = &*r.misspellings;
  }
  if (paraphrases) {
    r.paraphrases = FileParaphraseProvider::Load(*paraphrases);
    r.view.paraphrases = &*r.paraphrases;
  }
  r.morph = DefaultMorphLexicon();
  r.view.morph = &*r.morph;
  r.abbreviations = DefaultAbbreviationKb();
  r.view.abbreviations = &*r.abbreviations;
  if (scorer) {
    r.scorer = std::make_unique<PyScorer>(*scorer);
  } else if (!input.utterances.empty()) {
    r.scorer = std::make_unique<NgramScorer>(input, 2);
  }
  r.view.scorer = r.scorer.get();
}

NoisePlan PlanFromDict(const std::map<std::string, double>& proportions) {
  NoisePlan plan;
  for (const auto& [name, value] : proportions) {
    const auto t = ParseNoiseType(name);
    if (!t) throw std::invalid_argument("unknown noise type: " + name);
    plan.proportions[*t] = value;
  }
  return plan;
}

}  // namespace
}  // namespace nlunoise

PYBIND11_MODULE(_core, m) {
  using namespace nlunoise;
  m.doc() = "Noise injection, augmentation and evaluation for NLU datasets";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_OSError);

  py::class_<Utterance>(m, "Utterance")
      .def(py::init<>())
      .def(py::init([](std::string id, std::string intent,
                       std::vector<std::string> tokens,
                       std::vector<std::string> tags) {
             Utterance u;
             u.id = std::move(id);
             u.intent = std::move(intent);
             u.tokens = std::move(tokens);
             u.slot_tags = std::move(tags);
             ValidateUtterance(u);
             return u;
           }),
           py::arg("id"), py::arg("intent"), py::arg("tokens"),
           py::arg("slot_tags"))
      .def_readwrite("id", &Utterance::id)
      .def_readwrite("intent", &Utterance::intent)
      .def_readwrite("tokens", &Utterance::tokens)
      .def_readwrite("slot_tags", &Utterance::slot_tags)
      .def_property_readonly(
          "provenance",
          [](const Utterance& u) -> std::optional<std::tuple<std::string, std::string>> {
            if (!u.provenance) return std::nullopt;
            return std::make_tuple(
                u.provenance->source_id,
                std::string(NoiseTypeName(u.provenance->noise_type)));
          })
      .def("spans",
           [](const Utterance& u) {
             std::vector<std::tuple<std::string, std::size_t, std::size_t, std::string>> out;
             for (const SlotSpan& s : SlotSpans(u)) {
               out.emplace_back(s.label, s.start, s.end, s.value);
             }
             return out;
           })
      .def(py::self == py::self)
      .def("__repr__", [](const Utterance& u) {
        return "<Utterance " + u.id + " " + u.intent + ": " +
               Join(u.tokens, " ") + ">";
      });

  m.def("parse_dataset",
        [](const std::string& text, const std::string& format) {
          return ParseDataset(text, Format(format)).utterances;
        },
        py::arg("text"), py::arg("format") = "conll");
  m.def("write_dataset",
        [](const std::vector<Utterance>& utterances, const std::string& format,
           const std::string& name) {
          Dataset d = ToDataset(utterances);
          d.name = name;
          return WriteDataset(d, Format(format));
        },
        py::arg("utterances"), py::arg("format") = "conll",
        py::arg("name") = "");
  m.def("extract_spans",
        [](const std::vector<std::string>& tags) {
          std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
          for (const SlotSpan& s : ExtractSpans(tags)) {
            out.emplace_back(s.label, s.start, s.end);
          }
          return out;
        },
        py::arg("tags"));

  m.def("sentence_bleu",
        [](const std::vector<std::string>& hyp,
           const std::vector<std::string>& ref) { return SentenceBleu(hyp, ref); },
        py::arg("hypothesis"), py::arg("reference"));
  m.def("slot_f1",
        [](const std::vector<std::vector<std::string>>& gold,
           const std::vector<std::vector<std::string>>& pred) {
          return SlotF1(gold, pred);
        },
        py::arg("gold"), py::arg("pred"));
  m.def("intent_accuracy",
        [](const std::vector<std::string>& gold,
           const std::vector<std::string>& pred) {
          return IntentAccuracy(gold, pred);
        },
        py::arg("gold"), py::arg("pred"));
  m.def("dataset_stats",
        [](const std::vector<Utterance>& utterances,
           const std::optional<std::vector<Utterance>>& reference) {
          const Dataset d = ToDataset(utterances);
          std::optional<Dataset> ref;
          if (reference) ref = ToDataset(*reference);
          const DatasetStats s = ComputeDatasetStats(d, ref ? &*ref : nullptr);
          py::dict out;
          out["Utt"] = s.n_utt;
          out["IC"] = s.n_intents;
          out["SL"] = s.n_slot_labels;
          out["SV"] = s.n_slot_values;
          out["BLEU"] = s.avg_bleu;
          return out;
        },
        py::arg("utterances"), py::arg("reference") = py::none());

  py::class_<WordPieceVocab>(m, "WordPieceVocab")
      .def(py::init<std::vector<std::string>, std::string>(), py::arg("tokens"),
           py::arg("unk") = "[UNK]")
      .def_static("load", &WordPieceVocab::Load, py::arg("path"))
      .def("__contains__", [](const WordPieceVocab& v, const std::string& t) {
        return v.Contains(t);
      })
      .def("__len__", &WordPieceVocab::size);
  m.def("wordpiece_tokenize",
        [](const std::string& word, const WordPieceVocab& vocab, bool cont) {
          return WordpieceTokenize(word, vocab, cont);
        },
        py::arg("word"), py::arg("vocab"), py::arg("continuation") = false);
  m.def("bsr_distribution",
        [](const std::string& word, const WordPieceVocab& vocab) {
          std::vector<std::pair<std::vector<std::string>, double>> out;
          for (const SubwordEntry& e : BsrDistribution(word, vocab).entries) {
            out.emplace_back(e.tokens, e.probability);
          }
          return out;
        },
        py::arg("word"), py::arg("vocab"));
  m.def("bsr_sample",
        [](const std::vector<std::string>& words, const WordPieceVocab& vocab,
           std::uint64_t seed) {
          Rng rng(seed);
          std::vector<std::vector<std::string>> out;
          for (const std::string& w : words) out.push_back(BsrSample(w, vocab, rng));
          return out;
        },
        py::arg("words"), py::arg("vocab"), py::arg("seed"));

  m.def("injector_names", [] {
    std::vector<std::string> out;
    for (int k = 0; k <= static_cast<int>(InjectorKind::kParaphrase); ++k) {
      out.emplace_back(InjectorName(static_cast<InjectorKind>(k)));
    }
    return out;
  });
  m.def("noise",
        [](const std::vector<Utterance>& utterances, const std::string& type,
           std::uint64_t seed, std::optional<double> rate,
           std::optional<bool> carrier_only, std::optional<std::string> wordnet,
           std::optional<std::string> misspellings,
           std::optional<std::string> paraphrases,
           std::optional<py::function> scorer, int jobs) {
          const auto kind = ParseInjectorKind(type);
          if (!kind) throw std::invalid_argument("unknown injector: " + type);
          const Dataset d = ToDataset(utterances);
          Resources r;
          LoadResources(r, d, wordnet, misspellings, paraphrases, scorer);
          InjectorConfig cfg = DefaultInjectorConfig(*kind);
          if (rate) cfg.rate = *rate;
          if (carrier_only) cfg.carrier_only = *carrier_only;
          CheckResources(*kind, r.view);
          NoisedDataset out;
          {
            py::gil_scoped_release release;
            out = NoiseDataset(d, *kind, cfg, r.view, seed, jobs);
          }
          return std::make_pair(out.dataset.utterances, out.rejected_ids);
        },
        py::arg("utterances"), py::arg("type"), py::arg("seed") = 0,
        py::arg("rate") = py::none(), py::arg("carrier_only") = py::none(),
        py::arg("wordnet") = py::none(), py::arg("misspellings") = py::none(),
        py::arg("paraphrases") = py::none(), py::arg("scorer") = py::none(),
        py::arg("jobs") = 1);

  m.def("preset_plan",
        [](const std::string& name) {
          std::map<std::string, double> out;
          for (const auto& [t, r] : PresetPlan(name).proportions) {
            out[std::string(NoiseTypeName(t))] = r;
          }
          return out;
        },
        py::arg("name"));
  m.def("search_space", [] {
    std::vector<std::pair<std::string, std::vector<double>>> out;
    for (const SearchRange& r : EnumerateSearchSpace()) {
      out.emplace_back(std::string(NoiseTypeName(r.type)), r.rates);
    }
    return out;
  });
  m.def("augment",
        [](const std::vector<Utterance>& utterances,
           const std::map<std::string, double>& plan, std::uint64_t seed,
           std::optional<std::string> wordnet,
           std::optional<std::string> paraphrases,
           std::optional<py::function> scorer, int jobs) {
          const Dataset d = ToDataset(utterances);
          const NoisePlan p = PlanFromDict(plan);
          Resources r;
          LoadResources(r, d, wordnet, std::nullopt, paraphrases, scorer);
          AugmentedDataset out;
          {
            py::gil_scoped_release release;
            out = BuildAugmented(d, p, r.view, seed, jobs);
          }
          const py::object json = py::module_::import("json");
          return std::make_pair(out.dataset.utterances,
                                json.attr("loads")(AugmentationReportToJson(out.report)));
        },
        py::arg("utterances"), py::arg("plan"), py::arg("seed") = 0,
        py::arg("wordnet") = py::none(), py::arg("paraphrases") = py::none(),
        py::arg("scorer") = py::none(), py::arg("jobs") = 1);

  m.def("alp_loss",
        [](const std::vector<std::pair<std::vector<double>, std::vector<double>>>& intent_pairs,
           const std::vector<std::pair<std::vector<double>, std::vector<double>>>& slot_pairs) {
          LogitPairBatch b;
          for (const auto& [c, n] : intent_pairs) b.intent_pairs.push_back({c, n});
          for (const auto& [c, n] : slot_pairs) b.slot_pairs.push_back({c, n});
          return AlpLoss(b);
        },
        py::arg("intent_pairs"), py::arg("slot_pairs") = py::list());
}
