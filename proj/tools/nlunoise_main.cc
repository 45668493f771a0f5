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


// nlunoise: noise injection, augmentation, evaluation and corpus statistics
// for intent classification / slot labeling datasets.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 resource error.

#include <unistd.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlunoise/augment.h"
#include "nlunoise/corpus.h"
#include "nlunoise/errors.h"
#include "nlunoise/lexicons.h"
#include "nlunoise/metrics.h"
#include "nlunoise/noise.h"
#include "nlunoise/subword.h"
#include "nlunoise/text.h"
#include "nlunoise/trainaux.h"

namespace nlunoise {
namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitResource = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalFlags {
  std::string format = "conll";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

struct ResourceFlags {
  std::string wordnet;
  std::string misspellings;
  std::string abbrev_kb;
  std::string morph;
  std::string paraphrases;
  std::string scorer_cmd;
  std::string lm_corpus;
  int ngram_order = 2;
};

std::string ReadInput(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  return ReadFile(path);
}

// Writes through a sibling temporary file and rename, so a failed run never
// leaves a partial file behind.
void WriteOutput(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw ResourceError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw ResourceError("cannot replace " + path);
  }
}

void RequirePath(const std::string& path, const std::string& what) {
  if (path != "-" && !std::filesystem::exists(path)) {
    throw ResourceError(what + " not found: " + path);
  }
}

DatasetFormat Format(const GlobalFlags& g) {
  const auto f = ParseDatasetFormat(g.format);
  if (!f) throw UsageError("unknown --format '" + g.format + "'");
  return *f;
}

Dataset LoadDataset(const std::string& path, const GlobalFlags& g) {
  return ParseDataset(ReadInput(path), Format(g));
}

std::uint64_t RequireSeed(const GlobalFlags& g, const std::string& command) {
  if (!g.seed) throw UsageError(command + " is stochastic and needs --seed");
  return *g.seed;
}

// Owns whatever resources the selected injectors need.
struct LoadedResources {
  std::optional<SynonymLexicon> synonyms;
  std::optional<MorphLexicon> morph;
  std::optional<AbbreviationKb> abbreviations;
  std::optional<MisspellingDb> misspellings;
  std::unique_ptr<FluencyScorer> scorer;
  std::optional<FileParaphraseProvider> paraphrases;
  NoiseResources view;
};

void Load(const ResourceFlags& flags, const std::vector<InjectorKind>& kinds,
          const Dataset& input, LoadedResources& out) {
  auto uses = [&](InjectorKind k) {
    return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
  };
  const bool need_scorer = uses(InjectorKind::kSynonym) ||
                           uses(InjectorKind::kMorph);
  if (uses(InjectorKind::kSynonym)) {
    if (flags.wordnet.empty()) {
      throw ResourceError("synonym noise requires --wordnet DIR");
    }
    out.synonyms = LoadWordNet(flags.wordnet);
    out.view.synonyms = &*out.synonyms;
  }
  if (uses(InjectorKind::kMorph)) {
    out.morph = flags.morph.empty()
                    ? DefaultMorphLexicon()
                    : MorphLexicon::FromPairs(LoadTsvPairs(flags.morph));
    out.view.morph = &*out.morph;
  }
  if (uses(InjectorKind::kAbbreviation)) {
    out.abbreviations =
        flags.abbrev_kb.empty()
            ? DefaultAbbreviationKb()
            : AbbreviationKb::FromPairs(LoadTsvPairs(flags.abbrev_kb));
    out.view.abbreviations = &*out.abbreviations;
  }
  if (uses(InjectorKind::kMisspellNatural)) {
    if (flags.misspellings.empty()) {
      throw ResourceError("natural misspellings require --misspellings FILE");
    }
    out.misspellings = LoadMisspellingDb(flags.misspellings);
    out.view.misspellings = &*out.misspellings;
  }
  if (uses(InjectorKind::kParaphrase)) {
    if (flags.paraphrases.empty()) {
      throw ResourceError("paraphrase noise requires --paraphrases FILE");
    }
    out.paraphrases = FileParaphraseProvider::Load(flags.paraphrases);
    out.view.paraphrases = &*out.paraphrases;
  }
  if (need_scorer) {
    if (!flags.scorer_cmd.empty()) {
      out.scorer = std::make_unique<CommandScorer>(flags.scorer_cmd);
    } else {
      if (flags.ngram_order != 2 && flags.ngram_order != 3) {
        throw UsageError("--ngram-order must be 2 or 3");
      }
      const Dataset corpus =
          flags.lm_corpus.empty()
              ? input
              : ParseDataset(ReadFile(flags.lm_corpus),
                             DatasetFormat::kConllTsv);
      out.scorer = std::make_unique<NgramScorer>(corpus, flags.ngram_order);
    }
    out.view.scorer = out.scorer.get();
  }
}

void AddResourceFlags(CLI::App* cmd, ResourceFlags& r) {
  cmd->add_option("--wordnet", r.wordnet, "WordNet database directory");
  cmd->add_option("--misspellings", r.misspellings,
                  "Misspelling corpus ($correct / misspelling lines)");
  cmd->add_option("--abbrev-kb", r.abbrev_kb,
                  "Abbreviation TSV (default: built-in table)");
  cmd->add_option("--morph", r.morph,
                  "Morphological variant TSV (default: built-in table)");
  cmd->add_option("--paraphrases", r.paraphrases,
                  "Paraphrase TSV: utterance id, paraphrase text");
  cmd->add_option("--scorer-cmd", r.scorer_cmd,
                  "External fluency scorer command (one score per line)");
  cmd->add_option("--lm-corpus", r.lm_corpus,
                  "CoNLL corpus for the n-gram scorer (default: input)");
  cmd->add_option("--ngram-order", r.ngram_order, "n-gram scorer order (2|3)");
}

// --- noise -----------------------------------------------------------------

struct NoiseFlags {
  std::string input;
  std::string output;
  std::string type;
  std::optional<double> rate;
  std::optional<bool> carrier_only;
  std::size_t max_replacements = 1;
  std::size_t max_candidates = 0;
  bool punct_comma = false;
};

int RunNoise(const GlobalFlags& g, const NoiseFlags& f,
             const ResourceFlags& rf) {
  const auto kind = ParseInjectorKind(f.type);
  if (!kind) throw UsageError("unknown --type '" + f.type + "'");
  const std::uint64_t seed = IsStochastic(*kind) ? RequireSeed(g, "noise")
                                                 : g.seed.value_or(0);
  RequirePath(f.input, "input");
  const Dataset input = LoadDataset(f.input, g);

  InjectorConfig cfg = DefaultInjectorConfig(*kind);
  if (f.rate) cfg.rate = *f.rate;
  if (f.carrier_only) cfg.carrier_only = *f.carrier_only;
  cfg.max_replacements = f.max_replacements;
  cfg.max_candidates = f.max_candidates;
  if (!(cfg.rate >= 0.0 && cfg.rate <= 1.0)) {
    throw UsageError("--rate must be in [0, 1]");
  }

  LoadedResources res;
  Load(rf, {*kind}, input, res);
  const RulePunctuator punctuator(f.punct_comma);
  res.view.punctuator = &punctuator;

  const NoisedDataset noised =
      NoiseDataset(input, *kind, cfg, res.view, seed, g.jobs);
  WriteOutput(f.output, WriteDataset(noised.dataset, Format(g)));
  std::cerr << "rejected\t" << noised.rejected_ids.size() << "\n";
  for (const std::string& id : noised.rejected_ids) {
    std::cerr << "rejected_id\t" << id << "\n";
  }
  return 0;
}

// --- augment ---------------------------------------------------------------

struct AugmentFlags {
  std::string input;
  std::string output;
  std::string plan;
  std::vector<std::string> exclude;
  std::string report_json;
  std::string report_tsv;
};

int RunAugment(const GlobalFlags& g, const AugmentFlags& f,
               const ResourceFlags& rf) {
  const std::uint64_t seed = RequireSeed(g, "augment");
  RequirePath(f.input, "input");
  NoisePlan plan = ResolvePlan(f.plan);
  for (const std::string& name : f.exclude) {
    const auto type = ParseNoiseType(name);
    if (!type) throw UsageError("unknown noise type in --exclude: " + name);
    plan.proportions.erase(*type);
    plan.rates.erase(*type);
  }
  const Dataset input = LoadDataset(f.input, g);

  std::vector<InjectorKind> kinds;
  for (const auto& [type, r] : plan.proportions) {
    if (r > 0.0) kinds.push_back(AugmentInjector(type));
  }
  LoadedResources res;
  Load(rf, kinds, input, res);

  const AugmentedDataset out =
      BuildAugmented(input, plan, res.view, seed, g.jobs);
  WriteOutput(f.output, WriteDataset(out.dataset, Format(g)));
  if (!f.report_json.empty()) {
    WriteOutput(f.report_json, AugmentationReportToJson(out.report));
  }
  const std::string tsv = AugmentationReportToTsv(out.report);
  if (!f.report_tsv.empty()) WriteOutput(f.report_tsv, tsv);
  std::cerr << tsv;
  return 0;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateFlags {
  std::string gold;
  std::string pred;
  std::string tsv = "-";
  std::string json;
};

int RunEvaluate(const GlobalFlags& g, const EvaluateFlags& f) {
  RequirePath(f.gold, "gold file");
  RequirePath(f.pred, "prediction file");
  const Dataset gold = LoadDataset(f.gold, g);
  const Dataset pred = LoadDataset(f.pred, g);
  const EvalReport report = Evaluate(gold, pred);
  if (!f.json.empty()) WriteOutput(f.json, EvalReportToJson(report));
  WriteOutput(f.tsv, EvalReportToTsv(report));
  return 0;
}

// --- stats -----------------------------------------------------------------

struct StatsFlags {
  std::string input;
  std::string reference;
  std::string output = "-";
  std::string json;
};

int RunStats(const GlobalFlags& g, const StatsFlags& f) {
  RequirePath(f.input, "input");
  if (!f.reference.empty()) RequirePath(f.reference, "reference");
  const Dataset input = LoadDataset(f.input, g);
  std::optional<Dataset> reference;
  if (!f.reference.empty()) reference = LoadDataset(f.reference, g);
  const DatasetStats stats =
      ComputeDatasetStats(input, reference ? &*reference : nullptr);
  if (!f.json.empty()) {
    std::ostringstream j;
    j << "{\"Utt\": " << stats.n_utt << ", \"IC\": " << stats.n_intents
      << ", \"SL\": " << stats.n_slot_labels
      << ", \"SV\": " << stats.n_slot_values << ", \"BLEU\": ";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", stats.avg_bleu);
    j << buf << "}\n";
    WriteOutput(f.json, j.str());
  }
  WriteOutput(f.output, FormatStatsTsv(stats));
  return 0;
}

// --- tokenize --------------------------------------------------------------

struct TokenizeFlags {
  std::string vocab;
  std::vector<std::string> words;
  std::string input;
  std::size_t samples = 0;
  std::string output = "-";
};

int RunTokenize(const GlobalFlags& g, const TokenizeFlags& f) {
  RequirePath(f.vocab, "vocab file");
  const WordPieceVocab vocab = WordPieceVocab::Load(f.vocab);
  std::vector<std::string> words = f.words;
  if (!f.input.empty()) {
    RequirePath(f.input, "input");
    for (std::string& w : SplitWhitespace(ReadInput(f.input))) {
      words.push_back(std::move(w));
    }
  }
  if (words.empty()) throw UsageError("tokenize needs words or --input");

  std::string out;
  if (f.samples > 0) {
    const std::uint64_t seed = RequireSeed(g, "tokenize --sample");
    out = "word\tsample\ttokens\n";
    for (std::size_t w = 0; w < words.size(); ++w) {
      Rng rng = Rng::ForStream(seed, {w});
      for (std::size_t s = 0; s < f.samples; ++s) {
        out += words[w] + "\t" + std::to_string(s) + "\t" +
               Join(BsrSample(words[w], vocab, rng), " ") + "\n";
      }
    }
  } else {
    out = "word\ttokens\tprobability\n";
    for (const std::string& word : words) {
      for (const SubwordEntry& e : BsrDistribution(word, vocab).entries) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", e.probability);
        out += word + "\t" + Join(e.tokens, " ") + "\t" + buf + "\n";
      }
    }
  }
  WriteOutput(f.output, out);
  return 0;
}

// --- alp -------------------------------------------------------------------

struct AlpFlags {
  std::string input = "-";
};

int RunAlp(const AlpFlags& f) {
  RequirePath(f.input, "input");
  const LogitPairBatch batch = ParseLogitPairBatchJson(ReadInput(f.input));
  double loss = 0.0;
  try {
    loss = AlpLoss(batch);
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  std::printf("alp_loss\t%.12g\n", loss);
  return 0;
}

}  // namespace
}  // namespace nlunoise

int main(int argc, char** argv) {
  using namespace nlunoise;
  CLI::App app{"Noise injection and evaluation for IC/SL datasets"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--format", g.format, "Dataset format: conll | jsonl")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed (required when stochastic)");
  app.add_option("--jobs", g.jobs, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  ResourceFlags rf;

  NoiseFlags nf;
  CLI::App* noise = app.add_subcommand("noise", "Apply one noise injector");
  noise->add_option("-i,--input", nf.input, "Input dataset")->required();
  noise->add_option("-o,--output", nf.output, "Output dataset")->required();
  noise->add_option("-t,--type", nf.type,
                    "casing-all | casing | misspell-syn | misspell-nat | "
                    "synonym | morph | abbrev | punct | paraphrase")
      ->required();
  noise->add_option("--rate", nf.rate, "Injector rate in [0, 1]");
  noise->add_option("--carrier-only", nf.carrier_only,
                    "Restrict edits to carrier tokens (true|false)");
  noise->add_option("--max-replacements", nf.max_replacements,
                    "Synonym/morph replacements per utterance");
  noise->add_option("--max-candidates", nf.max_candidates,
                    "Synonym/morph candidates scored per round (0 = all)");
  noise->add_flag("--punct-comma", nf.punct_comma,
                  "Also insert commas before trailing phrases");
  AddResourceFlags(noise, rf);

  AugmentFlags af;
  CLI::App* augment = app.add_subcommand("augment", "Build augmented data");
  augment->add_option("-i,--input", af.input, "Input dataset")->required();
  augment->add_option("-o,--output", af.output, "Output dataset")->required();
  augment->add_option("--plan", af.plan,
                      "uniform | bp-atis | bp-snips | plan config file")
      ->required();
  augment->add_option("--exclude", af.exclude, "Noise types to leave out")
      ->delimiter(',');
  augment->add_option("--report", af.report_json, "JSON report path");
  augment->add_option("--report-tsv", af.report_tsv, "TSV report path");
  AddResourceFlags(augment, rf);

  EvaluateFlags ef;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions");
  evaluate->add_option("--gold", ef.gold, "Gold dataset")->required();
  evaluate->add_option("--pred", ef.pred, "Predicted dataset")->required();
  evaluate->add_option("--tsv", ef.tsv, "TSV report path (default stdout)");
  evaluate->add_option("--json", ef.json, "JSON report path");

  StatsFlags sf;
  CLI::App* stats = app.add_subcommand("stats", "Dataset statistics row");
  stats->add_option("-i,--input", sf.input, "Dataset")->required();
  stats->add_option("--reference", sf.reference,
                    "Reference dataset for the BLEU column");
  stats->add_option("-o,--output", sf.output, "TSV path (default stdout)");
  stats->add_option("--json", sf.json, "JSON path");

  TokenizeFlags tf;
  CLI::App* tokenize =
      app.add_subcommand("tokenize", "Sub-word regularization tables");
  tokenize->add_option("--vocab", tf.vocab, "WordPiece vocab file")
      ->required();
  tokenize->add_option("words", tf.words, "Words to tokenize");
  tokenize->add_option("-i,--input", tf.input, "File of words");
  tokenize->add_option("--sample", tf.samples, "Draw N samples per word");
  tokenize->add_option("-o,--output", tf.output, "Output path");

  AlpFlags lf;
  CLI::App* alp = app.add_subcommand("alp", "Logit pairing loss of a batch");
  alp->add_option("-i,--input", lf.input, "JSON logit batch (default stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (g.jobs < 1) throw UsageError("--jobs must be >= 1");
    if (*noise) return RunNoise(g, nf, rf);
    if (*augment) return RunAugment(g, af, rf);
    if (*evaluate) return RunEvaluate(g, ef);
    if (*stats) return RunStats(g, sf);
    if (*tokenize) return RunTokenize(g, tf);
    if (*alp) return RunAlp(lf);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
