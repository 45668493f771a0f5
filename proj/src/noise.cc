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

#include "nlunoise/noise.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nlunoise/errors.h"
#include "nlunoise/text.h"

namespace nlunoise {
namespace {

bool IsCarrier(const Utterance& u, std::size_t i) {
  return u.slot_tags[i] == "O";
}

void CheckRate(double rate, const char* who) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": rate must be in [0, 1]");
  }
}

char ToLowerChar(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

char FollowCase(char anchor, char c) {
  return (anchor >= 'A' && anchor <= 'Z' && c >= 'a' && c <= 'z')
             ? static_cast<char>(c - 'a' + 'A')
             : c;
}

char PickNeighbor(const QwertyMap& qwerty, char anchor, Rng& rng) {
  const std::string& n = qwerty.Neighbors(ToLowerChar(anchor));
  if (n.empty()) {
    throw std::logic_error(std::string("no QWERTY neighbors for '") + anchor +
                           "'");
  }
  return FollowCase(anchor, n[rng.UniformIndex(n.size())]);
}

std::vector<std::string> SplitUnderscore(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('_', start);
    if (end == std::string::npos) end = s.size();
    if (end > start) parts.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

struct Substitution {
  std::size_t position;
  std::vector<std::string> parts;
};

// Replaces u.tokens[pos] by `parts`, which inherit the replaced token's tag
// (only single-part replacements are allowed inside slots).
Utterance ApplySubstitution(const Utterance& u, const Substitution& s) {
  Utterance out = u;
  const std::string original = u.tokens[s.position];
  const std::string tag = u.slot_tags[s.position];
  std::vector<std::string> tokens;
  for (std::size_t k = 0; k < s.parts.size(); ++k) {
    tokens.push_back(k == 0 ? MatchCase(original, s.parts[k]) : s.parts[k]);
  }
  out.tokens.erase(out.tokens.begin() + static_cast<std::ptrdiff_t>(s.position));
  out.slot_tags.erase(out.slot_tags.begin() +
                      static_cast<std::ptrdiff_t>(s.position));
  out.tokens.insert(out.tokens.begin() + static_cast<std::ptrdiff_t>(s.position),
                    tokens.begin(), tokens.end());
  out.slot_tags.insert(
      out.slot_tags.begin() + static_cast<std::ptrdiff_t>(s.position),
      tokens.size(), tag);
  return out;
}

using CandidateFn =
    std::function<std::vector<std::string>(const std::string& lower_token)>;

std::optional<Utterance> BestSubstitution(const Utterance& u,
                                          const CandidateFn& candidates,
                                          const FluencyScorer& scorer,
                                          Rng& rng,
                                          const InjectorConfig& cfg) {
  Utterance current = u;
  std::vector<bool> locked(u.tokens.size(), false);
  bool changed = false;
  for (std::size_t round = 0; round < cfg.max_replacements; ++round) {
    std::vector<Substitution> options;
    for (std::size_t i = 0; i < current.tokens.size(); ++i) {
      if (locked[i]) continue;
      const bool carrier = IsCarrier(current, i);
      if (cfg.carrier_only && !carrier) continue;
      const std::string lower = ToLowerAscii(current.tokens[i]);
      for (const std::string& cand : candidates(lower)) {
        if (cand == lower) continue;
        std::vector<std::string> parts = SplitUnderscore(cand);
        if (parts.empty() || (!carrier && parts.size() > 1)) continue;
        options.push_back(Substitution{i, std::move(parts)});
      }
    }
    if (options.empty()) break;
    if (cfg.max_candidates > 0 && options.size() > cfg.max_candidates) {
      std::vector<std::size_t> order(options.size());
      std::iota(order.begin(), order.end(), 0);
      rng.Shuffle(order.begin(), order.end());
      order.resize(cfg.max_candidates);
      std::sort(order.begin(), order.end());
      std::vector<Substitution> subset;
      for (std::size_t k : order) subset.push_back(std::move(options[k]));
      options = std::move(subset);
    }
    std::size_t best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < options.size(); ++k) {
      const double score =
          scorer.Score(ApplySubstitution(current, options[k]).tokens);
      if (score < best_score) {
        best_score = score;
        best = k;
      }
    }
    const Substitution& chosen = options[best];
    current = ApplySubstitution(current, chosen);
    locked.erase(locked.begin() + static_cast<std::ptrdiff_t>(chosen.position));
    locked.insert(locked.begin() + static_cast<std::ptrdiff_t>(chosen.position),
                  chosen.parts.size(), true);
    changed = true;
  }
  if (!changed) return std::nullopt;
  return current;
}

bool IsVowel(char c) {
  c = ToLowerChar(c);
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

struct Rewrite {
  std::size_t start;
  std::size_t length;
  std::vector<std::string> options;
};

constexpr std::string_view kQuestionWords[] = {"what",  "which", "when",
                                               "where", "how",   "who"};
constexpr std::string_view kPrepositions[] = {"from", "to",   "in",  "on",
                                              "at",   "for",  "with", "by"};

constexpr std::string_view kInjectorNames[] = {
    "casing-all", "casing", "misspell-syn", "misspell-nat", "synonym",
    "morph",      "abbrev", "punct",        "paraphrase"};

}  // namespace

// --- Casing ----------------------------------------------------------------

Utterance InjectCasingAll(const Utterance& u) {
  Utterance out = u;
  for (std::string& t : out.tokens) t = ToUpper(t);
  return out;
}

Utterance InjectCasingTokens(const Utterance& u, double rate, Rng& rng,
                             bool carrier_only) {
  CheckRate(rate, "InjectCasingTokens");
  Utterance out = u;
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (carrier_only && !IsCarrier(u, i)) continue;
    if (rng.Bernoulli(rate)) out.tokens[i] = ToUpper(out.tokens[i]);
  }
  return out;
}

// --- Synthetic misspellings ------------------------------------------------

std::string_view EditTypeName(EditType type) {
  switch (type) {
    case EditType::kInsertion:
      return "insertion";
    case EditType::kDeletion:
      return "deletion";
    case EditType::kSubstitution:
      return "substitution";
    case EditType::kTransposition:
      return "transposition";
  }
  return "unknown";
}

void EditModel::Validate() const {
  CheckRate(rate, "EditModel");
  const double shares[] = {insertion, deletion, substitution, transposition};
  double sum = 0.0;
  for (double s : shares) {
    if (s < 0.0) throw std::invalid_argument("EditModel: negative share");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("EditModel: shares must sum to 1");
  }
  if (qwerty == nullptr) throw std::invalid_argument("EditModel: no layout");
}

bool IsMisspellingEligible(std::string_view token) {
  return token.size() >= 3 && IsAsciiAlpha(token);
}

std::optional<CharEdit> MisspellWord(std::string& word, const EditModel& model,
                                     Rng& rng) {
  if (!IsMisspellingEligible(word)) return std::nullopt;
  if (!rng.Bernoulli(model.rate)) return std::nullopt;
  const double shares[] = {model.insertion, model.deletion, model.substitution,
                           model.transposition};
  CharEdit edit;
  edit.type = static_cast<EditType>(rng.Discrete(shares));
  const std::size_t n = word.size();
  switch (edit.type) {
    case EditType::kInsertion:
    case EditType::kSubstitution:
      edit.position = rng.UniformIndex(n);
      edit.anchor = word[edit.position];
      edit.introduced = PickNeighbor(*model.qwerty, edit.anchor, rng);
      break;
    case EditType::kDeletion:
      edit.position = rng.UniformIndex(n);
      edit.anchor = word[edit.position];
      break;
    case EditType::kTransposition:
      edit.position = rng.UniformIndex(n - 1);
      edit.anchor = word[edit.position];
      break;
  }
  word = ApplyCharEdit(word, edit);
  return edit;
}

std::string ApplyCharEdit(std::string_view word, const CharEdit& edit) {
  std::string out(word);
  if (edit.position >= out.size() ||
      (edit.type == EditType::kTransposition && edit.position + 1 >= out.size())) {
    throw std::out_of_range("ApplyCharEdit: position outside word");
  }
  switch (edit.type) {
    case EditType::kInsertion:
      out.insert(edit.position, 1, edit.introduced);
      break;
    case EditType::kDeletion:
      out.erase(edit.position, 1);
      break;
    case EditType::kSubstitution:
      out[edit.position] = edit.introduced;
      break;
    case EditType::kTransposition:
      std::swap(out[edit.position], out[edit.position + 1]);
      break;
  }
  return out;
}

SyntheticMisspellingResult InjectMisspellingSynthetic(const Utterance& u,
                                                      const EditModel& model,
                                                      Rng& rng,
                                                      bool carrier_only) {
  model.Validate();
  SyntheticMisspellingResult result{u, {}};
  for (std::size_t i = 0; i < u.tokens.size(); ++i) {
    if (carrier_only && !IsCarrier(u, i)) continue;
    if (auto edit = MisspellWord(result.utterance.tokens[i], model, rng)) {
      result.edits.emplace_back(i, *edit);
    }
  }
  return result;
}

// --- Natural misspellings --------------------------------------------------

NaturalMisspellingResult InjectMisspellingNatural(const Utterance& u,
                                                  double rate,
                                                  const MisspellingDb& db,
                                                  Rng& rng,
                                                  bool carrier_only) {
  CheckRate(rate, "InjectMisspellingNatural");
  NaturalMisspellingResult result{u, 0};
  const double wanted = rate * static_cast<double>(u.tokens.size());
  const auto target = static_cast<std::size_t>(std::ceil(wanted - 1e-9));
  if (target == 0 || db.empty()) return result;

  std::vector<std::size_t> carrier, slot;
  for (std::size_t i = 0; i < u.tokens.size(); ++i) {
    if (db.Find(u.tokens[i]) == nullptr) continue;
    (IsCarrier(u, i) ? carrier : slot).push_back(i);
  }
  rng.Shuffle(carrier.begin(), carrier.end());
  rng.Shuffle(slot.begin(), slot.end());
  std::vector<std::size_t> order = carrier;
  if (!carrier_only) order.insert(order.end(), slot.begin(), slot.end());

  for (std::size_t k = 0; k < order.size() && result.replacements < target;
       ++k) {
    const std::size_t i = order[k];
    const std::vector<std::string>& options = *db.Find(u.tokens[i]);
    result.utterance.tokens[i] =
        MatchCase(u.tokens[i], options[rng.UniformIndex(options.size())]);
    ++result.replacements;
  }
  return result;
}

// --- Lexical substitution --------------------------------------------------

std::optional<Utterance> InjectSynonym(const Utterance& u,
                                       const SynonymLexicon& lexicon,
                                       const FluencyScorer& scorer, Rng& rng,
                                       const InjectorConfig& cfg) {
  const CandidateFn candidates = [&](const std::string& lower) {
    const std::set<std::string> s = lexicon.Synonyms(lower, cfg.pos_filter);
    return std::vector<std::string>(s.begin(), s.end());
  };
  return BestSubstitution(u, candidates, scorer, rng, cfg);
}

std::optional<Utterance> InjectMorph(const Utterance& u,
                                     const MorphLexicon& lexicon,
                                     const FluencyScorer& scorer, Rng& rng,
                                     const InjectorConfig& cfg) {
  const CandidateFn candidates = [&](const std::string& lower) {
    const auto it = lexicon.variants.find(lower);
    if (it == lexicon.variants.end()) return std::vector<std::string>{};
    std::vector<std::string> out = it->second;
    std::sort(out.begin(), out.end());
    return out;
  };
  return BestSubstitution(u, candidates, scorer, rng, cfg);
}

std::string DropInternalVowels(std::string_view token) {
  if (token.size() < 4 || !IsAsciiAlpha(token)) return std::string(token);
  std::string out(1, token.front());
  for (std::size_t i = 1; i + 1 < token.size(); ++i) {
    if (!IsVowel(token[i])) out += token[i];
  }
  out += token.back();
  return out;
}

std::optional<Utterance> InjectAbbreviation(const Utterance& u,
                                            const AbbreviationKb& kb, Rng& rng,
                                            const InjectorConfig& cfg) {
  CheckRate(cfg.rate, "InjectAbbreviation");
  const std::size_t n = u.tokens.size();
  auto eligible = [&](std::size_t i) {
    return !cfg.carrier_only || IsCarrier(u, i);
  };
  const std::size_t longest = kb.longest_phrase();

  std::vector<Rewrite> rewrites;
  for (std::size_t i = 0; i < n;) {
    if (!eligible(i)) {
      ++i;
      continue;
    }
    std::optional<Rewrite> found;
    // Multi-token phrases only span carrier tokens.
    for (std::size_t len = std::min(longest, n - i); len >= 1 && !found;
         --len) {
      bool ok = true;
      for (std::size_t k = i; k < i + len && ok; ++k) {
        ok = eligible(k) && (len == 1 || IsCarrier(u, k));
      }
      if (!ok) continue;
      std::string phrase;
      for (std::size_t k = i; k < i + len; ++k) {
        if (k > i) phrase += ' ';
        phrase += ToLowerAscii(u.tokens[k]);
      }
      const auto it = kb.abbreviations.find(phrase);
      if (it != kb.abbreviations.end()) found = Rewrite{i, len, it->second};
    }
    if (!found) {
      const auto it = kb.phonetic_numerals.find(ToLowerAscii(u.tokens[i]));
      if (it != kb.phonetic_numerals.end()) found = Rewrite{i, 1, it->second};
    }
    if (!found) {
      const std::string dropped = DropInternalVowels(u.tokens[i]);
      if (dropped != u.tokens[i]) found = Rewrite{i, 1, {dropped}};
    }
    if (found) {
      i += found->length;
      rewrites.push_back(std::move(*found));
    } else {
      ++i;
    }
  }
  if (rewrites.empty()) return std::nullopt;

  const auto count = std::clamp<std::size_t>(
      static_cast<std::size_t>(
          std::llround(cfg.rate * static_cast<double>(rewrites.size()))),
      1, rewrites.size());
  std::vector<std::size_t> chosen(rewrites.size());
  std::iota(chosen.begin(), chosen.end(), 0);
  rng.Shuffle(chosen.begin(), chosen.end());
  chosen.resize(count);
  std::sort(chosen.rbegin(), chosen.rend());  // right to left keeps indices

  Utterance out = u;
  for (std::size_t k : chosen) {
    const Rewrite& r = rewrites[k];
    const std::string& pick = r.options[rng.UniformIndex(r.options.size())];
    const std::string replacement = MatchCase(u.tokens[r.start], pick);
    const auto first = static_cast<std::ptrdiff_t>(r.start);
    const auto last = static_cast<std::ptrdiff_t>(r.start + r.length);
    const std::string tag = out.slot_tags[r.start];
    out.tokens.erase(out.tokens.begin() + first, out.tokens.begin() + last);
    out.slot_tags.erase(out.slot_tags.begin() + first,
                        out.slot_tags.begin() + last);
    out.tokens.insert(out.tokens.begin() + first, replacement);
    out.slot_tags.insert(out.slot_tags.begin() + first, tag);
  }
  return out;
}

// --- Punctuation -----------------------------------------------------------

std::vector<std::string> RulePunctuator::Punctuate(
    std::span<const std::string> tokens) const {
  std::vector<std::string> out(tokens.begin(), tokens.end());
  if (out.empty()) return out;
  if (comma_) {
    for (std::size_t j = out.size() - 1; j >= 2; --j) {
      const std::string lower = ToLowerAscii(out[j]);
      const bool prep = std::find(std::begin(kPrepositions),
                                  std::end(kPrepositions),
                                  lower) != std::end(kPrepositions);
      if (prep && !IsPunctuationToken(out[j - 1])) {
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(j), ",");
        break;
      }
    }
  }
  if (!IsPunctuationToken(out.back())) {
    const std::string first = ToLowerAscii(out.front());
    const bool question =
        std::find(std::begin(kQuestionWords), std::end(kQuestionWords),
                  first) != std::end(kQuestionWords);
    out.push_back(question ? "?" : ".");
  }
  return out;
}

Utterance InjectPunctuation(const Utterance& u, const Punctuator& punctuator) {
  const std::vector<std::string> punctuated = punctuator.Punctuate(u.tokens);
  Utterance out = u;
  out.tokens.clear();
  out.slot_tags.clear();
  std::size_t i = 0;
  for (const std::string& token : punctuated) {
    if (i < u.tokens.size() && token == u.tokens[i]) {
      out.tokens.push_back(token);
      out.slot_tags.push_back(u.slot_tags[i]);
      ++i;
      continue;
    }
    if (!IsPunctuationToken(token)) {
      throw std::logic_error("punctuator changed token '" + token + "'");
    }
    const bool inside_span =
        i > 0 && i < u.tokens.size() && u.slot_tags[i].starts_with("I-");
    if (inside_span) continue;
    out.tokens.push_back(token);
    out.slot_tags.push_back("O");
  }
  if (i != u.tokens.size()) {
    throw std::logic_error("punctuator dropped original tokens");
  }
  return out;
}

// --- Paraphrases -----------------------------------------------------------

FileParaphraseProvider FileParaphraseProvider::Parse(std::string_view text) {
  FileParaphraseProvider provider;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    const std::size_t tab = lines[i].find('\t');
    if (tab == std::string_view::npos) {
      throw DataError("expected 'utterance_id<TAB>paraphrase'", i + 1);
    }
    const std::string id(Trim(lines[i].substr(0, tab)));
    std::vector<std::string> tokens = SplitWhitespace(lines[i].substr(tab + 1));
    if (id.empty() || tokens.empty()) {
      throw DataError("empty id or paraphrase", i + 1);
    }
    provider.table_[id].push_back(std::move(tokens));
  }
  return provider;
}

FileParaphraseProvider FileParaphraseProvider::Load(const std::string& path) {
  return Parse(ReadFile(path));
}

std::optional<std::vector<std::string>> FileParaphraseProvider::Paraphrase(
    const Utterance& u) const {
  const auto it = table_.find(u.id);
  if (it == table_.end()) return std::nullopt;
  return it->second.front();
}

RealignResult RealignParaphrase(const Utterance& original,
                                std::span<const std::string> paraphrase) {
  RealignResult result;
  if (paraphrase.empty()) return result;
  for (const std::string& t : paraphrase) {
    if (t.empty() || HasAsciiWhitespace(t)) {
      throw std::invalid_argument("RealignParaphrase: malformed token");
    }
  }
  const std::vector<SlotSpan> spans = SlotSpans(original);
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    const std::size_t la = spans[a].end - spans[a].start;
    const std::size_t lb = spans[b].end - spans[b].start;
    if (la != lb) return la > lb;
    return spans[a].start < spans[b].start;
  });

  std::vector<std::string> folded;
  for (const std::string& t : paraphrase) folded.push_back(ToUpper(t));
  std::vector<bool> claimed(paraphrase.size(), false);
  std::vector<std::string> tags(paraphrase.size(), "O");

  for (std::size_t idx : order) {
    const SlotSpan& span = spans[idx];
    const std::size_t len = span.end - span.start;
    bool placed = false;
    for (std::size_t s = 0; s + len <= paraphrase.size() && !placed; ++s) {
      bool match = true;
      for (std::size_t k = 0; k < len && match; ++k) {
        match = folded[s + k] == ToUpper(original.tokens[span.start + k]);
      }
      if (!match) continue;
      bool overlap = false;
      for (std::size_t k = 0; k < len; ++k) overlap = overlap || claimed[s + k];
      if (overlap) {
        ++result.collisions;
        continue;
      }
      for (std::size_t k = 0; k < len; ++k) {
        claimed[s + k] = true;
        tags[s + k] = (k == 0 ? "B-" : "I-") + span.label;
      }
      placed = true;
    }
    if (!placed) return result;
  }
  Utterance out;
  out.id = original.id;
  out.intent = original.intent;
  out.tokens.assign(paraphrase.begin(), paraphrase.end());
  out.slot_tags = std::move(tags);
  result.utterance = std::move(out);
  return result;
}

// --- Dispatch --------------------------------------------------------------

std::string_view InjectorName(InjectorKind kind) {
  return kInjectorNames[static_cast<int>(kind)];
}

std::optional<InjectorKind> ParseInjectorKind(std::string_view name) {
  for (int i = 0; i < 9; ++i) {
    if (kInjectorNames[i] == name) return static_cast<InjectorKind>(i);
  }
  return std::nullopt;
}

NoiseType InjectorNoiseType(InjectorKind kind) {
  switch (kind) {
    case InjectorKind::kCasingAll:
    case InjectorKind::kCasingTokens:
      return NoiseType::kCasing;
    case InjectorKind::kMisspellSynthetic:
    case InjectorKind::kMisspellNatural:
      return NoiseType::kMisspelling;
    case InjectorKind::kSynonym:
      return NoiseType::kSynonym;
    case InjectorKind::kMorph:
      return NoiseType::kMorph;
    case InjectorKind::kAbbreviation:
      return NoiseType::kAbbreviation;
    case InjectorKind::kPunctuation:
      return NoiseType::kPunctuation;
    case InjectorKind::kParaphrase:
      return NoiseType::kParaphrase;
  }
  return NoiseType::kOriginal;
}

bool IsStochastic(InjectorKind kind) {
  return kind != InjectorKind::kCasingAll &&
         kind != InjectorKind::kPunctuation &&
         kind != InjectorKind::kParaphrase;
}

InjectorConfig DefaultInjectorConfig(InjectorKind kind) {
  InjectorConfig cfg;
  switch (kind) {
    case InjectorKind::kCasingAll:
      cfg.carrier_only = false;
      cfg.rate = 1.0;
      break;
    case InjectorKind::kCasingTokens:
      cfg.carrier_only = false;
      cfg.rate = 0.5;
      break;
    case InjectorKind::kMisspellSynthetic:
    case InjectorKind::kMisspellNatural:
      cfg.carrier_only = false;
      cfg.rate = 0.15;
      break;
    case InjectorKind::kSynonym:
    case InjectorKind::kMorph:
    case InjectorKind::kAbbreviation:
    case InjectorKind::kPunctuation:
      cfg.carrier_only = true;
      break;
    case InjectorKind::kParaphrase:
      cfg.carrier_only = false;
      break;
  }
  return cfg;
}

void CheckResources(InjectorKind kind, const NoiseResources& r) {
  auto need = [&](const void* p, const char* what) {
    if (p == nullptr) {
      throw ResourceError(std::string(InjectorName(kind)) + " requires " +
                          what);
    }
  };
  switch (kind) {
    case InjectorKind::kMisspellSynthetic:
      need(r.qwerty, "a QWERTY map");
      break;
    case InjectorKind::kMisspellNatural:
      need(r.misspellings, "a misspelling database");
      break;
    case InjectorKind::kSynonym:
      need(r.synonyms, "a WordNet synonym lexicon");
      need(r.scorer, "a fluency scorer");
      break;
    case InjectorKind::kMorph:
      need(r.morph, "a morphological lexicon");
      need(r.scorer, "a fluency scorer");
      break;
    case InjectorKind::kAbbreviation:
      need(r.abbreviations, "an abbreviation KB");
      break;
    case InjectorKind::kParaphrase:
      need(r.paraphrases, "a paraphrase file");
      break;
    default:
      break;
  }
}

InjectionOutcome ApplyInjector(InjectorKind kind, const Utterance& u,
                               const InjectorConfig& cfg,
                               const NoiseResources& r, Rng& rng) {
  CheckResources(kind, r);
  CheckRate(cfg.rate, "ApplyInjector");
  InjectionOutcome outcome;
  switch (kind) {
    case InjectorKind::kCasingAll:
      outcome.utterance = InjectCasingAll(u);
      break;
    case InjectorKind::kCasingTokens:
      outcome.utterance = InjectCasingTokens(u, cfg.rate, rng, cfg.carrier_only);
      break;
    case InjectorKind::kMisspellSynthetic: {
      EditModel model;
      model.rate = cfg.rate;
      model.qwerty = r.qwerty;
      auto res = InjectMisspellingSynthetic(u, model, rng, cfg.carrier_only);
      outcome.replacements = res.edits.size();
      outcome.utterance = std::move(res.utterance);
      break;
    }
    case InjectorKind::kMisspellNatural: {
      auto res = InjectMisspellingNatural(u, cfg.rate, *r.misspellings, rng,
                                          cfg.carrier_only);
      outcome.replacements = res.replacements;
      outcome.utterance = std::move(res.utterance);
      break;
    }
    case InjectorKind::kSynonym:
      outcome.utterance = InjectSynonym(u, *r.synonyms, *r.scorer, rng, cfg);
      break;
    case InjectorKind::kMorph:
      outcome.utterance = InjectMorph(u, *r.morph, *r.scorer, rng, cfg);
      break;
    case InjectorKind::kAbbreviation:
      outcome.utterance = InjectAbbreviation(u, *r.abbreviations, rng, cfg);
      break;
    case InjectorKind::kPunctuation: {
      static const RulePunctuator kDefault;
      outcome.utterance =
          InjectPunctuation(u, r.punctuator ? *r.punctuator : kDefault);
      break;
    }
    case InjectorKind::kParaphrase: {
      const auto text = r.paraphrases->Paraphrase(u);
      if (!text) break;
      RealignResult res = RealignParaphrase(u, *text);
      outcome.collisions = res.collisions;
      outcome.utterance = std::move(res.utterance);
      break;
    }
  }
  return outcome;
}

void ParallelFor(std::size_t n, int jobs,
                 const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

NoisedDataset NoiseDataset(const Dataset& d, InjectorKind kind,
                           const InjectorConfig& cfg,
                           const NoiseResources& resources, std::uint64_t seed,
                           int jobs) {
  CheckResources(kind, resources);
  std::vector<InjectionOutcome> outcomes(d.utterances.size());
  ParallelFor(d.utterances.size(), jobs, [&](std::size_t i) {
    Rng rng = Rng::ForStream(seed, {static_cast<std::uint64_t>(kind), i});
    outcomes[i] = ApplyInjector(kind, d.utterances[i], cfg, resources, rng);
  });
  NoisedDataset result;
  result.dataset.name = d.name;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Utterance& source = d.utterances[i];
    if (!outcomes[i].utterance) {
      result.rejected_ids.push_back(source.id);
      continue;
    }
    Utterance u = std::move(*outcomes[i].utterance);
    u.id = source.id;
    u.provenance = Provenance{source.id, InjectorNoiseType(kind)};
    result.dataset.utterances.push_back(std::move(u));
  }
  return result;
}

}  // namespace nlunoise
