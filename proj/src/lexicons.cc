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

#include "nlunoise/lexicons.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <unordered_set>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include "nlunoise/errors.h"
#include "nlunoise/text.h"

namespace nlunoise {
namespace {

// --- WordNet ---------------------------------------------------------------

struct WndbFile {
  std::string path;
  std::string text;
};

[[noreturn]] void WndbError(const WndbFile& f, std::size_t offset,
                            const std::string& what) {
  throw DataError(f.path + ":" + std::to_string(offset) +
                  ": malformed WNDB line: " + what);
}

template <typename F>
void ForEachLine(const std::string& text, F&& f) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(line, start);
    start = end + 1;
  }
}

bool ParseUnsigned(std::string_view s, int base, std::uint64_t& out) {
  if (s.empty()) return false;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), out, base);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

// Strips WordNet adjective position markers: "big(a)", "galore(ip)".
std::string NormalizeWord(std::string_view w) {
  const std::size_t paren = w.find('(');
  if (paren != std::string_view::npos && paren > 0 && w.back() == ')') {
    w = w.substr(0, paren);
  }
  return ToLowerAscii(w);
}

using SynsetTable = std::unordered_map<std::uint64_t, std::vector<std::string>>;

SynsetTable ParseDataFile(const WndbFile& f) {
  SynsetTable table;
  ForEachLine(f.text, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == ' ') return;  // license header
    const std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.size() < 6) WndbError(f, offset, "too few fields");
    std::uint64_t synset_offset = 0, w_cnt = 0, ignored = 0;
    if (!ParseUnsigned(fields[0], 10, synset_offset)) {
      WndbError(f, offset, "bad synset offset '" + fields[0] + "'");
    }
    if (!ParseUnsigned(fields[1], 10, ignored)) {
      WndbError(f, offset, "bad lex_filenum");
    }
    if (fields[2].size() != 1 || std::string_view("nvasr").find(fields[2]) ==
                                     std::string_view::npos) {
      WndbError(f, offset, "bad ss_type '" + fields[2] + "'");
    }
    if (!ParseUnsigned(fields[3], 16, w_cnt) || w_cnt == 0) {
      WndbError(f, offset, "bad w_cnt");
    }
    if (fields.size() < 4 + 2 * w_cnt) WndbError(f, offset, "truncated words");
    std::vector<std::string> members;
    for (std::uint64_t i = 0; i < w_cnt; ++i) {
      const std::string& lex_id = fields[4 + 2 * i + 1];
      if (!ParseUnsigned(lex_id, 16, ignored)) {
        WndbError(f, offset, "bad lex_id '" + lex_id + "'");
      }
      members.push_back(NormalizeWord(fields[4 + 2 * i]));
    }
    table[synset_offset] = std::move(members);
  });
  return table;
}

// Returns the synset offsets referenced by the index.
std::vector<std::uint64_t> ParseIndexFile(const WndbFile& f) {
  std::vector<std::uint64_t> offsets;
  ForEachLine(f.text, [&](std::string_view line, std::size_t offset) {
    if (line.empty() || line.front() == ' ') return;
    const std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.size() < 6) WndbError(f, offset, "too few fields");
    std::uint64_t synset_cnt = 0, p_cnt = 0, ignored = 0;
    if (!ParseUnsigned(fields[2], 10, synset_cnt)) {
      WndbError(f, offset, "bad synset_cnt");
    }
    if (!ParseUnsigned(fields[3], 10, p_cnt)) WndbError(f, offset, "bad p_cnt");
    const std::size_t sense_pos = 4 + p_cnt;
    if (fields.size() != sense_pos + 2 + synset_cnt) {
      WndbError(f, offset, "field count does not match synset_cnt/p_cnt");
    }
    if (!ParseUnsigned(fields[sense_pos], 10, ignored) ||
        !ParseUnsigned(fields[sense_pos + 1], 10, ignored)) {
      WndbError(f, offset, "bad sense counts");
    }
    for (std::size_t i = sense_pos + 2; i < fields.size(); ++i) {
      std::uint64_t o = 0;
      if (!ParseUnsigned(fields[i], 10, o)) {
        WndbError(f, offset, "bad synset offset '" + fields[i] + "'");
      }
      offsets.push_back(o);
    }
  });
  return offsets;
}

// --- Defaults --------------------------------------------------------------

constexpr std::string_view kDefaultAbbreviations = R"(# source	abbreviation
people	ppl
please	pls
please	plz
thanks	thx
thank you	ty
tomorrow	tmrw
tomorrow	2moro
tonight	tnght
tonight	2nite
today	2day
before	b4
great	gr8
later	l8r
message	msg
messages	msgs
information	info
minute	min
minutes	mins
second	sec
seconds	secs
hour	hr
hours	hrs
morning	mrng
evening	eve
afternoon	aftn
weekend	wknd
week	wk
weeks	wks
month	mo
year	yr
years	yrs
number	num
address	addr
airport	arpt
flight	flt
flights	flts
departure	dep
departing	dep
arrival	arr
arriving	arr
reservation	resv
reservations	resvs
economy	econ
business	biz
international	intl
available	avail
approximately	approx
between	btwn
without	w/o
with	w/
about	abt
because	bc
because	cuz
okay	ok
favorite	fav
favourite	fav
picture	pic
pictures	pics
application	app
restaurant	rstrnt
temperature	temp
weather	wthr
forecast	fcst
something	sth
someone	sb
everyone	evry1
anyone	any1
street	st
avenue	ave
road	rd
boulevard	blvd
apartment	apt
building	bldg
department	dept
account	acct
amount	amt
average	avg
maximum	max
minimum	min
document	doc
documents	docs
reference	ref
quantity	qty
versus	vs
television	tv
video	vid
videos	vids
photograph	photo
telephone	phone
really	rly
probably	prob
definitely	def
seriously	srsly
good	gd
night	nite
light	lite
through	thru
though	tho
should	shd
monday	mon
tuesday	tue
wednesday	wed
thursday	thu
friday	fri
saturday	sat
sunday	sun
january	jan
february	feb
april	apr
august	aug
september	sept
october	oct
november	nov
december	dec
as soon as possible	asap
by the way	btw
in my opinion	imo
for your information	fyi
talk to you later	ttyl
be right back	brb
directions	dirs
to	2
too	2
two	2
for	4
four	4
ate	8
eight	8
one	1
won	1
you	u
are	r
your	ur
why	y
see	c
be	b
)";

struct RegularVerb {
  const char* base;
  bool doubles;  // stop -> stopping, stopped
};

constexpr RegularVerb kRegularVerbs[] = {
    {"book", false},     {"reserve", false},  {"need", false},
    {"want", false},     {"show", false},     {"list", false},
    {"play", false},     {"start", false},    {"stop", true},
    {"arrive", false},   {"depart", false},   {"return", false},
    {"cancel", false},   {"change", false},   {"check", false},
    {"look", false},     {"search", false},   {"rate", false},
    {"add", false},      {"open", false},     {"close", false},
    {"schedule", false}, {"plan", true},      {"stay", false},
    {"visit", false},    {"call", false},     {"order", false},
    {"travel", false},   {"land", false},     {"connect", false},
    {"transfer", true},  {"request", false},  {"require", false},
    {"prefer", true},    {"compare", false},  {"confirm", false},
    {"select", false},   {"watch", false},    {"listen", false},
    {"stream", false},   {"shuffle", false},  {"repeat", false},
    {"rename", false},   {"remove", false},   {"create", false},
    {"update", false},   {"delete", false},   {"share", false},
    {"save", false},     {"print", false},    {"email", false},
    {"help", false},     {"ask", false},      {"answer", false},
    {"move", false},     {"walk", false},     {"cook", false},
    {"bake", false},     {"clean", false},    {"paint", false},
    {"rent", false},     {"park", false},     {"ship", true},
    {"pick", false},     {"drop", true},      {"turn", false},
    {"try", false},      {"carry", false},    {"reply", false},
    {"study", false},    {"like", false},     {"love", false},
};

constexpr const char* kRegularNouns[] = {
    "flight",  "ticket",  "airport", "seat",    "fare",     "city",
    "trip",    "hotel",   "song",    "playlist", "album",   "movie",
    "table",   "meal",    "day",     "night",   "morning",  "evening",
    "airline", "plane",   "class",   "bus",     "taxi",     "train",
    "car",     "artist",  "track",   "restaurant", "reservation", "hour",
    "week",    "minute",  "forecast", "alarm",  "reminder", "rating",
};

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string ThirdPerson(const std::string& w) {
  const char last = w.back();
  if (last == 's' || last == 'x' || last == 'z' || w.ends_with("ch") ||
      w.ends_with("sh")) {
    return w + "es";
  }
  if (last == 'y' && w.size() > 1 && !IsVowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

std::string Progressive(const std::string& w, bool doubles) {
  if (doubles) return w + w.back() + "ing";
  if (w.ends_with("ie")) return w.substr(0, w.size() - 2) + "ying";
  if (w.back() == 'e' && !w.ends_with("ee")) {
    return w.substr(0, w.size() - 1) + "ing";
  }
  return w + "ing";
}

std::string Past(const std::string& w, bool doubles) {
  if (doubles) return w + w.back() + "ed";
  if (w.back() == 'e') return w + "d";
  if (w.back() == 'y' && w.size() > 1 && !IsVowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ied";
  }
  return w + "ed";
}

void IgnoreSigpipeOnce() {
  static const bool done = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)done;
}

}  // namespace

// --- SynonymLexicon --------------------------------------------------------

void SynonymLexicon::AddSynset(PartOfSpeech pos,
                               std::span<const std::string> members) {
  std::vector<std::string> lower;
  for (const std::string& m : members) lower.push_back(ToLowerAscii(m));
  auto& bucket = by_pos_[static_cast<int>(pos)];
  for (const std::string& a : lower) {
    for (const std::string& b : lower) {
      if (a == b) continue;
      all_[a].insert(b);
      bucket[a].insert(b);
    }
  }
}

std::set<std::string> SynonymLexicon::Synonyms(
    std::string_view lemma, std::optional<PartOfSpeech> pos) const {
  const std::string key = ToLowerAscii(lemma);
  const auto& table = pos ? by_pos_[static_cast<int>(*pos)] : all_;
  const auto it = table.find(key);
  return it == table.end() ? std::set<std::string>{} : it->second;
}

SynonymLexicon LoadWordNet(const std::string& dir) {
  namespace fs = std::filesystem;
  static constexpr std::pair<const char*, PartOfSpeech> kParts[] = {
      {"noun", PartOfSpeech::kNoun},
      {"verb", PartOfSpeech::kVerb},
      {"adj", PartOfSpeech::kAdjective},
      {"adv", PartOfSpeech::kAdverb}};
  if (!fs::is_directory(dir)) {
    throw ResourceError("WordNet directory not found: " + dir);
  }
  SynonymLexicon lexicon;
  int loaded = 0;
  for (const auto& [suffix, pos] : kParts) {
    const fs::path index_path = fs::path(dir) / (std::string("index.") + suffix);
    const fs::path data_path = fs::path(dir) / (std::string("data.") + suffix);
    if (!fs::exists(index_path)) continue;
    if (!fs::exists(data_path)) {
      throw ResourceError("missing " + data_path.string() + " for " +
                          index_path.string());
    }
    const WndbFile index{index_path.string(), ReadFile(index_path.string())};
    const WndbFile data{data_path.string(), ReadFile(data_path.string())};
    const SynsetTable synsets = ParseDataFile(data);
    std::unordered_set<std::uint64_t> added;
    for (std::uint64_t offset : ParseIndexFile(index)) {
      const auto it = synsets.find(offset);
      if (it == synsets.end()) {
        throw DataError(index.path + ": synset offset " +
                        std::to_string(offset) + " not found in " + data.path);
      }
      if (added.insert(offset).second) lexicon.AddSynset(pos, it->second);
    }
    ++loaded;
  }
  if (loaded == 0) {
    throw ResourceError("no WNDB index.{noun,verb,adj,adv} files in " + dir);
  }
  return lexicon;
}

// --- Misspellings ----------------------------------------------------------

const std::vector<std::string>* MisspellingDb::Find(
    std::string_view word) const {
  const auto it = entries.find(ToLowerAscii(word));
  return it == entries.end() ? nullptr : &it->second;
}

MisspellingDb ParseMisspellingDb(std::string_view text) {
  MisspellingDb db;
  std::optional<std::string> current;
  bool skipping = false;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '$') {
      const std::string word(Trim(line.substr(1)));
      if (word.empty()) throw DataError("empty '$' header", i + 1);
      skipping = word == "?";
      current = ToLowerAscii(word);
      continue;
    }
    if (!current) {
      throw DataError("misspelling before any '$' header", i + 1);
    }
    if (skipping) continue;
    const std::string misspelling = SplitWhitespace(line).front();
    if (ToLowerAscii(misspelling) == *current) continue;
    auto& list = db.entries[*current];
    if (std::find(list.begin(), list.end(), misspelling) == list.end()) {
      list.push_back(misspelling);
    }
  }
  return db;
}

MisspellingDb LoadMisspellingDb(const std::string& path) {
  return ParseMisspellingDb(ReadFile(path));
}

// --- TSV pair tables -------------------------------------------------------

std::vector<TsvPair> ParseTsvPairs(std::string_view text) {
  std::vector<TsvPair> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  const std::vector<std::string_view> lines = SplitLines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view line = lines[i];
    if (Trim(line).empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    const std::size_t tab2 =
        tab == std::string_view::npos ? tab : line.find('\t', tab + 1);
    if (tab == std::string_view::npos || tab2 != std::string_view::npos) {
      throw DataError("expected 2 tab-separated columns", i + 1);
    }
    std::string source = ToLowerAscii(Trim(line.substr(0, tab)));
    std::string variant(Trim(line.substr(tab + 1)));
    if (source.empty() || variant.empty()) {
      throw DataError("empty column", i + 1);
    }
    if (HasAsciiWhitespace(variant)) {
      throw DataError("variant must be a single token", i + 1);
    }
    if (!seen.emplace(source, variant).second) continue;
    pairs.push_back(TsvPair{std::move(source), std::move(variant), i + 1});
  }
  return pairs;
}

std::vector<TsvPair> LoadTsvPairs(const std::string& path) {
  return ParseTsvPairs(ReadFile(path));
}

AbbreviationKb AbbreviationKb::FromPairs(std::span<const TsvPair> pairs) {
  AbbreviationKb kb;
  for (const TsvPair& p : pairs) {
    const bool digits = std::all_of(p.variant.begin(), p.variant.end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
    const bool single_letter = p.variant.size() == 1 && IsAsciiAlpha(p.variant);
    if (digits || single_letter) {
      kb.phonetic_numerals[p.source].push_back(p.variant);
    } else if (p.variant.size() < p.source.size()) {
      kb.abbreviations[p.source].push_back(p.variant);
    } else {
      throw DataError("abbreviation '" + p.variant +
                          "' is not shorter than '" + p.source + "'",
                      p.line);
    }
  }
  return kb;
}

std::size_t AbbreviationKb::longest_phrase() const {
  std::size_t n = 1;
  for (const auto& [source, _] : abbreviations) {
    n = std::max(n, SplitWhitespace(source).size());
  }
  return n;
}

MorphLexicon MorphLexicon::FromPairs(std::span<const TsvPair> pairs) {
  MorphLexicon lex;
  auto add = [&](const std::string& a, const std::string& b) {
    auto& list = lex.variants[a];
    if (std::find(list.begin(), list.end(), b) == list.end()) list.push_back(b);
  };
  for (const TsvPair& p : pairs) {
    const std::string variant = ToLowerAscii(p.variant);
    if (variant == p.source) continue;
    add(p.source, variant);
    add(variant, p.source);
  }
  return lex;
}

std::vector<TsvPair> DefaultAbbreviationPairs() {
  return ParseTsvPairs(kDefaultAbbreviations);
}

std::vector<TsvPair> DefaultMorphPairs() {
  std::vector<TsvPair> pairs;
  for (const RegularVerb& v : kRegularVerbs) {
    const std::string base = v.base;
    pairs.push_back({base, ThirdPerson(base), 0});
    pairs.push_back({base, Progressive(base, v.doubles), 0});
    pairs.push_back({base, Past(base, v.doubles), 0});
  }
  for (const char* noun : kRegularNouns) {
    pairs.push_back({noun, ThirdPerson(noun), 0});
  }
  return pairs;
}

AbbreviationKb DefaultAbbreviationKb() {
  return AbbreviationKb::FromPairs(DefaultAbbreviationPairs());
}

MorphLexicon DefaultMorphLexicon() {
  return MorphLexicon::FromPairs(DefaultMorphPairs());
}

// --- QWERTY ----------------------------------------------------------------

QwertyMap::QwertyMap() {
  static constexpr std::string_view kRows[] = {"1234567890", "qwertyuiop",
                                               "asdfghjkl", "zxcvbnm"};
  auto add = [&](char a, int row, int col) {
    if (row < 0 || row >= 4 || col < 0 ||
        col >= static_cast<int>(kRows[row].size())) {
      return;
    }
    neighbors_[static_cast<unsigned char>(a)].push_back(kRows[row][col]);
  };
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < static_cast<int>(kRows[r].size()); ++c) {
      const char key = kRows[r][c];
      add(key, r, c - 1);
      add(key, r, c + 1);
      add(key, r - 1, c);
      add(key, r - 1, c + 1);
      add(key, r + 1, c - 1);
      add(key, r + 1, c);
    }
  }
  for (std::string& n : neighbors_) std::sort(n.begin(), n.end());
}

const QwertyMap& QwertyMap::Default() {
  static const QwertyMap map;
  return map;
}

const std::string& QwertyMap::Neighbors(char c) const {
  static const std::string kEmpty;
  const auto u = static_cast<unsigned char>(c);
  return u < 128 ? neighbors_[u] : kEmpty;
}

bool QwertyMap::AreNeighbors(char a, char b) const {
  return Neighbors(a).find(b) != std::string::npos;
}

// --- NgramScorer -----------------------------------------------------------

namespace {
constexpr std::uint32_t kUnk = 0;
constexpr std::uint32_t kBos = 1;
constexpr std::uint32_t kEos = 2;
}  // namespace

NgramScorer::NgramScorer(const Dataset& corpus, int order, double add_k)
    : order_(order), add_k_(add_k) {
  if (order != 2 && order != 3) {
    throw std::invalid_argument("NgramScorer: order must be 2 or 3");
  }
  if (!(add_k > 0.0)) throw std::invalid_argument("NgramScorer: add_k <= 0");
  if (corpus.utterances.empty()) {
    throw DataError("NgramScorer: empty training corpus");
  }
  vocab_.emplace("<unk>", kUnk);
  vocab_.emplace("<s>", kBos);
  vocab_.emplace("</s>", kEos);
  for (const Utterance& u : corpus.utterances) {
    for (const std::string& t : u.tokens) {
      vocab_.emplace(t, static_cast<std::uint32_t>(vocab_.size()));
    }
  }
  for (const Utterance& u : corpus.utterances) {
    std::vector<std::uint32_t> ids(static_cast<std::size_t>(order - 1), kBos);
    for (const std::string& t : u.tokens) ids.push_back(vocab_.at(t));
    ids.push_back(kEos);
    for (std::size_t i = static_cast<std::size_t>(order - 1); i < ids.size();
         ++i) {
      std::span<const std::uint32_t> gram(ids.data() + i + 1 - order_,
                                          static_cast<std::size_t>(order_));
      ngram_counts_[Key(gram)] += 1.0;
      context_counts_[Key(gram.first(gram.size() - 1))] += 1.0;
    }
  }
}

std::uint32_t NgramScorer::Id(std::string_view token) const {
  const auto it = vocab_.find(std::string(token));
  return it == vocab_.end() ? kUnk : it->second;
}

std::string NgramScorer::Key(std::span<const std::uint32_t> ids) const {
  return std::string(reinterpret_cast<const char*>(ids.data()),
                     ids.size() * sizeof(std::uint32_t));
}

double NgramScorer::Score(std::span<const std::string> tokens) const {
  std::vector<std::uint32_t> ids(static_cast<std::size_t>(order_ - 1), kBos);
  for (const std::string& t : tokens) ids.push_back(Id(t));
  ids.push_back(kEos);
  // <s> is never predicted, so it is excluded from the event space.
  const double vocab_size = static_cast<double>(vocab_.size() - 1);
  double log_prob = 0.0;
  std::size_t events = 0;
  for (std::size_t i = static_cast<std::size_t>(order_ - 1); i < ids.size();
       ++i) {
    std::span<const std::uint32_t> gram(ids.data() + i + 1 - order_,
                                        static_cast<std::size_t>(order_));
    const auto g = ngram_counts_.find(Key(gram));
    const auto c = context_counts_.find(Key(gram.first(gram.size() - 1)));
    const double num = (g == ngram_counts_.end() ? 0.0 : g->second) + add_k_;
    const double den =
        (c == context_counts_.end() ? 0.0 : c->second) + add_k_ * vocab_size;
    log_prob += std::log(num / den);
    ++events;
  }
  return std::exp(-log_prob / static_cast<double>(events));
}

// --- CommandScorer ---------------------------------------------------------

CommandScorer::CommandScorer(const std::string& command) {
  IgnoreSigpipeOnce();
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw ResourceError("pipe() failed");
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw ResourceError("pipe() failed");
  }
  const pid_t pid = fork();
  if (pid < 0) throw ResourceError("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

CommandScorer::~CommandScorer() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

double CommandScorer::Score(std::span<const std::string> tokens) const {
  std::lock_guard<std::mutex> lock(mu_);
  const std::string line = Join(tokens, " ") + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n =
        write(to_child_, line.data() + written, line.size() - written);
    if (n <= 0) throw ResourceError("scorer process closed its input");
    written += static_cast<std::size_t>(n);
  }
  std::size_t newline;
  while ((newline = buffer_.find('\n')) == std::string::npos) {
    char chunk[256];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n <= 0) throw ResourceError("scorer process closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  const std::string reply(Trim(std::string_view(buffer_).substr(0, newline)));
  buffer_.erase(0, newline + 1);
  char* end = nullptr;
  const double score = std::strtod(reply.c_str(), &end);
  if (reply.empty() || end != reply.c_str() + reply.size() ||
      !std::isfinite(score)) {
    throw ResourceError("scorer returned a non-numeric line: '" + reply + "'");
  }
  return score;
}

}  // namespace nlunoise
