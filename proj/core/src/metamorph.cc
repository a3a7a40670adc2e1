// Copyright 2026 The relsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relsurf/metamorph.h"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "relsurf/calendar.h"
#include "relsurf/config.h"
#include "relsurf/domains.h"
#include "relsurf/errors.h"

namespace relsurf {

namespace data {
extern const std::string_view k_lexicon_json;
}  // namespace data

std::string_view ToString(MrCategory c) {
  switch (c) {
    case MrCategory::kLinguistic: return "Linguistic";
    case MrCategory::kStructural: return "Structural";
    case MrCategory::kContextual: return "Contextual";
    case MrCategory::kTemporal: return "Temporal";
  }
  return "?";
}

MrCategory CategoryOf(MrId id) {
  switch (id) {
    case MrId::kSynonym:
    case MrId::kParaphrase:
    case MrId::kVoice:
      return MrCategory::kLinguistic;
    case MrId::kReordering:
    case MrId::kSplitMerge:
      return MrCategory::kStructural;
    case MrId::kDistractor:
    case MrId::kCorrection:
      return MrCategory::kContextual;
    case MrId::kDateFormat:
    case MrId::kRelativeTime:
      return MrCategory::kTemporal;
  }
  return MrCategory::kLinguistic;
}

Lexicon LexiconFromJson(const nlohmann::json& j) {
  Lexicon lex;
  try {
    lex.version = j.at("version").get<int>();
    for (const auto& pair : j.at("synonyms")) {
      if (!pair.is_array() || pair.size() != 2) throw ConfigError("synonym entry must be a pair");
      lex.synonyms.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
    lex.distractors = j.at("distractors").get<std::map<std::string, std::vector<std::string>>>();
    lex.templates = j.at("templates").get<std::map<std::string, std::vector<std::string>>>();
    lex.passive_participles =
        j.at("passive_participles").get<std::map<std::string, std::string>>();
    lex.prepositions = j.at("prepositions").get<std::vector<std::string>>();
    lex.decoy_names = j.at("decoy_names").get<std::vector<std::string>>();
    lex.correction_template = j.at("correction_template").get<std::string>();
    lex.split_lead = j.at("split_lead").get<std::string>();
    lex.merge_joiner = j.at("merge_joiner").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad lexicon: ") + e.what());
  }
  if (lex.correction_template.find("{value}") == std::string::npos) {
    throw ConfigError("correction_template lacks {value}");
  }
  return lex;
}

const Lexicon& DefaultLexicon() {
  static const Lexicon kLexicon = LexiconFromJson(nlohmann::json::parse(data::k_lexicon_json));
  return kLexicon;
}

std::string RenderTemplate(std::string_view tmpl, const GoalMeta& goal) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i);
      if (close != std::string_view::npos) {
        out += goal.Get(tmpl.substr(i + 1, close - i - 1));
        i = close + 1;
        continue;
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

double PerturbationPlan::TotalWeight() const {
  double sum = 0.0;
  for (const auto& m : selected_mrs) sum += m.weight;
  return sum;
}

namespace {

using Span = std::pair<std::size_t, std::size_t>;  // [begin, end)

bool IsWordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::string LowerCopy(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool Bounded(std::string_view text, std::size_t pos, std::size_t len) {
  const bool left = pos == 0 || !IsWordChar(text[pos - 1]) || !IsWordChar(text[pos]);
  const std::size_t end = pos + len;
  const bool right =
      end >= text.size() || !IsWordChar(text[end]) || !IsWordChar(text[end - 1]);
  return left && right;
}

// First whole-token occurrence of needle at or after from.
std::optional<std::size_t> FindBounded(std::string_view text, std::string_view needle,
                                       std::size_t from = 0) {
  if (needle.empty()) return std::nullopt;
  for (std::size_t p = text.find(needle, from); p != std::string_view::npos;
       p = text.find(needle, p + 1)) {
    if (Bounded(text, p, needle.size())) return p;
  }
  return std::nullopt;
}

bool Overlaps(const std::vector<Span>& spans, std::size_t b, std::size_t e) {
  for (const auto& [sb, se] : spans) {
    if (b < se && sb < e) return true;
  }
  return false;
}

bool Inside(const std::vector<Span>& spans, std::size_t pos) {
  for (const auto& [sb, se] : spans) {
    if (pos >= sb && pos < se) return true;
  }
  return false;
}

// Character spans that no relation may rewrite: goal entity occurrences,
// date mentions, and quoted strings.
std::vector<Span> ProtectedSpans(std::string_view text, const GoalMeta& goal) {
  std::vector<Span> spans;
  for (const auto& e : goal.entities) {
    if (e.kind == EntityKind::kDate || e.value.empty()) continue;
    for (std::size_t p = text.find(e.value); p != std::string_view::npos;
         p = text.find(e.value, p + 1)) {
      spans.emplace_back(p, p + e.value.size());
    }
  }
  for (const auto& m : FindDateMentions(text)) spans.emplace_back(m.pos, m.pos + m.len);
  for (std::size_t p = 0; p < text.size(); ++p) {
    if (text[p] != '\'' || (p > 0 && IsWordChar(text[p - 1]))) continue;
    const std::size_t close = text.find('\'', p + 1);
    if (close == std::string_view::npos) break;
    spans.emplace_back(p, close + 1);
    p = close;
  }
  return spans;
}

// Positions where goal entities (dates in any form) begin, with their ends.
std::vector<Span> EntityOccurrences(std::string_view text, const GoalMeta& goal) {
  std::vector<Span> out;
  for (const auto& e : goal.entities) {
    if (e.kind == EntityKind::kDate || e.value.empty()) continue;
    for (std::size_t p = text.find(e.value); p != std::string_view::npos;
         p = text.find(e.value, p + 1)) {
      out.emplace_back(p, p + e.value.size());
    }
  }
  for (const auto& m : FindDateMentions(text)) out.emplace_back(m.pos, m.pos + m.len);
  std::sort(out.begin(), out.end());
  return out;
}

// Sentences as spans including their terminal punctuation.
std::vector<Span> Sentences(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  while (start < text.size() && text[start] == ' ') ++start;
  for (std::size_t i = start; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '?' || c == '!') && (i + 1 == text.size() || text[i + 1] == ' ')) {
      out.emplace_back(start, i + 1);
      start = i + 1;
      while (start < text.size() && text[start] == ' ') ++start;
      i = start - 1;
    }
  }
  if (start < text.size()) out.emplace_back(start, text.size());
  return out;
}

struct Word {
  std::size_t begin, end;
  std::string lower;  // stripped of surrounding punctuation
};

std::vector<Word> Words(std::string_view text, std::size_t offset, std::size_t end) {
  std::vector<Word> out;
  std::size_t i = offset;
  while (i < end) {
    while (i < end && text[i] == ' ') ++i;
    if (i >= end) break;
    std::size_t j = i;
    while (j < end && text[j] != ' ') ++j;
    std::string w = LowerCopy(text.substr(i, j - i));
    while (!w.empty() && !IsWordChar(w.back())) w.pop_back();
    while (!w.empty() && !IsWordChar(w.front())) w.erase(0, 1);
    out.push_back({i, j, w});
    i = j;
  }
  return out;
}

bool IsPreposition(const Lexicon& lex, const std::string& w) {
  return w != "of" &&
         std::find(lex.prepositions.begin(), lex.prepositions.end(), w) != lex.prepositions.end();
}

bool EndsWithTerminal(std::string_view s) {
  return !s.empty() && (s.back() == '.' || s.back() == '?' || s.back() == '!');
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == ',')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == ',')) --e;
  return std::string(s.substr(b, e - b));
}

// Constraint phrases of one sentence body [b, e): each starts at a
// preposition followed by an entity within three words, and runs to the next
// phrase start. Returns the phrase start offsets.
std::vector<std::size_t> PhraseStarts(std::string_view text, std::size_t b, std::size_t e,
                                      const GoalMeta& goal, const Lexicon& lex) {
  const auto words = Words(text, b, e);
  const auto entities = EntityOccurrences(text, goal);
  std::vector<std::size_t> starts;
  std::size_t skip_until = 0;
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i].begin < skip_until) continue;
    if (!IsPreposition(lex, words[i].lower)) continue;
    for (std::size_t k = i + 1; k < words.size() && k <= i + 3; ++k) {
      auto hit = std::find_if(entities.begin(), entities.end(), [&](const Span& s) {
        return s.first >= words[k].begin && s.first < words[k].end;
      });
      if (hit != entities.end()) {
        starts.push_back(words[i].begin);
        skip_until = hit->second;
        break;
      }
    }
  }
  return starts;
}

std::string ReplaceSpan(std::string_view text, std::size_t b, std::size_t e,
                        std::string_view with) {
  std::string out(text.substr(0, b));
  out.append(with);
  out.append(text.substr(e));
  return out;
}

// --- individual relations -----------------------------------------------------

std::optional<std::string> Synonym(std::string_view text, const GoalMeta& goal, Rng& rng,
                                   const Lexicon& lex) {
  auto blocked = ProtectedSpans(text, goal);
  std::vector<std::pair<std::string, std::string>> pairs = lex.synonyms;
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  const std::string lower = LowerCopy(text);
  struct Site {
    std::size_t begin, end;
    std::string replacement;
  };
  std::vector<Site> sites;
  for (const auto& [from, to] : pairs) {
    const std::string key = LowerCopy(from);
    for (auto p = FindBounded(lower, key); p; p = FindBounded(lower, key, *p + 1)) {
      const std::size_t e = *p + key.size();
      if (Overlaps(blocked, *p, e)) continue;
      std::string rep = to;
      if (std::isupper(static_cast<unsigned char>(text[*p])) && !rep.empty()) {
        rep[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(rep[0])));
      }
      sites.push_back({*p, e, rep});
      blocked.emplace_back(*p, e);
    }
  }
  if (sites.empty()) return std::nullopt;
  std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) { return a.begin < b.begin; });
  std::vector<bool> chosen(sites.size());
  bool any = false;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    chosen[i] = rng.Uniform() < 0.5;
    any = any || chosen[i];
  }
  if (!any) chosen[rng.Below(sites.size())] = true;
  std::string out(text);
  for (std::size_t i = sites.size(); i-- > 0;) {
    if (chosen[i]) out = ReplaceSpan(out, sites[i].begin, sites[i].end, sites[i].replacement);
  }
  return out;
}

std::optional<std::string> Paraphrase(std::string_view text, const GoalMeta& goal, Rng& rng,
                                      const MrOptions& options, const Lexicon& lex) {
  if (options.paraphrase_hook) {
    if (auto hooked = options.paraphrase_hook(text, goal)) return hooked;
  }
  auto it = lex.templates.find(goal.kind);
  if (it == lex.templates.end() || it->second.size() < 2) return std::nullopt;
  const auto& bank = it->second;
  const std::size_t n = bank.size() - 1;
  const std::size_t first = rng.Below(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::string out = RenderTemplate(bank[1 + (first + k) % n], goal);
    if (out != text) return out;
  }
  return std::nullopt;
}

std::optional<std::string> Reordering(std::string_view text, const GoalMeta& goal, Rng& rng,
                                      const Lexicon& lex) {
  const auto sentences = Sentences(text);
  if (sentences.empty()) return std::nullopt;
  auto [sb, se] = sentences[0];
  const auto words = Words(text, sb, se);
  if (words.empty() || !lex.passive_participles.count(words[0].lower)) return std::nullopt;
  const bool terminal = EndsWithTerminal(text.substr(sb, se - sb));
  const std::size_t body_end = terminal ? se - 1 : se;
  const auto starts = PhraseStarts(text, sb, body_end, goal, lex);
  if (starts.size() < 2) return std::nullopt;
  const std::string head = Trim(text.substr(sb, starts[0] - sb));
  std::vector<std::string> phrases;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::size_t end = i + 1 < starts.size() ? starts[i + 1] : body_end;
    phrases.push_back(Trim(text.substr(starts[i], end - starts[i])));
  }
  std::vector<std::string> shuffled = phrases;
  for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
    std::swap(shuffled[i], shuffled[rng.Below(i + 1)]);
  }
  if (shuffled == phrases) std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
  std::string sentence = head;
  for (const auto& p : shuffled) sentence += " " + p;
  if (terminal) sentence.push_back(text[se - 1]);
  return ReplaceSpan(text, sb, se, sentence);
}

std::optional<std::string> Voice(std::string_view text, const GoalMeta& goal,
                                 const Lexicon& lex) {
  const auto blocked = ProtectedSpans(text, goal);
  for (const auto& [sb, se] : Sentences(text)) {
    const auto words = Words(text, sb, se);
    if (words.size() < 2) continue;
    auto verb = lex.passive_participles.find(words[0].lower);
    if (verb == lex.passive_participles.end()) continue;
    const bool terminal = EndsWithTerminal(text.substr(sb, se - sb));
    const std::size_t body_end = terminal ? se - 1 : se;
    std::size_t split = body_end;
    for (std::size_t i = 2; i < words.size(); ++i) {
      if (IsPreposition(lex, words[i].lower)) {
        split = words[i].begin;
        break;
      }
    }
    const std::size_t obj_begin = words[1].begin;
    if (split <= obj_begin) continue;
    std::string object = Trim(text.substr(obj_begin, split - obj_begin));
    const std::string rest = split < body_end ? Trim(text.substr(split, body_end - split)) : "";
    if (object.empty()) continue;
    if (std::islower(static_cast<unsigned char>(object[0])) && !Inside(blocked, obj_begin)) {
      object[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(object[0])));
    }
    std::string sentence = object + " should be " + verb->second;
    if (!rest.empty()) sentence += " " + rest;
    sentence.push_back(terminal ? text[se - 1] : '.');
    return ReplaceSpan(text, sb, se, sentence);
  }
  return std::nullopt;
}

std::optional<std::string> SplitMerge(std::string_view text, const GoalMeta& goal, Rng& rng,
                                      const Lexicon& lex) {
  const auto sentences = Sentences(text);
  std::optional<std::string> merged;
  if (sentences.size() >= 2 && EndsWithTerminal(text.substr(sentences[0].first,
                                                            sentences[0].second -
                                                                sentences[0].first))) {
    const auto [ab, ae] = sentences[0];
    const auto [bb, be] = sentences[1];
    std::string second(text.substr(bb, be - bb));
    const auto blocked = ProtectedSpans(text, goal);
    if (!second.empty() && std::isupper(static_cast<unsigned char>(second[0])) &&
        !Inside(blocked, bb)) {
      second[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(second[0])));
    }
    std::string joined(text.substr(ab, ae - 1 - ab));
    joined += lex.merge_joiner + second;
    merged = ReplaceSpan(text, ab, be, joined);
  }
  std::optional<std::string> split;
  if (!sentences.empty()) {
    const auto [sb, se] = sentences[0];
    const bool terminal = EndsWithTerminal(text.substr(sb, se - sb));
    const std::size_t body_end = terminal ? se - 1 : se;
    const auto starts = PhraseStarts(text, sb, body_end, goal, lex);
    if (starts.size() >= 2) {
      std::string first = Trim(text.substr(sb, starts[1] - sb)) + ".";
      std::string second =
          lex.split_lead + " " + Trim(text.substr(starts[1], body_end - starts[1])) + ".";
      split = ReplaceSpan(text, sb, se, first + " " + second);
    }
  }
  if (merged && split) return rng.Below(2) == 0 ? merged : split;
  return merged ? merged : split;
}

std::optional<std::string> Distractor(std::string_view text, const GoalMeta& goal, Rng& rng,
                                      const Lexicon& lex) {
  std::vector<std::string> bank;
  if (const VerifierSpec* v = FindVerifier(goal.kind)) {
    auto it = lex.distractors.find(std::string(DomainName(v->domain)));
    if (it != lex.distractors.end()) bank = it->second;
  }
  if (bank.empty()) {
    for (const auto& [_, sentences] : lex.distractors) {
      bank.insert(bank.end(), sentences.begin(), sentences.end());
    }
  }
  if (bank.empty()) return std::nullopt;
  std::string out(text);
  if (!out.empty() && !EndsWithTerminal(out)) out.push_back('.');
  if (!out.empty()) out.push_back(' ');
  out += bank[rng.Below(bank.size())];
  return out;
}

bool IsAbsolute(std::string_view mention) {
  int digits = 0;
  for (char c : mention) {
    digits = std::isdigit(static_cast<unsigned char>(c)) ? digits + 1 : 0;
    if (digits == 4) return true;
  }
  return false;
}

std::string ShiftTrailingNumber(const std::string& value, std::uint64_t delta) {
  std::size_t i = value.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(value[i - 1]))) --i;
  if (i == value.size()) return value + "-2";
  const std::string digits = value.substr(i);
  const unsigned long long n = std::stoull(digits);
  std::string next = std::to_string(n + delta);
  if (next.size() < digits.size()) next.insert(0, digits.size() - next.size(), '0');
  return value.substr(0, i) + next;
}

std::optional<std::string> Correction(std::string_view text, const GoalMeta& goal, Rng& rng,
                                      const Lexicon& lex) {
  struct Candidate {
    const GoalEntity* entity;
    std::size_t pos, len;
  };
  std::vector<Candidate> candidates;
  const auto mentions = FindDateMentions(text);
  for (const auto& e : goal.entities) {
    switch (e.kind) {
      case EntityKind::kDate:
        for (const auto& m : mentions) {
          if (m.iso == e.value) {
            candidates.push_back({&e, m.pos, m.len});
            break;
          }
        }
        break;
      case EntityKind::kTime:
      case EntityKind::kName:
      case EntityKind::kId:
      case EntityKind::kNumber:
        if (auto p = FindBounded(text, e.value)) candidates.push_back({&e, *p, e.value.size()});
        break;
      default:
        break;
    }
  }
  if (candidates.empty()) return std::nullopt;
  const Candidate c = candidates[rng.Below(candidates.size())];
  auto taken = [&](const std::string& v) {
    for (const auto& e : goal.entities) {
      if (e.value == v) return true;
    }
    return text.find(v) != std::string_view::npos;
  };
  std::string decoy;
  const std::string surface(text.substr(c.pos, c.len));
  switch (c.entity->kind) {
    case EntityKind::kDate:
      for (int d = 1 + static_cast<int>(rng.Below(3)); decoy.empty() || taken(decoy); ++d) {
        decoy = AddDays(c.entity->value, d);
      }
      break;
    case EntityKind::kTime: {
      int h = 0, m = 0;
      std::sscanf(c.entity->value.c_str(), "%d:%d", &h, &m);
      for (int step = 1 + static_cast<int>(rng.Below(3)); decoy.empty() || taken(decoy); ++step) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%02d:%02d", (h + step) % 24, m);
        decoy = buf;
      }
      break;
    }
    case EntityKind::kName: {
      std::vector<std::string> pool;
      for (const auto& n : lex.decoy_names) {
        if (!taken(n)) pool.push_back(n);
      }
      if (pool.empty()) return std::nullopt;
      decoy = pool[rng.Below(pool.size())];
      break;
    }
    default:
      for (std::uint64_t d = 1 + rng.Below(8); decoy.empty() || taken(decoy); ++d) {
        decoy = ShiftTrailingNumber(c.entity->value, d);
      }
      break;
  }
  std::string out = ReplaceSpan(text, c.pos, c.pos + c.len, decoy);
  // The correction follows the sentence that now carries the decoy.
  std::size_t insert_at = out.size();
  for (const auto& [sb, se] : Sentences(out)) {
    if (c.pos >= sb && c.pos < se) {
      insert_at = se;
      break;
    }
  }
  std::string note = lex.correction_template;
  note.replace(note.find("{value}"), 7, surface);
  std::string prefix = out.substr(0, insert_at);
  if (!prefix.empty() && !EndsWithTerminal(prefix)) prefix.push_back('.');
  return prefix + " " + note + out.substr(insert_at);
}

std::optional<std::string> DateFormat(std::string_view text, Rng& rng) {
  std::vector<DateMention> absolute;
  for (auto& m : FindDateMentions(text)) {
    if (IsAbsolute(text.substr(m.pos, m.len))) absolute.push_back(m);
  }
  if (absolute.empty()) return std::nullopt;
  const DateStyle styles[] = {DateStyle::kMonthDayYear, DateStyle::kUsNumeric,
                              DateStyle::kDayMonthYear};
  const std::size_t first = rng.Below(3);
  for (std::size_t k = 0; k < 3; ++k) {
    const DateStyle style = styles[(first + k) % 3];
    std::string out(text);
    for (std::size_t i = absolute.size(); i-- > 0;) {
      const auto& m = absolute[i];
      out = ReplaceSpan(out, m.pos, m.pos + m.len, FormatDate(m.iso, style));
    }
    if (out != text) return out;
  }
  return std::nullopt;
}

std::optional<std::string> RelativeTime(std::string_view text) {
  std::string out(text);
  bool changed = false;
  const auto mentions = FindDateMentions(text);
  for (std::size_t i = mentions.size(); i-- > 0;) {
    const auto& m = mentions[i];
    if (!IsAbsolute(text.substr(m.pos, m.len))) continue;
    auto phrase = RelativePhrase(m.iso);
    if (!phrase) continue;
    std::size_t begin = m.pos;
    // "on in 3 days" reads wrong; "on the day after tomorrow" is fine.
    if (phrase->rfind("the ", 0) != 0 && begin >= 3 && out.compare(begin - 3, 3, "on ") == 0 &&
        (begin == 3 || out[begin - 4] == ' ')) {
      begin -= 3;
    }
    out = ReplaceSpan(out, begin, m.pos + m.len, *phrase);
    changed = true;
  }
  if (!changed) return std::nullopt;
  return out;
}

}  // namespace

std::optional<std::string> ApplyMr(MrId id, std::string_view description, const GoalMeta& goal,
                                   Rng& rng, const MrOptions& options) {
  const Lexicon& lex = options.lexicon ? *options.lexicon : DefaultLexicon();
  std::optional<std::string> out;
  switch (id) {
    case MrId::kSynonym: out = Synonym(description, goal, rng, lex); break;
    case MrId::kParaphrase: out = Paraphrase(description, goal, rng, options, lex); break;
    case MrId::kVoice: out = Voice(description, goal, lex); break;
    case MrId::kReordering: out = Reordering(description, goal, rng, lex); break;
    case MrId::kSplitMerge: out = SplitMerge(description, goal, rng, lex); break;
    case MrId::kDistractor: out = Distractor(description, goal, rng, lex); break;
    case MrId::kCorrection: out = Correction(description, goal, rng, lex); break;
    case MrId::kDateFormat: out = DateFormat(description, rng); break;
    case MrId::kRelativeTime: out = RelativeTime(description); break;
  }
  if (out && *out == description) return std::nullopt;
  return out;
}

namespace {

constexpr MrId kApplicationOrder[] = {
    MrId::kParaphrase, MrId::kReordering, MrId::kVoice,
    MrId::kSplitMerge, MrId::kSynonym,    MrId::kCorrection,
    MrId::kDateFormat, MrId::kRelativeTime, MrId::kDistractor,
};

void Draw(Rng& rng, std::vector<MrId> pool, std::size_t n, std::vector<MRDescriptor>& out) {
  for (std::size_t i = 0; i < n && !pool.empty(); ++i) {
    const std::size_t j = rng.Below(pool.size());
    out.push_back({pool[j], kMrWeight, CategoryOf(pool[j])});
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
}

}  // namespace

PerturbationPlan PlanPerturbation(double epsilon, std::uint64_t seed) {
  if (!IsSupportedLevel(epsilon)) {
    throw ConfigError("unsupported epsilon " + std::to_string(epsilon));
  }
  PerturbationPlan plan;
  plan.epsilon = epsilon;
  plan.seed = seed;
  if (epsilon < 0.05) return plan;
  Rng rng(seed, RngStream::kPerturbation);
  Draw(rng, {MrId::kSynonym, MrId::kDateFormat, MrId::kReordering, MrId::kRelativeTime}, 2,
       plan.selected_mrs);
  if (epsilon > 0.15) {
    Draw(rng, {MrId::kDistractor, MrId::kCorrection, MrId::kParaphrase, MrId::kVoice}, 2,
         plan.selected_mrs);
  }
  if (epsilon > 0.25) {
    std::size_t added = 0;
    for (MrId id : {MrId::kParaphrase, MrId::kCorrection, MrId::kSplitMerge, MrId::kVoice,
                    MrId::kDistractor}) {
      if (added == 2) break;
      const bool drawn = std::any_of(plan.selected_mrs.begin(), plan.selected_mrs.end(),
                                     [&](const MRDescriptor& m) { return m.id == id; });
      if (!drawn) {
        plan.selected_mrs.push_back({id, kMrWeight, CategoryOf(id)});
        ++added;
      }
    }
  }
  return plan;
}

PerturbedTask PerturbTask(const TaskSpec& task, double epsilon, std::uint64_t seed,
                          const MrOptions& options) {
  const PerturbationPlan plan = PlanPerturbation(epsilon, seed);
  PerturbedTask out{task, {}};
  if (plan.selected_mrs.empty()) return out;
  // Transform draws come from their own generator so that adding an MR to a
  // pool does not shift the plan.
  Rng rng(SplitMix64(seed ^ 0x6d6574616d6f7270ULL), RngStream::kPerturbation);
  std::string text = task.description;
  for (MrId id : kApplicationOrder) {
    auto sel = std::find_if(plan.selected_mrs.begin(), plan.selected_mrs.end(),
                            [&](const MRDescriptor& m) { return m.id == id; });
    if (sel == plan.selected_mrs.end()) continue;
    auto next = ApplyMr(id, text, task.goal_meta, rng, options);
    const bool ok = next && GoalEntitiesVisible(task.goal_meta, *next);
    if (ok) text = std::move(*next);
    out.applied_mrs.push_back({id, sel->weight, ok});
  }
  out.task.description = std::move(text);
  return out;
}

}  // namespace relsurf
