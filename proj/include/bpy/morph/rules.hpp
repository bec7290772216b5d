// Copyright 2026 The bpy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BPY_MORPH_RULES_HPP
#define BPY_MORPH_RULES_HPP

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/legacy.hpp"
#include "bpy/morph/features.hpp"
#include "bpy/script.hpp"
#include "bpy/utf8.hpp"

namespace bpy::morph {

/// A lexical stem. Text fields are NFC.
struct Root {
  std::string lemma;
  Pos pos = Pos::Noun;
  FinalClass final_class = FinalClass::Consonant;
  std::string gloss;
  std::optional<std::string> oblique;  // pronouns only
  std::set<std::string> tags;

  friend bool operator==(const Root&, const Root&) = default;
};

enum class Placement { After, Before, AfterAccusativeForm };

enum class Dimension { Gender, Number, Case, TenseMood };

/// Orthographic rewrite at a stem/suffix junction. Patterns are NFD.
struct SandhiRule {
  std::string id;
  std::set<FinalClass> context;
  std::string root_edge;
  std::string suffix_edge;
  std::string replacement;
};

/// One ending (or preposed word). `affix` is NFD with word breaks as spaces;
/// empty means zero marking.
struct SuffixRule {
  std::string id;
  std::set<Pos> applies_to;
  Dimension dimension = Dimension::Case;
  int value = 0;  // the enumerator of `dimension`
  std::optional<int> slot;
  std::set<FinalClass> final_condition;  // empty: any
  std::set<std::string> required_tags;
  bool direct_stem = false;  // pronouns: attach to the direct form, not the oblique
  std::string affix;
  Placement placement = Placement::After;
  std::vector<std::string> sandhi;
};

class MalformedEntry : public Error {
 public:
  MalformedEntry(std::size_t line, const std::string& why)
      : Error("malformed entry at line " + std::to_string(line) + ": " + why), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateRuleId : public Error {
 public:
  explicit DuplicateRuleId(const std::string& id) : Error("duplicate rule id " + id) {}
};

class DanglingSandhiRef : public Error {
 public:
  DanglingSandhiRef(const std::string& rule, const std::string& sandhi)
      : Error("rule " + rule + " references unknown sandhi rule " + sandhi) {}
};

/// Final class implied by spelling alone. A consonant letter reads as
/// Consonant; the lexicon may override that to VowelA when the inherent vowel
/// is pronounced. A trailing candrabindu is ignored.
inline FinalClass orthographic_class(std::string_view text) {
  auto cps = utf8::decode(text);
  while (!cps.empty() && cps.back().value == 0x0981) cps.pop_back();
  if (cps.empty()) return FinalClass::Consonant;
  const char32_t last = cps.back().value;
  // In decomposed text o and au end in aa / au length mark after e.
  if ((last == 0x09BE || last == 0x09D7) && cps.size() > 1 && cps[cps.size() - 2].value == 0x09C7)
    return FinalClass::VowelOther;
  switch (last) {
    case 0x09BE:
    case 0x0986:
      return FinalClass::VowelA;
    case 0x09BF:
    case 0x09C0:
    case 0x0987:
    case 0x0988:
      return FinalClass::VowelI;
    default:
      break;
  }
  switch (script::classify(last)) {
    case script::CharClass::VowelSign:
    case script::CharClass::IndependentVowel:
      return FinalClass::VowelOther;
    default:
      return FinalClass::Consonant;
  }
}

inline bool in_class_set(const std::set<FinalClass>& set, FinalClass c) {
  return set.empty() || set.contains(c);
}

namespace detail {

inline std::vector<std::string_view> lines_of(std::string_view content) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    auto line = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
  }
  return out;
}

inline bool skip_line(std::string_view line) {
  auto t = legacy::detail::trim(line);
  return t.empty() || t.front() == '#';
}

// `0` stands for the empty string in rule and sandhi fields; `_` for a space.
inline std::string affix_field(std::string_view field) {
  if (field == "0") return {};
  std::string out(field);
  std::replace(out.begin(), out.end(), '_', ' ');
  return script::decompose(out);
}

inline std::set<FinalClass> parse_final(std::string_view value, std::size_t line) {
  if (value == "vowel")
    return {FinalClass::VowelA, FinalClass::VowelI, FinalClass::VowelOther};
  if (value == "any") return {};
  std::set<FinalClass> out;
  for (auto part : split(value, '|')) {
    auto c = from_string<FinalClass>(part);
    if (!c) throw MalformedEntry(line, "unknown final class '" + std::string(part) + "'");
    out.insert(*c);
  }
  return out;
}

}  // namespace detail

/// Suffix and sandhi rules, immutable once built.
class RuleSet {
 public:
  RuleSet() = default;

  RuleSet(std::vector<SuffixRule> rules, std::vector<SandhiRule> sandhi)
      : rules_(std::move(rules)) {
    std::set<std::string> ids;
    for (auto& s : sandhi) {
      if (!ids.insert(s.id).second) throw DuplicateRuleId(s.id);
      sandhi_.emplace(s.id, std::move(s));
    }
    for (const auto& r : rules_) {
      if (!ids.insert(r.id).second) throw DuplicateRuleId(r.id);
      for (const auto& ref : r.sandhi)
        if (!sandhi_.contains(ref)) throw DanglingSandhiRef(r.id, ref);
    }
  }

  const std::vector<SuffixRule>& rules() const noexcept { return rules_; }
  const std::map<std::string, SandhiRule>& sandhi() const noexcept { return sandhi_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }

  const SandhiRule& sandhi_rule(const std::string& id) const { return sandhi_.at(id); }

  const SuffixRule* find(std::string_view id) const {
    for (const auto& r : rules_)
      if (r.id == id) return &r;
    return nullptr;
  }

 private:
  std::vector<SuffixRule> rules_;
  std::map<std::string, SandhiRule> sandhi_;
};

/// Rule file: `RULEID<TAB>POS<TAB>FEATURES<TAB>SUFFIX<TAB>PLACEMENT<TAB>SANDHI_IDS`.
///
/// POS is `noun`, `verb`, `pronoun` or a `|`-joined set. FEATURES holds exactly
/// one of `gender=`, `number=`, `case=`, `tense=` plus optional `slot=`,
/// `final=` (a final class, `vowel` or `|`-joined classes), `tag=` and
/// `stem=direct`. SUFFIX is `0` for zero marking; `_` marks a word break.
/// PLACEMENT is `after`, `before` or `after_acc`. SANDHI_IDS is `-` or a
/// comma list.
///
/// Lines whose POS is `sandhi` define junction rules instead:
/// `RULEID<TAB>sandhi<TAB>final=...<TAB>ROOT_EDGE<TAB>SUFFIX_EDGE<TAB>REPLACEMENT`,
/// with `0` for an empty pattern.
inline RuleSet parse_ruleset(std::string_view content) {
  std::vector<SuffixRule> rules;
  std::vector<SandhiRule> sandhi;
  std::size_t line_no = 0;
  for (auto line : detail::lines_of(content)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    if (!utf8::is_valid(line)) throw MalformedEntry(line_no, "not UTF-8");
    auto fields = legacy::detail::split_tabs(line);
    if (fields.size() != 6) throw MalformedEntry(line_no, "expected 6 tab-separated fields");
    if (fields[0].empty()) throw MalformedEntry(line_no, "empty rule id");

    if (fields[1] == "sandhi") {
      SandhiRule s;
      s.id = std::string(fields[0]);
      if (!fields[2].starts_with("final="))
        throw MalformedEntry(line_no, "sandhi context must be final=<class>");
      s.context = detail::parse_final(fields[2].substr(6), line_no);
      s.root_edge = detail::affix_field(fields[3]);
      s.suffix_edge = detail::affix_field(fields[4]);
      s.replacement = detail::affix_field(fields[5]);
      sandhi.push_back(std::move(s));
      continue;
    }

    SuffixRule r;
    r.id = std::string(fields[0]);
    for (auto p : detail::split(fields[1], '|')) {
      auto pos = from_string<Pos>(p);
      if (!pos) throw MalformedEntry(line_no, "unknown part of speech '" + std::string(p) + "'");
      r.applies_to.insert(*pos);
    }
    int dimensions = 0;
    for (auto item : detail::split(fields[2], ',')) {
      auto eq = item.find('=');
      if (eq == std::string_view::npos)
        throw MalformedEntry(line_no, "feature '" + std::string(item) + "' is not key=value");
      auto key = item.substr(0, eq);
      auto value = item.substr(eq + 1);
      auto bad = [&] {
        return MalformedEntry(line_no, "bad value for " + std::string(key) + ": " + std::string(value));
      };
      if (key == "gender") {
        auto v = from_string<Gender>(value);
        if (!v) throw bad();
        r.dimension = Dimension::Gender, r.value = static_cast<int>(*v), ++dimensions;
      } else if (key == "number") {
        auto v = from_string<Number>(value);
        if (!v) throw bad();
        r.dimension = Dimension::Number, r.value = static_cast<int>(*v), ++dimensions;
      } else if (key == "case") {
        auto v = from_string<Case>(value);
        if (!v) throw bad();
        r.dimension = Dimension::Case, r.value = static_cast<int>(*v), ++dimensions;
      } else if (key == "tense") {
        auto v = from_string<TenseMood>(value);
        if (!v) throw bad();
        r.dimension = Dimension::TenseMood, r.value = static_cast<int>(*v), ++dimensions;
      } else if (key == "slot") {
        try {
          r.slot = detail::parse_int(key, value);
        } catch (const FeatureSpecError&) {
          throw bad();
        }
      } else if (key == "final") {
        r.final_condition = detail::parse_final(value, line_no);
      } else if (key == "tag") {
        if (value.empty()) throw bad();
        r.required_tags.insert(std::string(value));
      } else if (key == "stem") {
        if (value != "direct") throw bad();
        r.direct_stem = true;
      } else {
        throw MalformedEntry(line_no, "unknown feature key '" + std::string(key) + "'");
      }
    }
    if (dimensions != 1)
      throw MalformedEntry(line_no, "exactly one of gender/number/case/tense required");
    if ((r.dimension == Dimension::TenseMood) != (r.applies_to == std::set<Pos>{Pos::Verb}))
      throw MalformedEntry(line_no, "tense rules apply to verbs and only verbs");

    r.affix = detail::affix_field(fields[3]);
    if (fields[4] == "after") r.placement = Placement::After;
    else if (fields[4] == "before") r.placement = Placement::Before;
    else if (fields[4] == "after_acc") r.placement = Placement::AfterAccusativeForm;
    else throw MalformedEntry(line_no, "unknown placement '" + std::string(fields[4]) + "'");
    if (r.placement == Placement::Before && r.affix.empty())
      throw MalformedEntry(line_no, "preposed word cannot be empty");
    if (fields[5] != "-")
      for (auto id : detail::split(fields[5], ','))
        if (!id.empty()) r.sandhi.emplace_back(id);
    rules.push_back(std::move(r));
  }
  return RuleSet(std::move(rules), std::move(sandhi));
}

inline RuleSet load_ruleset(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("rule file not found: " + path.string());
  return parse_ruleset(io::read_file(path));
}

/// Roots indexed by their decomposed lemma and oblique stem.
class Lexicon {
 public:
  Lexicon() = default;

  explicit Lexicon(std::vector<Root> roots) : roots_(std::move(roots)) {
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      by_form_.emplace(script::decompose(roots_[i].lemma), i);
      if (roots_[i].oblique) by_form_.emplace(script::decompose(*roots_[i].oblique), i);
    }
  }

  const std::vector<Root>& roots() const noexcept { return roots_; }
  std::size_t size() const noexcept { return roots_.size(); }

  /// Roots whose lemma or oblique stem equals `nfd_form`.
  std::vector<const Root*> by_form(const std::string& nfd_form) const {
    std::vector<const Root*> out;
    auto [lo, hi] = by_form_.equal_range(nfd_form);
    for (auto it = lo; it != hi; ++it)
      if (std::find(out.begin(), out.end(), &roots_[it->second]) == out.end())
        out.push_back(&roots_[it->second]);
    return out;
  }

  const Root* find(std::string_view lemma, std::optional<Pos> pos = std::nullopt) const {
    const std::string nfc = script::normalize(lemma);
    for (const auto& r : roots_)
      if (r.lemma == nfc && (!pos || r.pos == *pos)) return &r;
    return nullptr;
  }

 private:
  std::vector<Root> roots_;
  std::unordered_multimap<std::string, std::size_t> by_form_;
};

/// Lexicon file: `LEMMA<TAB>POS<TAB>FINAL_CLASS<TAB>GLOSS[<TAB>OBLIQUE[<TAB>TAGS]]`.
/// OBLIQUE is `-` when absent and only allowed for pronouns; TAGS is a comma
/// list. FINAL_CLASS must agree with the spelling, except that a
/// consonant-final lemma may be declared vowel_a (pronounced inherent vowel).
inline Lexicon parse_lexicon(std::string_view content) {
  std::vector<Root> roots;
  std::set<std::pair<std::string, Pos>> seen;
  std::size_t line_no = 0;
  for (auto line : detail::lines_of(content)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    if (!utf8::is_valid(line)) throw MalformedEntry(line_no, "not UTF-8");
    auto fields = legacy::detail::split_tabs(line);
    if (fields.size() < 4 || fields.size() > 6)
      throw MalformedEntry(line_no, "expected 4 to 6 tab-separated fields");
    Root r;
    r.lemma = script::normalize(fields[0]);
    if (r.lemma.empty()) throw MalformedEntry(line_no, "empty lemma");
    auto pos = from_string<Pos>(fields[1]);
    if (!pos) throw MalformedEntry(line_no, "unknown part of speech");
    r.pos = *pos;
    auto fc = from_string<FinalClass>(fields[2]);
    if (!fc) throw MalformedEntry(line_no, "unknown final class");
    r.final_class = *fc;
    const auto spelled = orthographic_class(script::decompose(r.lemma));
    if (r.final_class != spelled &&
        !(spelled == FinalClass::Consonant && r.final_class == FinalClass::VowelA))
      throw MalformedEntry(line_no, "final class contradicts the spelling of " + r.lemma);
    r.gloss = std::string(fields[3]);
    if (fields.size() >= 5 && fields[4] != "-") {
      if (r.pos != Pos::Pronoun) throw MalformedEntry(line_no, "oblique stem on a non-pronoun");
      r.oblique = script::normalize(fields[4]);
    }
    if (fields.size() == 6)
      for (auto tag : detail::split(fields[5], ','))
        if (!tag.empty()) r.tags.emplace(tag);
    if (!seen.emplace(r.lemma, r.pos).second)
      throw MalformedEntry(line_no, "duplicate lexicon entry " + r.lemma);
    roots.push_back(std::move(r));
  }
  return Lexicon(std::move(roots));
}

inline Lexicon load_lexicon(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("lexicon not found: " + path.string());
  return parse_lexicon(io::read_file(path));
}

}  // namespace bpy::morph

#endif  // BPY_MORPH_RULES_HPP
