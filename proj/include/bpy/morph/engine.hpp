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

#ifndef BPY_MORPH_ENGINE_HPP
#define BPY_MORPH_ENGINE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/morph/features.hpp"
#include "bpy/morph/rules.hpp"
#include "bpy/script.hpp"
#include "bpy/utf8.hpp"

namespace bpy::morph {

class UnknownRoot : public Error {
 public:
  explicit UnknownRoot(const std::string& lemma) : Error("unknown root " + lemma) {}
};

class IncompatibleFeatures : public Error {
 public:
  using Error::Error;
};

class MissingSlot : public Error {
 public:
  explicit MissingSlot(std::string_view tense)
      : Error("tense/mood " + std::string(tense) + " needs an agreement slot") {}
};

class InvalidCombination : public Error {
 public:
  using Error::Error;
};

/// One decomposition of a surface form. Regenerating from `root` and
/// `features` reproduces `surface`.
struct Analysis {
  Root root;
  FeatureBundle features;
  std::vector<std::string> suffix_trace;
  std::string surface;
  bool hypothetical = false;  // root not taken from the lexicon

  friend bool operator==(const Analysis&, const Analysis&) = default;
};

struct Derivation {
  std::string surface;  // NFC
  std::vector<std::string> trace;
};

struct AnalyzeOptions {
  /// Also propose roots missing from the lexicon.
  bool allow_unknown_stems = false;
};

enum class PronounNumber { Sg, Pl };

struct ParadigmForm {
  Case grammatical_case;
  int variant;
  std::string surface;
  std::vector<std::string> trace;
};

struct ParadigmEntry {
  Root root;
  std::vector<ParadigmForm> forms;
};

struct PronounParadigm {
  int person;
  PronounNumber number;
  std::optional<Gender> gender;
  std::vector<ParadigmEntry> entries;
};

/// Generator and analyzer over an immutable rule set and lexicon.
class Engine {
 public:
  Engine(RuleSet rules, Lexicon lexicon) : rules_(std::move(rules)), lexicon_(std::move(lexicon)) {}

  const RuleSet& rules() const noexcept { return rules_; }
  const Lexicon& lexicon() const noexcept { return lexicon_; }

  /// Builds the surface form: gender, number then case for nominals (the
  /// instrumental attaches to the accusative form); one tense/mood ending or
  /// periphrasis for verbs. Sandhi is applied at each junction.
  Derivation derive(const Root& root, const FeatureBundle& features) const {
    validate(root, features);
    auto outcome = run(root, steps_for(features));
    if (!outcome.ok) throw IncompatibleFeatures(outcome.error);
    return std::move(outcome.derivation);
  }

  std::string generate(const Root& root, const FeatureBundle& features) const {
    return derive(root, features).surface;
  }

  /// Looks the lemma up in the lexicon first.
  std::string generate(std::string_view lemma, const FeatureBundle& features) const {
    const Root* root = lexicon_.find(lemma, features.pos);
    if (root == nullptr) throw UnknownRoot(std::string(lemma));
    return generate(*root, features);
  }

  /// Every analysis whose regeneration equals `surface`, ordered by longer
  /// root, then fewer suffixes, then rule ids. Periphrastic forms may be
  /// passed with a single space between the words.
  std::vector<Analysis> analyze(std::string_view surface, AnalyzeOptions options = {}) const {
    const std::string target = script::decompose(script::normalize(surface));
    std::vector<Analysis> out;
    if (target.empty()) return out;

    for (const auto& rule : rules_.rules()) {
      if (rule.dimension != Dimension::TenseMood) continue;
      for (const auto& stem : unapply(rule, target))
        consider(stem, {&rule}, target, options, out);
    }
    std::array<const SuffixRule*, 3> chain{};
    peel(target, target, 2, chain, options, out);

    std::sort(out.begin(), out.end(), [](const Analysis& a, const Analysis& b) {
      auto key = [](const Analysis& x) {
        return std::make_tuple(-static_cast<long>(utf8::length(x.root.lemma)),
                               x.suffix_trace.size(), std::cref(x.suffix_trace),
                               format_features(x.features), std::cref(x.root.lemma),
                               x.hypothetical);
      };
      return key(a) < key(b);
    });
    return out;
  }

  /// Two-token window for periphrastic verb forms such as `করিয়া আছ`.
  std::vector<Analysis> analyze_pair(std::string_view first, std::string_view second,
                                     AnalyzeOptions options = {}) const {
    std::string joined(first);
    joined += ' ';
    joined += second;
    return analyze(joined, options);
  }

  /// Direct form, oblique stem and every case form built on it for the
  /// pronouns tagged with the person, number (and, in the third person
  /// singular, gender).
  PronounParadigm pronoun_paradigm(int person, PronounNumber number,
                                   std::optional<Gender> gender = std::nullopt) const {
    if (person < 1 || person > 3) throw InvalidCombination("person must be 1, 2 or 3");
    if (gender && person != 3) throw InvalidCombination("gender is only marked in the third person");
    if (person == 3 && number == PronounNumber::Sg && !gender)
      throw InvalidCombination("third person singular needs a gender");

    std::set<std::string> wanted{"p" + std::to_string(person),
                                 number == PronounNumber::Sg ? "sg" : "pl"};
    if (gender && number == PronounNumber::Sg) wanted.insert(std::string(to_string(*gender)));

    PronounParadigm paradigm{person, number, gender, {}};
    for (const auto& root : lexicon_.roots()) {
      if (root.pos != Pos::Pronoun) continue;
      if (!std::includes(root.tags.begin(), root.tags.end(), wanted.begin(), wanted.end())) continue;
      ParadigmEntry entry{root, {}};
      for (Case c : all_values<Case>()) {
        for (int v = 0;; ++v) {
          FeatureBundle f;
          f.pos = Pos::Pronoun;
          f.grammatical_case = c;
          f.case_variant = v;
          auto outcome = run(root, steps_for(f));
          if (!outcome.ok) break;
          entry.forms.push_back({c, v, std::move(outcome.derivation.surface),
                                 std::move(outcome.derivation.trace)});
        }
      }
      paradigm.entries.push_back(std::move(entry));
    }
    if (paradigm.entries.empty()) throw InvalidCombination("no pronoun in the lexicon matches");
    return paradigm;
  }

 private:
  struct Stem {
    std::string text;  // NFD
    FinalClass final_class;
  };

  struct Step {
    Dimension dimension;
    int value;
    std::optional<int> slot;
    int variant = 0;
    const SuffixRule* forced = nullptr;
  };

  struct Outcome {
    bool ok = false;
    std::string error;
    Derivation derivation;
    std::string nfd;
    std::vector<int> variants;
  };

  static std::vector<Step> steps_for(const FeatureBundle& f) {
    std::vector<Step> steps;
    if (f.gender) steps.push_back({Dimension::Gender, static_cast<int>(*f.gender), {}, f.gender_variant});
    if (f.number) steps.push_back({Dimension::Number, static_cast<int>(*f.number), {}, f.number_variant});
    if (f.grammatical_case)
      steps.push_back({Dimension::Case, static_cast<int>(*f.grammatical_case), {}, f.case_variant});
    if (f.tense_mood)
      steps.push_back({Dimension::TenseMood, static_cast<int>(*f.tense_mood), f.slot, f.form_variant});
    return steps;
  }

  void validate(const Root& root, const FeatureBundle& f) const {
    if (f.pos != root.pos)
      throw IncompatibleFeatures("features are for a " + std::string(to_string(f.pos)) + ", root " +
                                 root.lemma + " is a " + std::string(to_string(root.pos)));
    if (f.gender_variant < 0 || f.number_variant < 0 || f.case_variant < 0 || f.form_variant < 0)
      throw IncompatibleFeatures("negative variant index");
    if (f.pos == Pos::Verb) {
      if (f.gender || f.number || f.grammatical_case)
        throw IncompatibleFeatures("verbs take no gender, number or case");
      if (!f.tense_mood) throw IncompatibleFeatures("verb features need a tense or mood");
      const bool slotted = std::any_of(rules_.rules().begin(), rules_.rules().end(), [&](const SuffixRule& r) {
        return r.dimension == Dimension::TenseMood && r.value == static_cast<int>(*f.tense_mood) &&
               r.slot.has_value();
      });
      if (slotted && !f.slot) throw MissingSlot(to_string(*f.tense_mood));
      if (!slotted && f.slot)
        throw IncompatibleFeatures(std::string(to_string(*f.tense_mood)) + " takes no slot");
    } else {
      if (f.tense_mood || f.slot) throw IncompatibleFeatures("only verbs take tense, mood or slot");
      if (!f.gender && !f.number && !f.grammatical_case)
        throw IncompatibleFeatures("empty feature bundle");
    }
  }

  Stem initial_stem(const Root& root) const {
    return {script::decompose(root.lemma), root.final_class};
  }

  // Rules realising `step` for `root`, each with the stem it attaches to.
  // Pronouns pick their base (direct or oblique) at the first step.
  std::vector<std::pair<const SuffixRule*, Stem>> candidates(const Root& root, const Step& step,
                                                             const Stem& state,
                                                             bool choose_base) const {
    std::vector<std::pair<const SuffixRule*, Stem>> out;
    for (const auto& r : rules_.rules()) {
      if (r.dimension != step.dimension || r.value != step.value || r.slot != step.slot) continue;
      if (!r.applies_to.contains(root.pos)) continue;
      if (!std::includes(root.tags.begin(), root.tags.end(), r.required_tags.begin(),
                         r.required_tags.end()))
        continue;
      Stem base = state;
      if (choose_base && root.pos == Pos::Pronoun && !r.direct_stem && root.oblique) {
        base.text = script::decompose(*root.oblique);
        base.final_class = orthographic_class(base.text);
      }
      if (!in_class_set(r.final_condition, base.final_class)) continue;
      if (r.placement == Placement::AfterAccusativeForm &&
          candidates(root, {Dimension::Case, static_cast<int>(Case::Acc), {}}, base, false).empty())
        continue;
      out.emplace_back(&r, std::move(base));
    }
    return out;
  }

  Stem join(const Stem& stem, const std::string& affix, const std::vector<std::string>& sandhi) const {
    if (affix.empty()) return stem;
    std::string text;
    bool rewritten = false;
    for (const auto& id : sandhi) {
      const auto& s = rules_.sandhi_rule(id);
      if (!in_class_set(s.context, stem.final_class)) continue;
      if (!stem.text.ends_with(s.root_edge) || !affix.starts_with(s.suffix_edge)) continue;
      text = stem.text.substr(0, stem.text.size() - s.root_edge.size()) + s.replacement +
             affix.substr(s.suffix_edge.size());
      rewritten = true;
      break;
    }
    if (!rewritten) text = stem.text + affix;
    const auto cls = orthographic_class(text);
    return {std::move(text), cls};
  }

  bool apply(const SuffixRule& rule, const Root& root, Stem& state,
             std::vector<std::string>& trace, std::string& error) const {
    switch (rule.placement) {
      case Placement::Before:
        state.text = rule.affix + state.text;
        break;
      case Placement::After:
        state = join(state, rule.affix, rule.sandhi);
        break;
      case Placement::AfterAccusativeForm: {
        auto acc = candidates(root, {Dimension::Case, static_cast<int>(Case::Acc), {}}, state, false);
        if (acc.empty()) {
          error = "no accusative form for " + root.lemma;
          return false;
        }
        state = join(acc.front().second, acc.front().first->affix, acc.front().first->sandhi);
        trace.push_back(acc.front().first->id);
        state = join(state, rule.affix, rule.sandhi);
        break;
      }
    }
    trace.push_back(rule.id);
    return true;
  }

  Outcome run(const Root& root, const std::vector<Step>& steps) const {
    Outcome out;
    Stem state = initial_stem(root);
    bool first = true;
    for (const auto& step : steps) {
      auto cands = candidates(root, step, state, first);
      std::size_t index = 0;
      if (step.forced != nullptr) {
        auto it = std::find_if(cands.begin(), cands.end(),
                               [&](const auto& c) { return c.first == step.forced; });
        if (it == cands.end()) {
          out.error = "rule " + step.forced->id + " does not apply";
          return out;
        }
        index = static_cast<std::size_t>(it - cands.begin());
      } else {
        index = static_cast<std::size_t>(step.variant);
        if (index >= cands.size()) {
          out.error = describe(step) + (cands.empty() ? " has no realisation" : " has no variant " +
                                        std::to_string(step.variant)) + " for " + root.lemma;
          return out;
        }
      }
      state = cands[index].second;
      if (!apply(*cands[index].first, root, state, out.derivation.trace, out.error)) return out;
      out.variants.push_back(static_cast<int>(index));
      first = false;
    }
    out.nfd = state.text;
    out.derivation.surface = script::normalize(state.text);
    out.ok = true;
    return out;
  }

  static std::string describe(const Step& step) {
    switch (step.dimension) {
      case Dimension::Gender: return std::string(to_string(static_cast<Gender>(step.value)));
      case Dimension::Number: return std::string(to_string(static_cast<Number>(step.value)));
      case Dimension::Case: return std::string(to_string(static_cast<Case>(step.value)));
      case Dimension::TenseMood: {
        std::string s(to_string(static_cast<TenseMood>(step.value)));
        if (step.slot) s += " slot " + std::to_string(*step.slot);
        return s;
      }
    }
    return "?";
  }

  static std::vector<std::string> unapply_suffix(const std::string& affix,
                                                 const std::vector<std::string>& sandhi,
                                                 const RuleSet& rules, const std::string& text) {
    std::vector<std::string> out;
    if (affix.empty()) return {text};
    auto try_tail = [&](const std::string& tail, const std::string& restore) {
      if (!text.ends_with(tail)) return;
      std::string prev = text.substr(0, text.size() - tail.size()) + restore;
      if (prev.empty() || prev.back() == ' ') return;
      if (std::find(out.begin(), out.end(), prev) == out.end()) out.push_back(std::move(prev));
    };
    try_tail(affix, "");
    for (const auto& id : sandhi) {
      const auto& s = rules.sandhi_rule(id);
      if (!affix.starts_with(s.suffix_edge)) continue;
      try_tail(s.replacement + affix.substr(s.suffix_edge.size()), s.root_edge);
    }
    return out;
  }

  // Candidate stems that `rule` could have produced `text` from.
  std::vector<std::string> unapply(const SuffixRule& rule, const std::string& text) const {
    switch (rule.placement) {
      case Placement::Before:
        if (text.size() > rule.affix.size() && text.starts_with(rule.affix))
          return {text.substr(rule.affix.size())};
        return {};
      case Placement::After:
        return unapply_suffix(rule.affix, rule.sandhi, rules_, text);
      case Placement::AfterAccusativeForm: {
        std::vector<std::string> out;
        for (const auto& acc_form : unapply_suffix(rule.affix, rule.sandhi, rules_, text)) {
          for (const auto& acc : rules_.rules()) {
            if (acc.dimension != Dimension::Case || acc.value != static_cast<int>(Case::Acc)) continue;
            for (auto& stem : unapply(acc, acc_form))
              if (std::find(out.begin(), out.end(), stem) == out.end()) out.push_back(std::move(stem));
          }
        }
        return out;
      }
    }
    return {};
  }

  // Strips case, number and gender layers (outermost first), each optional.
  void peel(const std::string& target, const std::string& text, int layer,
            std::array<const SuffixRule*, 3>& chain, const AnalyzeOptions& options,
            std::vector<Analysis>& out) const {
    if (layer < 0) {
      std::vector<const SuffixRule*> rules;
      for (const auto* r : chain)
        if (r != nullptr) rules.push_back(r);
      if (!rules.empty()) consider(text, rules, target, options, out);
      return;
    }
    peel(target, text, layer - 1, chain, options, out);
    static constexpr std::array<Dimension, 3> kLayers{Dimension::Gender, Dimension::Number,
                                                      Dimension::Case};
    for (const auto& rule : rules_.rules()) {
      if (rule.dimension != kLayers[static_cast<std::size_t>(layer)]) continue;
      for (const auto& prev : unapply(rule, text)) {
        chain[static_cast<std::size_t>(layer)] = &rule;
        peel(target, prev, layer - 1, chain, options, out);
        chain[static_cast<std::size_t>(layer)] = nullptr;
      }
    }
  }

  void consider(const std::string& stem, const std::vector<const SuffixRule*>& chain,
                const std::string& target, const AnalyzeOptions& options,
                std::vector<Analysis>& out) const {
    std::set<Pos> pos = chain.front()->applies_to;
    for (const auto* r : chain) {
      std::set<Pos> keep;
      for (Pos p : pos)
        if (r->applies_to.contains(p)) keep.insert(p);
      pos = std::move(keep);
    }
    if (pos.empty()) return;

    std::set<Pos> found;
    for (const Root* root : lexicon_.by_form(stem)) {
      if (!pos.contains(root->pos)) continue;
      found.insert(root->pos);
      record(*root, chain, target, false, out);
    }
    if (!options.allow_unknown_stems) return;
    for (Pos p : pos) {
      if (p == Pos::Pronoun || found.contains(p)) continue;
      for (auto& root : hypotheses(stem, p, chain)) record(root, chain, target, true, out);
    }
  }

  std::vector<Root> hypotheses(const std::string& stem, Pos pos,
                               const std::vector<const SuffixRule*>& chain) const {
    std::vector<Root> out;
    if (stem.find(' ') != std::string::npos) return out;
    const auto cps = utf8::decode(stem);
    const auto head = script::classify(cps.front().value);
    if (head != script::CharClass::Consonant && head != script::CharClass::IndependentVowel) return out;

    std::set<std::string> tags;
    bool needs_acc = false;
    for (const auto* r : chain) {
      tags.insert(r->required_tags.begin(), r->required_tags.end());
      needs_acc = needs_acc || r->placement == Placement::AfterAccusativeForm;
    }
    std::vector<std::set<std::string>> tag_sets{tags};
    if (needs_acc) {
      tag_sets.clear();
      for (const auto& acc : rules_.rules()) {
        if (acc.dimension != Dimension::Case || acc.value != static_cast<int>(Case::Acc)) continue;
        auto t = tags;
        t.insert(acc.required_tags.begin(), acc.required_tags.end());
        if (std::find(tag_sets.begin(), tag_sets.end(), t) == tag_sets.end()) tag_sets.push_back(t);
      }
    }
    std::vector<FinalClass> classes{orthographic_class(stem)};
    if (classes.front() == FinalClass::Consonant) classes.push_back(FinalClass::VowelA);
    for (const auto& t : tag_sets)
      for (FinalClass c : classes) out.push_back(Root{script::normalize(stem), pos, c, "", {}, t});
    return out;
  }

  void record(const Root& root, const std::vector<const SuffixRule*>& chain,
              const std::string& target, bool hypothetical, std::vector<Analysis>& out) const {
    std::vector<Step> steps;
    for (const auto* r : chain) steps.push_back({r->dimension, r->value, r->slot, 0, r});
    auto outcome = run(root, steps);
    if (!outcome.ok || outcome.nfd != target) return;

    FeatureBundle f;
    f.pos = root.pos;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const auto* r = chain[i];
      const int v = outcome.variants[i];
      switch (r->dimension) {
        case Dimension::Gender: f.gender = static_cast<Gender>(r->value), f.gender_variant = v; break;
        case Dimension::Number: f.number = static_cast<Number>(r->value), f.number_variant = v; break;
        case Dimension::Case:
          f.grammatical_case = static_cast<Case>(r->value), f.case_variant = v;
          break;
        case Dimension::TenseMood:
          f.tense_mood = static_cast<TenseMood>(r->value), f.slot = r->slot, f.form_variant = v;
          break;
      }
    }
    Analysis a{root, f, std::move(outcome.derivation.trace), std::move(outcome.derivation.surface),
               hypothetical};
    for (const auto& existing : out)
      if (existing.root.lemma == a.root.lemma && existing.root.pos == a.root.pos &&
          existing.features == a.features)
        return;
    out.push_back(std::move(a));
  }

  RuleSet rules_;
  Lexicon lexicon_;
};

}  // namespace bpy::morph

#endif  // BPY_MORPH_ENGINE_HPP
