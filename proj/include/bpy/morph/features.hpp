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

#ifndef BPY_MORPH_FEATURES_HPP
#define BPY_MORPH_FEATURES_HPP

#include <array>
#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpy/error.hpp"

namespace bpy::morph {

enum class Pos { Noun, Verb, Pronoun };
enum class FinalClass { VowelA, VowelI, VowelOther, Consonant };
enum class Gender { Masc, Fem };
// Flattened number inventory: the four adjectival plurals are listed
// individually.
enum class Number { Sg, Gachhi, PluralI, Mahei, Guli, Habi, Eta, Outa };
enum class Case { Nom, Acc, Instr, Dat, Abl, Gen, Loc, Voc };
enum class TenseMood {
  SimplePresent,
  PrecativePresent,
  SimplePast,
  SimpleFuture,
  ProbableFuture,
  PresentProgressive,
  PresentPerfect,
  PastProgressive,
  PastPerfect,
  ProbablePast,
  FutureProgressive,
  Imperative,
  Subjunctive,
};

class FeatureSpecError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <typename E>
struct Names;

template <>
struct Names<Pos> {
  static constexpr std::array<std::pair<Pos, std::string_view>, 3> table{{
      {Pos::Noun, "noun"}, {Pos::Verb, "verb"}, {Pos::Pronoun, "pronoun"}}};
};

template <>
struct Names<FinalClass> {
  static constexpr std::array<std::pair<FinalClass, std::string_view>, 4> table{{
      {FinalClass::VowelA, "vowel_a"},
      {FinalClass::VowelI, "vowel_i"},
      {FinalClass::VowelOther, "vowel_other"},
      {FinalClass::Consonant, "consonant"}}};
};

template <>
struct Names<Gender> {
  static constexpr std::array<std::pair<Gender, std::string_view>, 2> table{{
      {Gender::Masc, "masc"}, {Gender::Fem, "fem"}}};
};

template <>
struct Names<Number> {
  static constexpr std::array<std::pair<Number, std::string_view>, 8> table{{
      {Number::Sg, "sg"},
      {Number::Gachhi, "gachhi"},
      {Number::PluralI, "pl-i"},
      {Number::Mahei, "mahei"},
      {Number::Guli, "guli"},
      {Number::Habi, "habi"},
      {Number::Eta, "eta"},
      {Number::Outa, "outa"}}};
};

template <>
struct Names<Case> {
  static constexpr std::array<std::pair<Case, std::string_view>, 8> table{{
      {Case::Nom, "nom"},
      {Case::Acc, "acc"},
      {Case::Instr, "instr"},
      {Case::Dat, "dat"},
      {Case::Abl, "abl"},
      {Case::Gen, "gen"},
      {Case::Loc, "loc"},
      {Case::Voc, "voc"}}};
};

template <>
struct Names<TenseMood> {
  static constexpr std::array<std::pair<TenseMood, std::string_view>, 13> table{{
      {TenseMood::SimplePresent, "present"},
      {TenseMood::PrecativePresent, "precative"},
      {TenseMood::SimplePast, "past"},
      {TenseMood::SimpleFuture, "future"},
      {TenseMood::ProbableFuture, "probable-future"},
      {TenseMood::PresentProgressive, "present-progressive"},
      {TenseMood::PresentPerfect, "present-perfect"},
      {TenseMood::PastProgressive, "past-progressive"},
      {TenseMood::PastPerfect, "past-perfect"},
      {TenseMood::ProbablePast, "probable-past"},
      {TenseMood::FutureProgressive, "future-progressive"},
      {TenseMood::Imperative, "imperative"},
      {TenseMood::Subjunctive, "subjunctive"}}};
};

}  // namespace detail

template <typename E>
constexpr std::string_view to_string(E value) {
  for (const auto& [v, name] : detail::Names<E>::table)
    if (v == value) return name;
  return "?";
}

template <typename E>
constexpr std::optional<E> from_string(std::string_view name) {
  for (const auto& [v, n] : detail::Names<E>::table)
    if (n == name) return v;
  return std::nullopt;
}

template <typename E>
constexpr auto all_values() {
  std::array<E, detail::Names<E>::table.size()> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::Names<E>::table[i].first;
  return out;
}

/// Morphosyntactic features of one word form. Each `*_variant` indexes the
/// list of rules that realise the dimension for a given stem, in rule-file
/// order; it is only meaningful when its dimension is set.
struct FeatureBundle {
  Pos pos = Pos::Noun;
  std::optional<Gender> gender;
  int gender_variant = 0;
  std::optional<Number> number;
  int number_variant = 0;
  std::optional<Case> grammatical_case;
  int case_variant = 0;
  std::optional<TenseMood> tense_mood;
  std::optional<int> slot;  // agreement-ending position, 1-based
  int form_variant = 0;     // alternative realisations of the tense/mood

  friend bool operator==(const FeatureBundle&, const FeatureBundle&) = default;
};

namespace detail {

inline int parse_int(std::string_view key, std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0)
    throw FeatureSpecError("bad integer for '" + std::string(key) + "': " + std::string(text));
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? next : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace detail

/// Parses a feature spec such as `verb,imperative,slot=1` or
/// `noun,fem,gvar=1,loc`. Bare words name values; `slot`, `gvar`, `nvar`,
/// `cvar` and `vvar` take integers. `pos=`, `gender=`, `number=`, `case=` and
/// `tense=` are accepted as explicit forms. Without a part of speech the
/// bundle is a verb when a tense is given and `default_pos` otherwise.
inline FeatureBundle parse_features(std::string_view spec,
                                    std::optional<Pos> default_pos = std::nullopt) {
  FeatureBundle f;
  std::optional<Pos> pos;
  bool gvar = false, nvar = false, cvar = false, vvar = false;
  auto set_once = [](auto& slot, auto value, std::string_view what) {
    if (slot) throw FeatureSpecError(std::string(what) + " given twice");
    slot = value;
  };
  for (auto item : detail::split(spec, ',')) {
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) continue;
    std::string_view key, value = item;
    if (auto eq = item.find('='); eq != std::string_view::npos) {
      key = item.substr(0, eq);
      value = item.substr(eq + 1);
    }
    if (key == "slot") {
      int s = detail::parse_int(key, value);
      if (s < 1) throw FeatureSpecError("slot is 1-based");
      set_once(f.slot, s, "slot");
    } else if (key == "gvar") {
      f.gender_variant = detail::parse_int(key, value), gvar = true;
    } else if (key == "nvar") {
      f.number_variant = detail::parse_int(key, value), nvar = true;
    } else if (key == "cvar") {
      f.case_variant = detail::parse_int(key, value), cvar = true;
    } else if (key == "vvar") {
      f.form_variant = detail::parse_int(key, value), vvar = true;
    } else if ((key.empty() || key == "pos") && from_string<Pos>(value)) {
      set_once(pos, *from_string<Pos>(value), "part of speech");
    } else if ((key.empty() || key == "gender") && from_string<Gender>(value)) {
      set_once(f.gender, *from_string<Gender>(value), "gender");
    } else if ((key.empty() || key == "number") && from_string<Number>(value)) {
      set_once(f.number, *from_string<Number>(value), "number");
    } else if ((key.empty() || key == "case") && from_string<Case>(value)) {
      set_once(f.grammatical_case, *from_string<Case>(value), "case");
    } else if ((key.empty() || key == "tense") && from_string<TenseMood>(value)) {
      set_once(f.tense_mood, *from_string<TenseMood>(value), "tense/mood");
    } else {
      throw FeatureSpecError("unknown feature '" + std::string(item) + "'");
    }
  }
  if (gvar && !f.gender) throw FeatureSpecError("gvar without gender");
  if (nvar && !f.number) throw FeatureSpecError("nvar without number");
  if (cvar && !f.grammatical_case) throw FeatureSpecError("cvar without case");
  if (vvar && !f.tense_mood) throw FeatureSpecError("vvar without tense/mood");
  if (pos) f.pos = *pos;
  else if (f.tense_mood) f.pos = Pos::Verb;
  else if (default_pos) f.pos = *default_pos;
  else throw FeatureSpecError("feature spec names no part of speech");
  return f;
}

/// Canonical spec; parse_features(format_features(f)) == f.
inline std::string format_features(const FeatureBundle& f) {
  std::string out(to_string(f.pos));
  auto add = [&](std::string_view s) {
    out += ',';
    out += s;
  };
  auto add_var = [&](std::string_view key, int v) {
    if (v != 0) add(std::string(key) + "=" + std::to_string(v));
  };
  if (f.gender) add(to_string(*f.gender)), add_var("gvar", f.gender_variant);
  if (f.number) add(to_string(*f.number)), add_var("nvar", f.number_variant);
  if (f.grammatical_case) add(to_string(*f.grammatical_case)), add_var("cvar", f.case_variant);
  if (f.tense_mood) add(to_string(*f.tense_mood));
  if (f.slot) add("slot=" + std::to_string(*f.slot));
  if (f.tense_mood) add_var("vvar", f.form_variant);
  return out;
}

}  // namespace bpy::morph

#endif  // BPY_MORPH_FEATURES_HPP
