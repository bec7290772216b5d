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

#include <gtest/gtest.h>

#include <set>

#include "bpy/morph/engine.hpp"
#include "support.hpp"

namespace bpy::morph {
namespace {

using bpy::testing::shipped_engine;

std::string gen(std::string_view lemma, std::string_view spec) {
  return shipped_engine().generate(lemma, parse_features(spec));
}

struct Golden {
  const char* lemma;
  const char* features;
  const char* surface;
};

void PrintTo(const Golden& g, std::ostream* os) { *os << g.lemma << " " << g.features; }

class GoldenParadigm : public ::testing::TestWithParam<Golden> {};

TEST_P(GoldenParadigm, GeneratesExactly) {
  const auto& g = GetParam();
  EXPECT_EQ(gen(g.lemma, g.features), g.surface);
}

INSTANTIATE_TEST_SUITE_P(
    WorkedExamples, GoldenParadigm,
    ::testing::Values(Golden{"খুড়া", "noun,fem", "খুড়ী"}, Golden{"চাকর", "noun,fem", "চাকরানী"},
                      Golden{"দাদা", "noun,gachhi", "দাদাগাছি"},
                      Golden{"গুরু", "noun,mahei", "গুরুমাহেই"}, Golden{"মি", "pronoun,gen", "মোর"},
                      Golden{"মি", "pronoun,instr", "মোরেল"}, Golden{"ঘর", "noun,loc,cvar=1", "ঘরে"},
                      Golden{"দাদা", "noun,voc,cvar=1", "দাদারৌ"},
                      Golden{"কর", "verb,present,slot=1", "করর"},
                      Golden{"কর", "verb,precative,slot=1", "করতু"},
                      Golden{"পা", "verb,past,slot=1", "পেইলু"},
                      Golden{"খা", "verb,future,slot=1", "খেইতৌ"},
                      Golden{"থ", "verb,probable-future,slot=1", "থইম"},
                      Golden{"থ", "verb,present-perfect,slot=1", "থছ"},
                      Golden{"কর", "verb,present-progressive", "করিয়া আছ"},
                      Golden{"পি", "verb,past-progressive", "পিয়া আছিল"},
                      Golden{"পা", "verb,past-perfect,slot=2", "পাছিলে"},
                      Golden{"কর", "verb,probable-past", "করে থাইম"},
                      Golden{"কর", "verb,future-progressive", "করিয়া থাইতৌ"},
                      Golden{"কর", "verb,imperative,slot=1", "করিং"}),
    [](const ::testing::TestParamInfo<Golden>& info) { return "form" + std::to_string(info.index + 1); });

TEST(Sandhi, ConsonantFinalDropsInitialI) { EXPECT_EQ(gen("কর", "precative,slot=1"), "করতু"); }

TEST(Sandhi, ICoalescesAfterI) { EXPECT_EQ(gen("পি", "precative,slot=1"), "পিতু"); }

TEST(Sandhi, APlusIBecomesEi) {
  EXPECT_EQ(gen("পা", "past,slot=1"), "পেইলু");
  EXPECT_EQ(gen("খা", "past,slot=3"), "খেইল");
}

TEST(Sandhi, PerfectAbsorbsE) {
  EXPECT_EQ(gen("থ", "present-perfect,slot=1"), "থছ");
  EXPECT_EQ(gen("পা", "present-perfect,slot=3"), "পাছে");
  EXPECT_EQ(gen("কর", "present-perfect,slot=1"), "করেছ");
}

TEST(Sandhi, FeminineLongI) {
  EXPECT_EQ(gen("খুড়া", "noun,fem"), "খুড়ী");
  EXPECT_EQ(gen("জেঠা", "noun,fem"), "জেঠী");
}

TEST(Nouns, GenitiveAlternation) {
  EXPECT_EQ(gen("ঘর", "noun,gen"), "ঘরর");
  EXPECT_EQ(gen("দাদা", "noun,gen"), "দাদার");
  EXPECT_THROW(gen("ঘর", "noun,gen,cvar=1"), IncompatibleFeatures);
}

TEST(Nouns, InanimateAccusativeIsBare) {
  EXPECT_EQ(gen("ঘর", "noun,acc"), "ঘর");
  EXPECT_EQ(gen("মাছ", "noun,instr"), "মাছল");
  EXPECT_EQ(gen("দাদা", "noun,acc"), "দাদারে");
  EXPECT_EQ(gen("চাকর", "noun,acc"), "চাকররে");
  EXPECT_EQ(gen("দাদা", "noun,instr"), "দাদারেল");
}

TEST(Nouns, GenderPrewords) {
  EXPECT_EQ(gen("মানু", "noun,masc"), "মুনিমানু");
  EXPECT_EQ(gen("মানু", "noun,fem"), "মানুজেলা");
  EXPECT_EQ(gen("মানু", "noun,fem,gvar=1"), "জেলামানু");
  EXPECT_EQ(gen("চামার", "noun,fem"), "চামারনী");
}

TEST(Nouns, AdjectivalPluralsBothWays) {
  EXPECT_EQ(gen("মানু", "noun,habi"), "মানুহাবি");
  EXPECT_EQ(gen("মানু", "noun,habi,nvar=1"), "হাবিমানু");
  EXPECT_EQ(gen("মানু", "noun,eta"), "মানু এতা");
  EXPECT_EQ(gen("মানু", "noun,eta,nvar=1"), "মানুএতা");
  EXPECT_EQ(gen("মাছ", "noun,guli"), "মাছগুলি");
  EXPECT_EQ(gen("মাছ", "noun,pl-i"), "মাছগি");
}

TEST(Nouns, LayersCompose) {
  EXPECT_EQ(gen("দাদা", "noun,gachhi,gen"), "দাদাগাছির");
  EXPECT_EQ(gen("মানু", "noun,masc,habi,nvar=1,dat"), "হাবিমুনিমানুরে");
}

TEST(Nouns, NominativeVariants) {
  EXPECT_EQ(gen("পূর্ণ", "noun,nom,cvar=2"), "পূর্ণয়");
  EXPECT_EQ(gen("ঘর", "noun,nom"), "ঘর");
}

TEST(Pronouns, ObliqueCarriesCases) {
  EXPECT_EQ(gen("মি", "pronoun,nom"), "মি");
  EXPECT_EQ(gen("মি", "pronoun,acc"), "মোরে");
  EXPECT_EQ(gen("মি", "pronoun,dat,cvar=1"), "মোরাং");
  EXPECT_EQ(gen("মি", "pronoun,abl,cvar=4"), "মোরাংত");
  EXPECT_EQ(gen("তি", "pronoun,acc"), "তোরে");
  EXPECT_EQ(gen("তা", "pronoun,gen"), "তার");
}

TEST(Verbs, SubjunctiveIsPeriphrastic) {
  EXPECT_EQ(gen("কর", "verb,subjunctive,vvar=1"), "যদি কর");
}

TEST(Generate, Errors) {
  const auto& e = shipped_engine();
  EXPECT_THROW(e.generate("নাই", parse_features("noun,gen")), UnknownRoot);
  EXPECT_THROW(e.generate("কর", parse_features("noun,gen")), UnknownRoot);
  const Root& kor = *e.lexicon().find("কর");
  EXPECT_THROW(e.generate(kor, parse_features("noun,gen")), IncompatibleFeatures);
  EXPECT_THROW(e.generate(kor, parse_features("verb,past")), MissingSlot);
  EXPECT_THROW(e.generate(kor, parse_features("verb,present-progressive,slot=1")),
               IncompatibleFeatures);
  EXPECT_THROW(e.generate(kor, parse_features("verb,past,slot=7")), IncompatibleFeatures);
  EXPECT_THROW(e.generate(kor, parse_features("verb,present,slot=6")), IncompatibleFeatures);
  const Root& ghor = *e.lexicon().find("ঘর");
  EXPECT_THROW(e.generate(ghor, parse_features("noun,gachhi")), IncompatibleFeatures);
  EXPECT_THROW(e.generate(ghor, parse_features("noun")), IncompatibleFeatures);
  EXPECT_THROW(e.generate(ghor, parse_features("noun,loc,cvar=3")), IncompatibleFeatures);
  const Root& mi = *e.lexicon().find("মি");
  EXPECT_THROW(e.generate(mi, parse_features("pronoun,fem")), IncompatibleFeatures);
}

TEST(Analyze, GenitivePronoun) {
  const auto as = shipped_engine().analyze("মোর");
  ASSERT_EQ(as.size(), 1u);
  EXPECT_EQ(as[0].root.lemma, "মি");
  EXPECT_EQ(as[0].root.oblique, "মো");
  EXPECT_EQ(format_features(as[0].features), "pronoun,gen");
  EXPECT_EQ(as[0].suffix_trace, (std::vector<std::string>{"C.GEN.R"}));
}

TEST(Analyze, SimplePast) {
  const auto as = shipped_engine().analyze("পেইলু");
  ASSERT_EQ(as.size(), 1u);
  EXPECT_EQ(as[0].root.lemma, "পা");
  EXPECT_EQ(format_features(as[0].features), "verb,past,slot=1");
}

TEST(Analyze, NoDecomposition) {
  EXPECT_TRUE(shipped_engine().analyze("ঙঞঢৎ").empty());
  EXPECT_TRUE(shipped_engine().analyze("").empty());
}

TEST(Analyze, OrderedByRootThenSuffixCount) {
  const auto as = shipped_engine().analyze("ঘরে");
  ASSERT_GE(as.size(), 2u);
  for (std::size_t i = 1; i < as.size(); ++i)
    EXPECT_LE(as[i - 1].suffix_trace.size(), as[i].suffix_trace.size());
  EXPECT_EQ(as[0].root.lemma, "ঘর");
}

TEST(Analyze, PeriphrasticPair) {
  const auto as = shipped_engine().analyze_pair("করিয়া", "আছ");
  ASSERT_FALSE(as.empty());
  EXPECT_EQ(as[0].root.lemma, "কর");
  EXPECT_EQ(as[0].features.tense_mood, TenseMood::PresentProgressive);
  EXPECT_EQ(as[0].surface, "করিয়া আছ");
}

TEST(Analyze, AcceptsBothPluralPlacements) {
  EXPECT_FALSE(shipped_engine().analyze("হাবিমানু").empty());
  EXPECT_FALSE(shipped_engine().analyze("মানুহাবি").empty());
}

TEST(Analyze, UnknownStemsOnlyOnRequest) {
  EXPECT_TRUE(shipped_engine().analyze("বইগুলি").empty());
  const auto as = shipped_engine().analyze("বইগুলি", {.allow_unknown_stems = true});
  ASSERT_FALSE(as.empty());
  bool found = false;
  for (const auto& a : as) {
    EXPECT_TRUE(a.hypothetical);
    EXPECT_EQ(shipped_engine().generate(a.root, a.features), "বইগুলি");
    found = found || (a.root.lemma == "বই" && a.features.number == Number::Guli);
  }
  EXPECT_TRUE(found);
}

TEST(Analyze, SoundOnAnalysesOfUnknownStems) {
  for (const char* w : {"বুলিলু", "খাটরে", "চাকরানীগুলিরে", "নাতেছ"})
    for (const auto& a : shipped_engine().analyze(w, {.allow_unknown_stems = true}))
      EXPECT_EQ(shipped_engine().generate(a.root, a.features), w) << w;
}

TEST(PronounParadigm, FirstPersonSingular) {
  const auto p = shipped_engine().pronoun_paradigm(1, PronounNumber::Sg);
  ASSERT_EQ(p.entries.size(), 1u);
  const auto& e = p.entries[0];
  EXPECT_EQ(e.root.lemma, "মি");
  EXPECT_EQ(e.root.oblique, "মো");
  std::set<std::pair<Case, std::string>> forms;
  for (const auto& f : e.forms) forms.emplace(f.grammatical_case, f.surface);
  EXPECT_TRUE(forms.contains({Case::Nom, "মি"}));
  EXPECT_TRUE(forms.contains({Case::Acc, "মোরে"}));
  EXPECT_TRUE(forms.contains({Case::Instr, "মোরেল"}));
  EXPECT_TRUE(forms.contains({Case::Dat, "মোরাং"}));
  EXPECT_TRUE(forms.contains({Case::Loc, "মোরাং"}));
}

TEST(PronounParadigm, SecondPersonSingular) {
  const auto p = shipped_engine().pronoun_paradigm(2, PronounNumber::Sg);
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries[0].root.lemma, "তি");
  EXPECT_EQ(p.entries[0].root.oblique, "তো");
  EXPECT_EQ(p.entries[0].forms.at(1).surface, "তোরে");
}

TEST(PronounParadigm, ThirdPersonFeminine) {
  const auto p = shipped_engine().pronoun_paradigm(3, PronounNumber::Sg, Gender::Fem);
  ASSERT_EQ(p.entries.size(), 1u);
  EXPECT_EQ(p.entries[0].root.lemma, "তেই");
  EXPECT_EQ(p.entries[0].forms.at(0).surface, "তেই");
}

TEST(PronounParadigm, ThirdPersonPluralHasBothForms) {
  const auto p = shipped_engine().pronoun_paradigm(3, PronounNumber::Pl);
  EXPECT_EQ(p.entries.size(), 2u);
}

TEST(PronounParadigm, InvalidCombinations) {
  const auto& e = shipped_engine();
  EXPECT_THROW(e.pronoun_paradigm(0, PronounNumber::Sg), InvalidCombination);
  EXPECT_THROW(e.pronoun_paradigm(4, PronounNumber::Sg), InvalidCombination);
  EXPECT_THROW(e.pronoun_paradigm(1, PronounNumber::Sg, Gender::Masc), InvalidCombination);
  EXPECT_THROW(e.pronoun_paradigm(3, PronounNumber::Sg), InvalidCombination);
}

TEST(LoadRuleset, ShippedCoversEveryList) {
  const auto& rules = shipped_engine().rules();
  EXPECT_GE(rules.size(), 40u);
  std::set<std::pair<Dimension, int>> covered;
  for (const auto& r : rules.rules()) covered.emplace(r.dimension, r.value);
  for (auto g : all_values<Gender>()) EXPECT_TRUE(covered.contains({Dimension::Gender, static_cast<int>(g)}));
  for (auto n : all_values<Number>()) EXPECT_TRUE(covered.contains({Dimension::Number, static_cast<int>(n)}));
  for (auto c : all_values<Case>()) EXPECT_TRUE(covered.contains({Dimension::Case, static_cast<int>(c)}));
  for (auto t : all_values<TenseMood>())
    EXPECT_TRUE(covered.contains({Dimension::TenseMood, static_cast<int>(t)}));
  EXPECT_GE(shipped_engine().lexicon().size(), 25u);
}

TEST(LoadRuleset, EmptyRuleSetGeneratesNothing) {
  const Engine e(parse_ruleset(""), parse_lexicon("কর\tverb\tconsonant\tdo\n"));
  EXPECT_TRUE(e.rules().empty());
  EXPECT_THROW(e.generate("কর", parse_features("verb,imperative")), IncompatibleFeatures);
  EXPECT_THROW(e.generate("খা", parse_features("verb,imperative")), UnknownRoot);
}

TEST(LoadRuleset, DanglingSandhiReference) {
  EXPECT_THROW(parse_ruleset("X.1\tverb\ttense=past,slot=1\tইলু\tafter\tS.NOPE\n"), DanglingSandhiRef);
}

TEST(LoadRuleset, DuplicateId) {
  EXPECT_THROW(parse_ruleset("X.1\tnoun\tcase=gen\tর\tafter\t-\nX.1\tnoun\tcase=loc\tত\tafter\t-\n"),
               DuplicateRuleId);
}

TEST(LoadRuleset, MalformedEntries) {
  auto line_of = [](const std::string& text) -> std::size_t {
    try {
      parse_ruleset(text);
    } catch (const MalformedEntry& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("# c\nX.1\tnoun\tcase=gen\tর\tafter\n"), 2u);
  EXPECT_EQ(line_of("X.1\tnoun\tcase=gen\tর\tsideways\t-\n"), 1u);
  EXPECT_EQ(line_of("X.1\tnoun\tcase=gen,number=sg\tর\tafter\t-\n"), 1u);
  EXPECT_EQ(line_of("X.1\tnoun\ttense=past\tর\tafter\t-\n"), 1u);
  EXPECT_EQ(line_of("X.1\tnoun\tcase=gen\t0\tbefore\t-\n"), 1u);
  EXPECT_EQ(line_of("X.1\tadverb\tcase=gen\tর\tafter\t-\n"), 1u);
}

TEST(LoadLexicon, Validation) {
  EXPECT_THROW(parse_lexicon("ঘর\tnoun\tvowel_i\thouse\n"), MalformedEntry);
  EXPECT_THROW(parse_lexicon("ঘর\tnoun\tconsonant\thouse\tঘো\n"), MalformedEntry);
  EXPECT_THROW(parse_lexicon("ঘর\tnoun\tconsonant\thouse\nঘর\tnoun\tconsonant\thome\n"),
               MalformedEntry);
  EXPECT_NO_THROW(parse_lexicon("ঘর\tnoun\tconsonant\thouse\nঘর\tverb\tconsonant\tto house\n"));
  EXPECT_THROW(load_lexicon("/nonexistent/lexicon.tsv"), IoError);
}

TEST(OrthographicClass, FinalLetters) {
  EXPECT_EQ(orthographic_class(script::decompose("দাদা")), FinalClass::VowelA);
  EXPECT_EQ(orthographic_class(script::decompose("পি")), FinalClass::VowelI);
  EXPECT_EQ(orthographic_class(script::decompose("তেই")), FinalClass::VowelI);
  EXPECT_EQ(orthographic_class(script::decompose("মো")), FinalClass::VowelOther);
  EXPECT_EQ(orthographic_class(script::decompose("ওঁ")), FinalClass::VowelOther);
  EXPECT_EQ(orthographic_class(script::decompose("কর")), FinalClass::Consonant);
}

}  // namespace
}  // namespace bpy::morph
