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

#include "bpy/script.hpp"

namespace bpy::script {
namespace {

TEST(Classify, BengaliLetters) {
  EXPECT_EQ(classify(U'ক'), CharClass::Consonant);
  EXPECT_EQ(classify(U'ৎ'), CharClass::Consonant);
  EXPECT_EQ(classify(U'\u09DC'), CharClass::Consonant);
  EXPECT_EQ(classify(U'অ'), CharClass::IndependentVowel);
  EXPECT_EQ(classify(U'ৠ'), CharClass::IndependentVowel);
  EXPECT_EQ(classify(U'ি'), CharClass::VowelSign);
  EXPECT_EQ(classify(U'ৗ'), CharClass::VowelSign);
  EXPECT_EQ(classify(U'্'), CharClass::Virama);
  EXPECT_EQ(classify(U'়'), CharClass::Nukta);
  EXPECT_EQ(classify(U'ঁ'), CharClass::CandrabinduAnusvaraVisarga);
  EXPECT_EQ(classify(U'ং'), CharClass::CandrabinduAnusvaraVisarga);
  EXPECT_EQ(classify(U'ঃ'), CharClass::CandrabinduAnusvaraVisarga);
  EXPECT_EQ(classify(U'৭'), CharClass::Digit);
}

// U+0964 DEVANAGARI DANDA: general category Po, shared by Bengali text.
TEST(Classify, DandaAndOthers) {
  EXPECT_EQ(classify(U'।'), CharClass::Danda);
  EXPECT_EQ(classify(U'॥'), CharClass::Danda);
  EXPECT_EQ(classify(U' '), CharClass::Whitespace);
  EXPECT_EQ(classify(U'\n'), CharClass::Whitespace);
  EXPECT_EQ(classify(U' '), CharClass::Whitespace);
  EXPECT_EQ(classify(U','), CharClass::Punctuation);
  EXPECT_EQ(classify(U'৳'), CharClass::Punctuation);  // currency symbol
  EXPECT_EQ(classify(U'\u200D'), CharClass::Other);
  EXPECT_EQ(classify(U'x'), CharClass::Other);
  EXPECT_EQ(classify(U'\u0984'), CharClass::Other);  // unassigned
  EXPECT_EQ(classify(0x110000), CharClass::Other);
}

TEST(Classify, TotalOverBengaliBlock) {
  for (char32_t cp = 0x0980; cp <= 0x09FF; ++cp) EXPECT_NO_THROW(classify(cp));
}

TEST(Normalize, ComposesOAndAu) {
  EXPECT_EQ(normalize(""), "");
  EXPECT_EQ(normalize("\u09C7\u09BE"), "\u09CB");
  EXPECT_EQ(normalize("\u09C7\u09D7"), "\u09CC");
  EXPECT_EQ(normalize("ঘরে"), "ঘরে");
}

// ড় and য় are composition exclusions: NFC keeps them decomposed.
TEST(Normalize, NuktaLettersStayDecomposed) {
  EXPECT_EQ(normalize("\u09DC"), "\u09A1\u09BC");
  EXPECT_EQ(normalize("\u09DF"), "\u09AF\u09BC");
  EXPECT_TRUE(is_normalized("\u09A1\u09BC"));
  EXPECT_FALSE(is_normalized("\u09DC"));
}

TEST(Normalize, RejectsMalformed) {
  EXPECT_THROW(normalize(std::string("ক\xFF", 4)), EncodingError);
  EXPECT_THROW(decompose(std::string("\x80", 1)), EncodingError);
}

TEST(Normalize, DecomposeInvertsCompose) {
  EXPECT_EQ(decompose("ো"), "ো");
  EXPECT_EQ(normalize(decompose("মোরেল")), "মোরেল");
}

TEST(Joiners, Stripped) {
  EXPECT_EQ(strip_joiners("ক্\u200Dষ\u200C"), "ক্ষ");
  EXPECT_EQ(strip_joiners(""), "");
}

std::vector<std::string> texts(const std::vector<GraphemeCluster>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.text);
  return out;
}

TEST(Clusters, HandSegmented) {
  EXPECT_TRUE(clusters("").empty());
  EXPECT_EQ(texts(clusters("ঘরে")), (std::vector<std::string>{"ঘ", "রে"}));
  EXPECT_EQ(texts(clusters("কর")), (std::vector<std::string>{"ক", "র"}));
  EXPECT_EQ(texts(clusters("ক্ষমা")), (std::vector<std::string>{"ক্ষ", "মা"}));
  EXPECT_EQ(texts(clusters("ক্\u200Dষ")), (std::vector<std::string>{"ক্\u200Dষ"}));
  EXPECT_EQ(texts(clusters("\u09A1\u09BC\u09C0")), (std::vector<std::string>{"\u09A1\u09BC\u09C0"}));
  EXPECT_EQ(texts(clusters("মোরাং।")), (std::vector<std::string>{"মো", "রাং", "।"}));
  EXPECT_EQ(texts(clusters("ক খ")), (std::vector<std::string>{"ক", " ", "খ"}));
}

TEST(Clusters, OffsetsAndBaseClass) {
  const auto cs = clusters("অকি");
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].base_class, CharClass::IndependentVowel);
  EXPECT_EQ(cs[1].base_class, CharClass::Consonant);
  EXPECT_EQ(cs[1].offset, 3u);
}

TEST(Clusters, DanglingCombiner) {
  try {
    clusters("িক");
    FAIL();
  } catch (const DanglingCombiner& e) {
    EXPECT_EQ(e.offset(), 0u);
  }
  try {
    clusters("ক ি");
    FAIL();
  } catch (const DanglingCombiner& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  EXPECT_THROW(clusters("।ি"), DanglingCombiner);
}

TEST(Clusters, ConcatenationReproducesText) {
  const std::string text = "মি মাপ্টুরে চাউরি। পূর্ণয় ভাত খেইল॥";
  std::string joined;
  for (const auto& c : clusters(text)) joined += c.text;
  EXPECT_EQ(joined, text);
}

}  // namespace
}  // namespace bpy::script
