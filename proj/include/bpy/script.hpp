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

#ifndef BPY_SCRIPT_HPP
#define BPY_SCRIPT_HPP

#include <unicode/bytestream.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/utf8.hpp"

// Code-point classification, canonical normalization and orthographic
// cluster segmentation for Bengali-script text.
namespace bpy::script {

enum class CharClass {
  Consonant,
  IndependentVowel,
  VowelSign,
  Virama,
  Nukta,
  CandrabinduAnusvaraVisarga,
  Digit,
  Danda,
  Punctuation,
  Whitespace,
  Other,
};

inline constexpr std::string_view to_string(CharClass c) {
  switch (c) {
    case CharClass::Consonant: return "Consonant";
    case CharClass::IndependentVowel: return "IndependentVowel";
    case CharClass::VowelSign: return "VowelSign";
    case CharClass::Virama: return "Virama";
    case CharClass::Nukta: return "Nukta";
    case CharClass::CandrabinduAnusvaraVisarga: return "CandrabinduAnusvaraVisarga";
    case CharClass::Digit: return "Digit";
    case CharClass::Danda: return "Danda";
    case CharClass::Punctuation: return "Punctuation";
    case CharClass::Whitespace: return "Whitespace";
    case CharClass::Other: return "Other";
  }
  return "Other";
}

inline constexpr char32_t kZwnj = 0x200C;
inline constexpr char32_t kZwj = 0x200D;
inline constexpr char32_t kBengaliFirst = 0x0980;
inline constexpr char32_t kBengaliLast = 0x09FF;

namespace detail {

constexpr bool in(char32_t cp, char32_t lo, char32_t hi) { return cp >= lo && cp <= hi; }

// Letters and marks of the Bengali block. Returns Other for code points that
// fall through to general-category classification.
constexpr CharClass bengali_letter_or_mark(char32_t cp) {
  if (in(cp, 0x0981, 0x0983)) return CharClass::CandrabinduAnusvaraVisarga;
  if (in(cp, 0x0985, 0x098C) || in(cp, 0x098F, 0x0990) || in(cp, 0x0993, 0x0994) ||
      in(cp, 0x09E0, 0x09E1))
    return CharClass::IndependentVowel;
  if (in(cp, 0x0995, 0x09A8) || in(cp, 0x09AA, 0x09B0) || cp == 0x09B2 ||
      in(cp, 0x09B6, 0x09B9) || cp == 0x09CE || in(cp, 0x09DC, 0x09DD) || cp == 0x09DF ||
      in(cp, 0x09F0, 0x09F1))
    return CharClass::Consonant;
  if (cp == 0x09BC) return CharClass::Nukta;
  if (in(cp, 0x09BE, 0x09C4) || in(cp, 0x09C7, 0x09C8) || in(cp, 0x09CB, 0x09CC) ||
      cp == 0x09D7 || in(cp, 0x09E2, 0x09E3))
    return CharClass::VowelSign;
  if (cp == 0x09CD) return CharClass::Virama;
  if (in(cp, 0x09E6, 0x09EF)) return CharClass::Digit;
  return CharClass::Other;
}

inline CharClass by_general_category(char32_t cp) {
  const auto c = static_cast<UChar32>(cp);
  if (u_isUWhiteSpace(c)) return CharClass::Whitespace;
  switch (u_charType(c)) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return CharClass::Punctuation;
    default:
      return CharClass::Other;
  }
}

inline const icu::Normalizer2& nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFC data unavailable");
  return *n;
}

inline const icu::Normalizer2& nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw Error("ICU NFD data unavailable");
  return *n;
}

inline std::string run(const icu::Normalizer2& norm, std::string_view text) {
  utf8::require_valid(text);
  std::string out;
  out.reserve(text.size());
  icu::StringByteSink<std::string> sink(&out);
  UErrorCode status = U_ZERO_ERROR;
  norm.normalizeUTF8(0, icu::StringPiece(text.data(), static_cast<int32_t>(text.size())),
                     sink, nullptr, status);
  if (U_FAILURE(status)) throw Error(std::string("normalization failed: ") + u_errorName(status));
  return out;
}

}  // namespace detail

/// Total classification of a scalar value. Bengali letters and marks use a
/// fixed table; everything else goes by Unicode general category, with
/// punctuation and symbols both reported as Punctuation. ZWJ/ZWNJ are Other.
inline CharClass classify(char32_t cp) {
  if (cp == 0x0964 || cp == 0x0965) return CharClass::Danda;
  if (cp == kZwj || cp == kZwnj) return CharClass::Other;
  if (cp >= kBengaliFirst && cp <= kBengaliLast) {
    if (auto c = detail::bengali_letter_or_mark(cp); c != CharClass::Other) return c;
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return CharClass::Other;
  return detail::by_general_category(cp);
}

/// True for code points that attach to the preceding cluster rather than
/// starting one.
inline bool is_combining(char32_t cp) {
  switch (classify(cp)) {
    case CharClass::VowelSign:
    case CharClass::Virama:
    case CharClass::Nukta:
    case CharClass::CandrabinduAnusvaraVisarga:
      return true;
    default:
      break;
  }
  if (cp == kZwj || cp == kZwnj) return false;
  if (cp > 0x10FFFF) return false;
  const auto type = u_charType(static_cast<UChar32>(cp));
  return type == U_NON_SPACING_MARK || type == U_COMBINING_SPACING_MARK ||
         type == U_ENCLOSING_MARK;
}

inline bool is_joiner(char32_t cp) { return cp == kZwj || cp == kZwnj; }

/// Canonical composed form (NFC). Throws EncodingError on malformed input.
inline std::string normalize(std::string_view text) {
  return detail::run(detail::nfc(), text);
}

/// Canonical decomposed form (NFD).
inline std::string decompose(std::string_view text) {
  return detail::run(detail::nfd(), text);
}

inline bool is_normalized(std::string_view text) {
  utf8::require_valid(text);
  UErrorCode status = U_ZERO_ERROR;
  const bool ok = detail::nfc().isNormalizedUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())), status);
  if (U_FAILURE(status)) throw Error(std::string("normalization check failed: ") + u_errorName(status));
  return ok;
}

/// Drops ZWJ and ZWNJ.
inline std::string strip_joiners(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const auto& cp : utf8::decode(text))
    if (!is_joiner(cp.value)) out.append(text.substr(cp.offset, cp.length));
  return out;
}

struct GraphemeCluster {
  std::string text;
  CharClass base_class;
  std::size_t offset = 0;

  friend bool operator==(const GraphemeCluster&, const GraphemeCluster&) = default;
};

/// A combining mark with no base to attach to.
class DanglingCombiner : public Error {
 public:
  explicit DanglingCombiner(std::size_t offset)
      : Error("combining mark without a base at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Orthographic clusters: a base followed by its combining marks and joiners.
/// A consonant after a virama (optionally through a joiner) stays in the same
/// cluster, so conjuncts are single clusters. Combining marks may only follow
/// a consonant, independent vowel, digit or Other base.
inline std::vector<GraphemeCluster> clusters(std::string_view text) {
  std::vector<GraphemeCluster> out;
  bool after_virama = false;
  for (const auto& cp : utf8::decode(text)) {
    const auto piece = text.substr(cp.offset, cp.length);
    const auto cls = classify(cp.value);
    const bool extend = !out.empty() && (is_combining(cp.value) || is_joiner(cp.value) ||
                                         (after_virama && cls == CharClass::Consonant));
    if (is_combining(cp.value)) {
      if (out.empty()) throw DanglingCombiner(cp.offset);
      switch (out.back().base_class) {
        case CharClass::Whitespace:
        case CharClass::Punctuation:
        case CharClass::Danda:
          throw DanglingCombiner(cp.offset);
        default:
          break;
      }
    }
    if (extend) {
      out.back().text.append(piece);
    } else {
      out.push_back({std::string(piece), cls, cp.offset});
    }
    if (cls == CharClass::Virama)
      after_virama = true;
    else if (!is_joiner(cp.value))
      after_virama = false;
  }
  return out;
}

}  // namespace bpy::script

#endif  // BPY_SCRIPT_HPP
