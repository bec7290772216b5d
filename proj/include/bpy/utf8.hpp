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

#ifndef BPY_UTF8_HPP
#define BPY_UTF8_HPP

#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bpy/error.hpp"

namespace bpy::utf8 {

/// One decoded scalar value and where it sits in the source bytes.
struct CodePoint {
  char32_t value;
  std::size_t offset;
  std::size_t length;
};

/// Byte offset of the first ill-formed sequence, or npos when `text` is valid.
inline std::size_t find_invalid(std::string_view text) {
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto n = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < n) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) return static_cast<std::size_t>(start);
  }
  return std::string_view::npos;
}

inline bool is_valid(std::string_view text) {
  return find_invalid(text) == std::string_view::npos;
}

/// Throws EncodingError on the first ill-formed sequence.
inline void require_valid(std::string_view text) {
  if (auto bad = find_invalid(text); bad != std::string_view::npos)
    throw EncodingError(bad);
}

inline std::vector<CodePoint> decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
  const auto n = static_cast<std::int32_t>(text.size());
  std::int32_t i = 0;
  while (i < n) {
    const std::int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, n, c);
    if (c < 0) throw EncodingError(static_cast<std::size_t>(start));
    out.push_back({static_cast<char32_t>(c), static_cast<std::size_t>(start),
                   static_cast<std::size_t>(i - start)});
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
  std::uint8_t buf[U8_MAX_LENGTH];
  std::int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
  if (error) throw Error("cannot encode code point as UTF-8");
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

/// Number of scalar values; `text` must be valid.
inline std::size_t length(std::string_view text) {
  std::size_t count = 0;
  for (unsigned char c : text)
    if ((c & 0xC0) != 0x80) ++count;
  return count;
}

/// Last scalar value of non-empty valid text.
inline char32_t last(std::string_view text) {
  if (text.empty()) throw Error("empty text has no last code point");
  std::size_t i = text.size() - 1;
  while (i > 0 && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) --i;
  return decode(text.substr(i)).front().value;
}

}  // namespace bpy::utf8

#endif  // BPY_UTF8_HPP
