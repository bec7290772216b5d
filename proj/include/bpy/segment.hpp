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

#ifndef BPY_SEGMENT_HPP
#define BPY_SEGMENT_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bpy/script.hpp"
#include "bpy/utf8.hpp"

namespace bpy::segment {

enum class TokenKind { Word, Number, Punct };

inline constexpr std::string_view to_string(TokenKind k) {
  switch (k) {
    case TokenKind::Word: return "Word";
    case TokenKind::Number: return "Number";
    case TokenKind::Punct: return "Punct";
  }
  return "Word";
}

struct Token {
  std::string text;
  std::size_t start = 0;  // byte offsets into the source, half-open
  std::size_t end = 0;
  TokenKind kind = TokenKind::Word;

  friend bool operator==(const Token&, const Token&) = default;
};

struct SentenceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<Token> tokens;

  std::size_t word_count() const {
    return static_cast<std::size_t>(std::count_if(
        tokens.begin(), tokens.end(), [](const Token& t) { return t.kind == TokenKind::Word; }));
  }

  friend bool operator==(const SentenceSpan&, const SentenceSpan&) = default;
};

namespace detail {

inline bool is_separator(script::CharClass c) {
  return c == script::CharClass::Whitespace || c == script::CharClass::Danda ||
         c == script::CharClass::Punctuation;
}

inline bool is_digit(char32_t cp) {
  return script::classify(cp) == script::CharClass::Digit || (cp >= U'0' && cp <= U'9');
}

inline bool is_terminator(std::string_view text) {
  return text == "।" || text == "॥" || text == "?" || text == "!";
}

}  // namespace detail

/// Words are maximal runs of code points outside Whitespace, Danda and
/// Punctuation. Each Danda/Punctuation code point is its own Punct token. A
/// run made only of digits (Bengali or ASCII) is a Number.
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t run_start = 0;
  bool in_run = false;
  bool all_digits = true;

  auto close_run = [&](std::size_t end) {
    if (!in_run) return;
    out.push_back({std::string(text.substr(run_start, end - run_start)), run_start, end,
                   all_digits ? TokenKind::Number : TokenKind::Word});
    in_run = false;
  };

  for (const auto& cp : utf8::decode(text)) {
    const auto cls = script::classify(cp.value);
    if (detail::is_separator(cls)) {
      close_run(cp.offset);
      if (cls != script::CharClass::Whitespace)
        out.push_back({std::string(text.substr(cp.offset, cp.length)), cp.offset,
                       cp.offset + cp.length, TokenKind::Punct});
      continue;
    }
    if (!in_run) {
      in_run = true;
      run_start = cp.offset;
      all_digits = true;
    }
    all_digits = all_digits && detail::is_digit(cp.value);
  }
  close_run(text.size());
  return out;
}

/// Sentences end at danda, double danda, '?' or '!'; a run of adjacent
/// terminators closes a single sentence. Trailing text without a terminator
/// forms the last sentence. Spans cover first to last token, so the gaps
/// between them are whitespace only.
inline std::vector<SentenceSpan> split_sentences(std::string_view text) {
  std::vector<SentenceSpan> out;
  SentenceSpan current;
  bool open = false;
  bool closing = false;  // saw a terminator; adjacent terminators still belong here

  auto flush = [&] {
    if (!open) return;
    current.start = current.tokens.front().start;
    current.end = current.tokens.back().end;
    out.push_back(std::move(current));
    current = SentenceSpan{};
    open = false;
    closing = false;
  };

  for (auto& tok : tokenize(text)) {
    const bool term = tok.kind == TokenKind::Punct && detail::is_terminator(tok.text);
    if (closing && !(term && tok.start == current.tokens.back().end)) flush();
    open = true;
    current.tokens.push_back(std::move(tok));
    if (term) closing = true;
  }
  flush();
  return out;
}

/// Word tokens, sentences and distinct word types of one text. Joiners are
/// ignored when comparing types.
struct TextCounts {
  std::size_t tokens = 0;
  std::size_t sentences = 0;
  std::size_t types = 0;

  friend bool operator==(const TextCounts&, const TextCounts&) = default;
};

inline TextCounts count_text(std::string_view text) {
  TextCounts counts;
  std::set<std::string> types;
  for (const auto& tok : tokenize(text)) {
    if (tok.kind != TokenKind::Word) continue;
    ++counts.tokens;
    types.insert(script::strip_joiners(tok.text));
  }
  counts.types = types.size();
  counts.sentences = split_sentences(text).size();
  return counts;
}

}  // namespace bpy::segment

#endif  // BPY_SEGMENT_HPP
