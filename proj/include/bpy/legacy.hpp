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

#ifndef BPY_LEGACY_HPP
#define BPY_LEGACY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/io.hpp"
#include "bpy/script.hpp"
#include "bpy/utf8.hpp"

// Table-driven conversion of legacy ASCII-font Bengali text to Unicode.
namespace bpy::legacy {

enum class RuleKind { Plain, PreBaseVowel, Conjunct };

inline constexpr std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Plain: return "plain";
    case RuleKind::PreBaseVowel: return "prevowel";
    case RuleKind::Conjunct: return "conjunct";
  }
  return "plain";
}

struct MappingRule {
  std::string pattern;  // raw legacy bytes, 1..4 long
  std::string output;   // UTF-8; empty only when `deletion`
  RuleKind kind = RuleKind::Plain;
  bool deletion = false;

  std::size_t priority() const noexcept { return pattern.size(); }

  friend bool operator==(const MappingRule&, const MappingRule&) = default;
};

inline constexpr std::size_t kMaxPattern = 4;

class DuplicatePattern : public Error {
 public:
  explicit DuplicatePattern(const std::string& hex)
      : Error("duplicate mapping pattern " + hex) {}
};

class MalformedRule : public Error {
 public:
  MalformedRule(std::size_t line, const std::string& why)
      : Error("malformed mapping rule at line " + std::to_string(line) + ": " + why),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnmappedByte : public Error {
 public:
  explicit UnmappedByte(std::size_t offset)
      : Error("unmapped legacy byte at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A pre-base vowel with no consonant after it to move behind.
class OrphanVowelSign : public Error {
 public:
  explicit OrphanVowelSign(std::size_t offset)
      : Error("pre-base vowel sign without a following consonant at offset " +
              std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

inline std::string to_hex(std::string_view bytes) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

class MappingTable {
 public:
  MappingTable() = default;

  /// Validates uniqueness and builds the lookup index.
  MappingTable(std::vector<MappingRule> rules, std::string name = {}, std::string version = {})
      : rules_(std::move(rules)), name_(std::move(name)), version_(std::move(version)) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      const auto& r = rules_[i];
      if (r.pattern.empty() || r.pattern.size() > kMaxPattern)
        throw Error("mapping pattern must be 1.." + std::to_string(kMaxPattern) + " bytes");
      if (!index_.emplace(r.pattern, i).second) throw DuplicatePattern(to_hex(r.pattern));
      longest_ = std::max(longest_, r.pattern.size());
    }
  }

  const std::vector<MappingRule>& rules() const noexcept { return rules_; }
  std::size_t size() const noexcept { return rules_.size(); }
  const std::string& name() const noexcept { return name_; }
  const std::string& version() const noexcept { return version_; }

  /// Longest rule whose pattern is a prefix of `bytes`.
  const MappingRule* match(std::string_view bytes) const {
    for (std::size_t len = std::min(longest_, bytes.size()); len > 0; --len) {
      if (auto it = index_.find(std::string(bytes.substr(0, len))); it != index_.end())
        return &rules_[it->second];
    }
    return nullptr;
  }

 private:
  std::vector<MappingRule> rules_;
  std::string name_;
  std::string version_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t longest_ = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

inline std::optional<std::string> parse_hex(std::string_view hex) {
  if (hex.empty() || hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::string out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<char>(hi << 4 | lo));
  }
  return out;
}

// \n \r \t \s (space) \\ and \uXXXX.
inline std::optional<std::string> unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i >= s.size()) return std::nullopt;
    switch (s[i]) {
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      case 't': out.push_back('\t'); break;
      case 's': out.push_back(' '); break;
      case '\\': out.push_back('\\'); break;
      case 'u': {
        if (i + 4 >= s.size()) return std::nullopt;
        char32_t cp = 0;
        for (int k = 1; k <= 4; ++k) {
          char c = s[i + k];
          cp <<= 4;
          if (c >= '0' && c <= '9') cp |= static_cast<char32_t>(c - '0');
          else if (c >= 'A' && c <= 'F') cp |= static_cast<char32_t>(c - 'A' + 10);
          else if (c >= 'a' && c <= 'f') cp |= static_cast<char32_t>(c - 'a' + 10);
          else return std::nullopt;
        }
        utf8::append(out, cp);
        i += 4;
        break;
      }
      default: return std::nullopt;
    }
  }
  return out;
}

}  // namespace detail

/// Parses the mapping format: `HEXPATTERN<TAB>OUTPUT<TAB>KIND` per line,
/// `#` comments, with `# name:` and `# version:` header directives.
inline MappingTable parse_table(std::string_view content) {
  std::vector<MappingRule> rules;
  std::string name, version;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    auto raw = content.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (detail::trim(raw).empty()) continue;
    if (raw.front() == '#') {
      auto body = detail::trim(raw.substr(1));
      if (body.starts_with("name:")) name = detail::trim(body.substr(5));
      else if (body.starts_with("version:")) version = detail::trim(body.substr(8));
      continue;
    }
    if (!utf8::is_valid(raw)) throw MalformedRule(line_no, "not UTF-8");
    auto fields = detail::split_tabs(raw);
    if (fields.size() != 3) throw MalformedRule(line_no, "expected 3 tab-separated fields");
    auto pattern = detail::parse_hex(fields[0]);
    if (!pattern) throw MalformedRule(line_no, "pattern must be uppercase hex pairs");
    if (pattern->size() > kMaxPattern) throw MalformedRule(line_no, "pattern longer than 4 bytes");

    MappingRule rule;
    rule.pattern = std::move(*pattern);
    if (fields[2] == "plain") rule.kind = RuleKind::Plain;
    else if (fields[2] == "prevowel") rule.kind = RuleKind::PreBaseVowel;
    else if (fields[2] == "conjunct") rule.kind = RuleKind::Conjunct;
    else throw MalformedRule(line_no, "unknown kind '" + std::string(fields[2]) + "'");

    if (fields[1] == "<del>") {
      rule.deletion = true;
    } else {
      auto out = detail::unescape(fields[1]);
      if (!out || out->empty()) throw MalformedRule(line_no, "bad output field");
      rule.output = std::move(*out);
    }
    const auto cps = utf8::decode(rule.output);
    if (rule.kind == RuleKind::PreBaseVowel &&
        (rule.deletion || !std::all_of(cps.begin(), cps.end(), [](const auto& c) {
          return script::classify(c.value) == script::CharClass::VowelSign;
        })))
      throw MalformedRule(line_no, "prevowel output must be vowel signs");
    if (rule.kind == RuleKind::Conjunct &&
        (rule.deletion || script::classify(cps.front().value) != script::CharClass::Consonant))
      throw MalformedRule(line_no, "conjunct output must start with a consonant");
    rules.push_back(std::move(rule));
  }
  return MappingTable(std::move(rules), std::move(name), std::move(version));
}

inline MappingTable load_table(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw IoError("mapping table not found: " + path.string());
  return parse_table(io::read_file(path));
}

enum class Mode { Strict, Lenient };

inline constexpr std::string_view kReplacement = "\xEF\xBF\xBD";  // U+FFFD

struct Conversion {
  std::string text;                       // NFC
  std::size_t rules_fired = 0;
  std::vector<std::size_t> unmapped;      // byte offsets, lenient mode only
  std::vector<std::size_t> orphan_vowels; // byte offsets, lenient mode only
};

namespace detail {

struct Unit {
  std::string text;  // one code point
  char32_t cp;
  bool prebase;
  std::size_t source;
};

inline bool is_consonant(const Unit& u) {
  return script::classify(u.cp) == script::CharClass::Consonant;
}

// End (exclusive) of the consonant cluster starting at `i`:
// C (nukta)* ( virama joiner? C (nukta)* )*
inline std::size_t cluster_end(const std::vector<Unit>& units, std::size_t i) {
  auto skip_nukta = [&](std::size_t k) {
    while (k < units.size() && script::classify(units[k].cp) == script::CharClass::Nukta) ++k;
    return k;
  };
  std::size_t k = skip_nukta(i + 1);
  while (k < units.size() && script::classify(units[k].cp) == script::CharClass::Virama) {
    std::size_t next = k + 1;
    if (next < units.size() && script::is_joiner(units[next].cp)) ++next;
    if (next >= units.size() || !is_consonant(units[next])) break;
    k = skip_nukta(next + 1);
  }
  return k;
}

}  // namespace detail

/// Longest-match conversion followed by a reordering pass that moves every
/// pre-base vowel sign behind the consonant cluster it precedes. The result
/// is NFC. Strict mode throws on the first unmapped byte or orphaned pre-base
/// vowel; lenient mode substitutes U+FFFD, keeps orphans in place and reports
/// offsets.
inline Conversion convert(std::string_view legacy, const MappingTable& table,
                          Mode mode = Mode::Strict) {
  Conversion result;
  std::vector<detail::Unit> units;
  std::size_t i = 0;
  while (i < legacy.size()) {
    const MappingRule* rule = table.match(legacy.substr(i));
    if (rule == nullptr) {
      if (mode == Mode::Strict) throw UnmappedByte(i);
      result.unmapped.push_back(i);
      units.push_back({std::string(kReplacement), 0xFFFD, false, i});
      ++i;
      continue;
    }
    ++result.rules_fired;
    for (const auto& cp : utf8::decode(rule->output))
      units.push_back({rule->output.substr(cp.offset, cp.length), cp.value,
                       rule->kind == RuleKind::PreBaseVowel, i});
    i += rule->pattern.size();
  }

  std::vector<detail::Unit> ordered;
  ordered.reserve(units.size());
  for (std::size_t k = 0; k < units.size();) {
    if (!units[k].prebase) {
      ordered.push_back(std::move(units[k++]));
      continue;
    }
    std::size_t run = k;
    while (run < units.size() && units[run].prebase) ++run;
    if (run < units.size() && detail::is_consonant(units[run])) {
      const std::size_t end = detail::cluster_end(units, run);
      for (std::size_t m = run; m < end; ++m) ordered.push_back(std::move(units[m]));
      for (std::size_t m = k; m < run; ++m) ordered.push_back(std::move(units[m]));
      k = end;
    } else {
      if (mode == Mode::Strict) throw OrphanVowelSign(units[k].source);
      for (std::size_t m = k; m < run; ++m) {
        result.orphan_vowels.push_back(units[m].source);
        ordered.push_back(std::move(units[m]));
      }
      k = run;
    }
  }

  std::string text;
  text.reserve(legacy.size() * 3);
  for (const auto& u : ordered) text += u.text;
  result.text = script::normalize(text);
  return result;
}

struct ConversionReport {
  std::filesystem::path output;
  std::size_t bytes = 0;
  std::size_t rules_fired = 0;
  std::size_t unmapped = 0;
  std::vector<std::size_t> unmapped_offsets;
  std::vector<std::size_t> orphan_offsets;
};

/// Converts `in` into `out`. Nothing is written when conversion fails.
inline ConversionReport convert_file(const std::filesystem::path& in,
                                     const std::filesystem::path& out,
                                     const MappingTable& table, Mode mode = Mode::Strict) {
  const std::string legacy = io::read_file(in);
  Conversion conv = convert(legacy, table, mode);
  io::write_atomically(out, conv.text);
  ConversionReport report;
  report.output = out;
  report.bytes = legacy.size();
  report.rules_fired = conv.rules_fired;
  report.unmapped = conv.unmapped.size();
  report.unmapped_offsets = std::move(conv.unmapped);
  report.orphan_offsets = std::move(conv.orphan_vowels);
  return report;
}

/// Maps Unicode text back to legacy bytes using the rules whose decomposed
/// output is unique in the table. Pre-base vowel signs are moved back in front
/// of their consonant cluster first. Throws Error when some text has no
/// inverse.
inline std::string reverse_convert(std::string_view text, const MappingTable& table) {
  std::map<std::string, const MappingRule*> inverse;
  std::map<std::string, int> seen;
  std::size_t longest = 0;
  std::vector<char32_t> prebase;
  for (const auto& r : table.rules()) {
    if (r.deletion) continue;
    auto key = script::decompose(r.output);
    ++seen[key];
    inverse[key] = &r;
    longest = std::max(longest, key.size());
    if (r.kind == RuleKind::PreBaseVowel)
      for (const auto& cp : utf8::decode(key)) prebase.push_back(cp.value);
  }
  for (const auto& [key, count] : seen)
    if (count > 1) inverse.erase(key);

  std::vector<detail::Unit> units;
  const std::string nfd = script::decompose(text);
  for (const auto& cp : utf8::decode(nfd))
    units.push_back({nfd.substr(cp.offset, cp.length), cp.value, false, cp.offset});

  std::string visual;
  for (std::size_t k = 0; k < units.size();) {
    if (!detail::is_consonant(units[k])) {
      visual += units[k++].text;
      continue;
    }
    const std::size_t end = detail::cluster_end(units, k);
    std::string signs;
    std::size_t after = end;
    while (after < units.size() &&
           std::find(prebase.begin(), prebase.end(), units[after].cp) != prebase.end())
      signs += units[after++].text;
    visual += signs;
    for (std::size_t m = k; m < end; ++m) visual += units[m].text;
    k = after;
  }

  std::string out;
  std::size_t pos = 0;
  while (pos < visual.size()) {
    bool matched = false;
    for (std::size_t len = std::min(longest, visual.size() - pos); len > 0; --len) {
      auto it = inverse.find(visual.substr(pos, len));
      if (it == inverse.end()) continue;
      out += it->second->pattern;
      pos += len;
      matched = true;
      break;
    }
    if (!matched) throw Error("no inverse mapping at offset " + std::to_string(pos));
  }
  return out;
}

}  // namespace bpy::legacy

#endif  // BPY_LEGACY_HPP
