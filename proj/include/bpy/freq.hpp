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

#ifndef BPY_FREQ_HPP
#define BPY_FREQ_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/io.hpp"
#include "bpy/script.hpp"
#include "bpy/segment.hpp"

namespace bpy::freq {

class MalformedExport : public Error {
 public:
  MalformedExport(std::size_t line, const std::string& what)
      : Error("frequency export line " + std::to_string(line) + ": " + what) {}
};

/// Word counts over Word tokens. Values compare equal when their entries do.
class FrequencyTable {
 public:
  using Entries = std::map<std::string, std::uint64_t>;

  FrequencyTable() = default;

  void add(std::string word, std::uint64_t n = 1) {
    if (n == 0) return;
    entries_[std::move(word)] += n;
    total_ += n;
  }

  const Entries& entries() const noexcept { return entries_; }
  std::uint64_t total_tokens() const noexcept { return total_; }
  std::size_t type_count() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::uint64_t count_of(std::string_view word) const {
    auto it = entries_.find(std::string(word));
    return it == entries_.end() ? 0 : it->second;
  }

  friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Entries entries_;
  std::uint64_t total_ = 0;
};

/// Counts Word tokens; joiners are stripped so ZWJ/ZWNJ spelling variants
/// collapse into one type.
inline FrequencyTable count(const std::vector<segment::Token>& tokens) {
  FrequencyTable table;
  for (const auto& t : tokens)
    if (t.kind == segment::TokenKind::Word) table.add(script::strip_joiners(t.text));
  return table;
}

/// Normalize, tokenize, count.
inline FrequencyTable count_text(std::string_view text) {
  return count(segment::tokenize(script::normalize(text)));
}

inline FrequencyTable merge(const FrequencyTable& a, const FrequencyTable& b) {
  FrequencyTable out = a;
  for (const auto& [word, n] : b.entries()) out.add(word, n);
  return out;
}

using Ranked = std::vector<std::pair<std::string, std::uint64_t>>;

/// Highest counts first; equal counts in code-point order of the word (UTF-8
/// byte order is code-point order).
inline Ranked top_n(const FrequencyTable& table, std::size_t n) {
  Ranked all(table.entries().begin(), table.entries().end());
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  n = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), by_rank);
  all.resize(n);
  return all;
}

inline Ranked ranked(const FrequencyTable& table) { return top_n(table, table.type_count()); }

/// `count / total` with six decimals, rounding half to even, computed in
/// integers so output is identical everywhere.
inline std::string relative_frequency(std::uint64_t count, std::uint64_t total) {
  if (total == 0) return "0.000000";
  const unsigned __int128 scaled = static_cast<unsigned __int128>(count) * 1000000u;
  auto q = static_cast<std::uint64_t>(scaled / total);
  const auto r = static_cast<std::uint64_t>(scaled % total);
  const unsigned __int128 twice = static_cast<unsigned __int128>(r) * 2u;
  if (twice > total || (twice == total && (q & 1u))) ++q;
  std::string frac = std::to_string(q % 1000000);
  frac.insert(0, 6 - frac.size(), '0');
  return std::to_string(q / 1000000) + "." + frac;
}

enum class Format { Tsv, RankReport };

inline constexpr std::string_view kTsvHeader = "rank\tword\tcount\trelative_freq";

/// Renders the top `limit` rows (all rows when `limit` is larger than the
/// table). The rank report adds a commented summary and a cumulative column.
inline std::string render(const FrequencyTable& table, Format format,
                          std::size_t limit = static_cast<std::size_t>(-1)) {
  std::ostringstream out;
  const auto rows = top_n(table, limit);
  if (format == Format::RankReport) {
    out << "# tokens\t" << table.total_tokens() << '\n';
    out << "# types\t" << table.type_count() << '\n';
    out << kTsvHeader << "\tcumulative_freq\n";
  } else {
    out << kTsvHeader << '\n';
  }
  std::uint64_t running = 0;
  std::size_t rank = 0;
  for (const auto& [word, n] : rows) {
    running += n;
    out << ++rank << '\t' << word << '\t' << n << '\t' << relative_frequency(n, table.total_tokens());
    if (format == Format::RankReport) out << '\t' << relative_frequency(running, table.total_tokens());
    out << '\n';
  }
  return std::move(out).str();
}

inline void export_table(const FrequencyTable& table, Format format,
                         const std::filesystem::path& path) {
  io::write_atomically(path, render(table, format));
}

/// Reads either export format back. Relative frequencies are recomputed, not
/// trusted.
inline FrequencyTable parse_export(std::string_view content) {
  FrequencyTable table;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (!line.starts_with(kTsvHeader)) throw MalformedExport(line_no, "missing header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t s = 0;
    while (true) {
      auto tab = line.find('\t', s);
      f.push_back(line.substr(s, tab == std::string_view::npos ? std::string_view::npos : tab - s));
      if (tab == std::string_view::npos) break;
      s = tab + 1;
    }
    if (f.size() < 4) throw MalformedExport(line_no, "expected rank, word, count, relative_freq");
    std::uint64_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(std::string(f[2]), &used);
      if (used != f[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw MalformedExport(line_no, "bad count '" + std::string(f[2]) + "'");
    }
    if (table.count_of(f[1]) != 0) throw MalformedExport(line_no, "duplicate word");
    table.add(std::string(f[1]), n);
  }
  return table;
}

inline FrequencyTable import_table(const std::filesystem::path& path) {
  return parse_export(io::read_file(path));
}

}  // namespace bpy::freq

#endif  // BPY_FREQ_HPP
