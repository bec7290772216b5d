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

#ifndef BPY_CORPUS_HPP
#define BPY_CORPUS_HPP

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bpy/error.hpp"
#include "bpy/io.hpp"
#include "bpy/script.hpp"
#include "bpy/segment.hpp"
#include "bpy/utf8.hpp"

namespace bpy::corpus {

enum class Source { Wikipedia, LegacyFont, Other };

inline constexpr std::string_view to_string(Source s) {
  switch (s) {
    case Source::Wikipedia: return "wikipedia";
    case Source::LegacyFont: return "legacy_font";
    case Source::Other: return "other";
  }
  return "other";
}

inline std::optional<Source> parse_source(std::string_view s) {
  for (Source v : {Source::Wikipedia, Source::LegacyFont, Source::Other})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

class ManifestMismatch : public Error {
 public:
  ManifestMismatch(const std::string& id, const std::string& what)
      : Error("manifest mismatch for " + id + ": " + what), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class MalformedManifest : public Error {
 public:
  MalformedManifest(std::size_t line, const std::string& what)
      : Error("manifest line " + std::to_string(line) + ": " + what) {}
};

struct DocumentRecord {
  std::string id;  // SHA-256 of the normalized content, lowercase hex
  Source source = Source::Other;
  std::string title;
  std::string path;  // relative to the store root
  std::size_t token_count = 0;
  std::size_t sentence_count = 0;
  std::size_t type_count = 0;
  std::string ingested_at;  // ISO-8601 UTC

  friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

struct DuplicateOf {
  std::string id;
  friend bool operator==(const DuplicateOf&, const DuplicateOf&) = default;
};

using IngestResult = std::variant<DocumentRecord, DuplicateOf>;

struct Totals {
  std::size_t documents = 0;
  std::size_t tokens = 0;
  std::size_t sentences = 0;
  std::size_t types = 0;  // summed per document
  std::size_t empty_documents = 0;

  void add(const DocumentRecord& r) {
    ++documents;
    tokens += r.token_count;
    sentences += r.sentence_count;
    types += r.type_count;
    if (r.token_count == 0) ++empty_documents;
  }

  friend bool operator==(const Totals&, const Totals&) = default;
};

struct StatsReport {
  Totals totals;
  std::map<Source, Totals> by_source;
  bool verified = false;
};

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

inline std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline constexpr std::string_view kManifestHeader =
    "#ID\tSOURCE\tTITLE\tPATH\tTOKENS\tSENTENCES\tTYPES\tTIMESTAMP";

namespace detail {

inline std::string clean_field(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

inline std::size_t parse_count(std::string_view s, std::size_t line) {
  if (s.empty()) throw MalformedManifest(line, "empty count");
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw MalformedManifest(line, "bad count '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

// Exclusive advisory lock on a file; released on destruction.
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path)
      : fd_(::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644)) {
    if (fd_ < 0) throw IoError("cannot open lock " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw IoError("cannot lock " + path.string());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_;
};

}  // namespace detail

inline std::string format_record(const DocumentRecord& r) {
  std::ostringstream out;
  out << r.id << '\t' << to_string(r.source) << '\t' << detail::clean_field(r.title) << '\t'
      << r.path << '\t' << r.token_count << '\t' << r.sentence_count << '\t' << r.type_count << '\t'
      << r.ingested_at;
  return std::move(out).str();
}

inline std::string format_manifest(const std::vector<DocumentRecord>& records) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& r : records) out += format_record(r) + '\n';
  return out;
}

inline std::vector<DocumentRecord> parse_manifest(std::string_view content) {
  std::vector<DocumentRecord> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> f;
    std::size_t s = 0;
    while (true) {
      auto tab = line.find('\t', s);
      f.push_back(line.substr(s, tab == std::string_view::npos ? std::string_view::npos : tab - s));
      if (tab == std::string_view::npos) break;
      s = tab + 1;
    }
    if (f.size() != 8) throw MalformedManifest(line_no, "expected 8 tab-separated fields");
    auto source = parse_source(f[1]);
    if (!source) throw MalformedManifest(line_no, "unknown source '" + std::string(f[1]) + "'");
    out.push_back({std::string(f[0]), *source, std::string(f[2]), std::string(f[3]),
                   detail::parse_count(f[4], line_no), detail::parse_count(f[5], line_no),
                   detail::parse_count(f[6], line_no), std::string(f[7])});
  }
  return out;
}

/// A corpus directory: `corpus/<id>.txt` for each document plus
/// `manifest.tsv`, one record per line in ingestion order.
class Store {
 public:
  using Clock = std::function<std::string()>;

  explicit Store(std::filesystem::path root, Clock clock = utc_now)
      : root_(std::move(root)), clock_(std::move(clock)) {}

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path manifest_path() const { return root_ / "manifest.tsv"; }

  std::vector<DocumentRecord> records() const {
    if (!std::filesystem::exists(manifest_path())) return {};
    return parse_manifest(io::read_file(manifest_path()));
  }

  /// Normalizes `file` to NFC and stores it under its content hash. Content
  /// already in the store yields DuplicateOf and changes nothing.
  IngestResult ingest(const std::filesystem::path& file, Source source, std::string_view title) {
    if (!std::filesystem::is_regular_file(file)) throw IoError("no such file: " + file.string());
    const std::string raw = io::read_file(file);
    utf8::require_valid(raw);
    return ingest_text(script::normalize(raw), source, title);
  }

  IngestResult ingest_text(const std::string& normalized, Source source, std::string_view title) {
    std::filesystem::create_directories(root_ / "corpus");
    detail::FileLock lock(root_ / ".lock");

    auto records = this->records();
    const std::string id = sha256_hex(normalized);
    for (const auto& r : records)
      if (r.id == id) return DuplicateOf{id};

    const std::string rel = "corpus/" + id + ".txt";
    io::write_atomically(root_ / rel, normalized);
    const auto counts = segment::count_text(normalized);
    DocumentRecord rec{id, source, detail::clean_field(title), rel, counts.tokens,
                       counts.sentences, counts.types, clock_()};
    records.push_back(rec);
    io::write_atomically(manifest_path(), format_manifest(records));
    return rec;
  }

  /// Totals from the manifest. With `verify`, every stored file is rehashed
  /// and recounted first; the first disagreement throws ManifestMismatch.
  StatsReport stats(bool verify = false) const {
    StatsReport report;
    for (const auto& r : records()) {
      if (verify) check(r);
      report.totals.add(r);
      report.by_source[r.source].add(r);
    }
    report.verified = verify;
    return report;
  }

  void check(const DocumentRecord& r) const {
    const auto path = root_ / r.path;
    if (!std::filesystem::exists(path)) throw ManifestMismatch(r.id, "stored file missing");
    const std::string content = io::read_file(path);
    if (sha256_hex(content) != r.id) throw ManifestMismatch(r.id, "content hash differs");
    if (!utf8::is_valid(content)) throw ManifestMismatch(r.id, "stored file is not UTF-8");
    const auto counts = segment::count_text(content);
    if (counts.tokens != r.token_count || counts.sentences != r.sentence_count ||
        counts.types != r.type_count)
      throw ManifestMismatch(r.id, "recount differs");
  }

 private:
  std::filesystem::path root_;
  Clock clock_;
};

}  // namespace bpy::corpus

#endif  // BPY_CORPUS_HPP
