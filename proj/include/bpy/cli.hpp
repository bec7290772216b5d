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

#ifndef BPY_CLI_HPP
#define BPY_CLI_HPP

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bpy/corpus.hpp"
#include "bpy/error.hpp"
#include "bpy/freq.hpp"
#include "bpy/io.hpp"
#include "bpy/legacy.hpp"
#include "bpy/morph/engine.hpp"
#include "bpy/script.hpp"
#include "bpy/segment.hpp"

namespace bpy::cli {

inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

namespace detail {

class UsageError : public Error {
 public:
  using Error::Error;
};

inline std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
  if (!std::filesystem::is_regular_file(path)) throw IoError("no such file: " + path);
  return io::read_file(path);
}

inline void emit(const std::string& data, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-") out << data;
  else io::write_atomically(output, data);
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

struct DataPaths {
  std::string data_dir;
  std::string rules;
  std::string lexicon;

  morph::Engine load() const {
    const std::filesystem::path dir(data_dir);
    return morph::Engine(morph::load_ruleset(rules.empty() ? dir / "rules.tsv" : std::filesystem::path(rules)),
                         morph::load_lexicon(lexicon.empty() ? dir / "lexicon.tsv" : std::filesystem::path(lexicon)));
  }
};

inline void print_analyses(const std::string& surface, const std::vector<morph::Analysis>& analyses,
                           bool keep_unanalyzed, std::ostream& out) {
  if (analyses.empty() && keep_unanalyzed) out << surface << "\t-\t-\t-\n";
  for (const auto& a : analyses) {
    out << a.surface << '\t' << (a.hypothetical ? "*" : "") << a.root.lemma << '\t'
        << morph::format_features(a.features) << '\t'
        << (a.suffix_trace.empty() ? "-" : join(a.suffix_trace, ",")) << '\n';
  }
}

}  // namespace detail

/// Runs one command line. `args` excludes the program name. Data goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 when an operation
/// fails and 2 for usage errors.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err, const std::string& default_data_dir) {
  CLI::App app{"Bishnupriya Manipuri text processing toolkit", "bpy"};
  app.require_subcommand(1);
  app.fallthrough();

  detail::DataPaths paths{default_data_dir, {}, {}};
  app.add_option("--data-dir", paths.data_dir, "Directory holding rules.tsv and lexicon.tsv");
  app.add_option("--rules", paths.rules, "Suffix rule file");
  app.add_option("--lexicon", paths.lexicon, "Lexicon file");

  std::function<int()> action;

  // convert
  auto* convert = app.add_subcommand("convert", "Convert legacy-font bytes to Unicode");
  std::string conv_input = "-", conv_table, conv_output, conv_mode = "strict";
  convert->add_option("input", conv_input, "Legacy file, or - for stdin");
  convert->add_option("--table", conv_table, "Mapping table")->required();
  convert->add_option("--mode", conv_mode, "strict or lenient")
      ->check(CLI::IsMember({"strict", "lenient"}));
  convert->add_option("-o,--output", conv_output, "Output file (default stdout)");
  convert->callback([&] {
    action = [&] {
      const auto table = legacy::load_table(conv_table);
      const std::string bytes = detail::read_input(conv_input, in);
      const auto mode = conv_mode == "lenient" ? legacy::Mode::Lenient : legacy::Mode::Strict;
      const auto result = legacy::convert(bytes, table, mode);
      detail::emit(result.text, conv_output, out);
      err << "converted " << bytes.size() << " bytes, " << result.rules_fired << " rules fired, "
          << result.unmapped.size() << " unmapped\n";
      return kOk;
    };
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Add documents to a corpus store");
  std::string store_dir, source_name = "other", title;
  std::vector<std::string> ingest_files;
  ingest->add_option("files", ingest_files, "UTF-8 documents")->required();
  ingest->add_option("--store", store_dir, "Corpus store directory")->required();
  ingest->add_option("--source", source_name, "wikipedia, legacy_font or other")
      ->check(CLI::IsMember({"wikipedia", "legacy_font", "other"}));
  ingest->add_option("--title", title, "Title (default: file name)");
  ingest->callback([&] {
    action = [&] {
      corpus::Store store(store_dir);
      const auto source = *corpus::parse_source(source_name);
      for (const auto& file : ingest_files) {
        const std::string t = title.empty() ? std::filesystem::path(file).stem().string() : title;
        auto result = store.ingest(file, source, t);
        if (auto* dup = std::get_if<corpus::DuplicateOf>(&result)) {
          out << "duplicate\t" << dup->id << '\t' << file << '\n';
          continue;
        }
        const auto& rec = std::get<corpus::DocumentRecord>(result);
        out << "ingested\t" << rec.id << '\t' << rec.token_count << '\t' << rec.sentence_count << '\t'
            << rec.type_count << '\n';
        if (rec.token_count == 0) err << "warning: " << file << " has no words\n";
      }
      return kOk;
    };
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Corpus totals by source");
  bool verify = false;
  stats->add_option("--store", store_dir, "Corpus store directory")->required();
  stats->add_flag("--verify", verify, "Rehash and recount every stored file");
  stats->callback([&] {
    action = [&] {
      corpus::Store store(store_dir);
      const auto report = store.stats(verify);
      out << "source\tdocuments\ttokens\tsentences\ttypes\tempty\n";
      auto row = [&](std::string_view name, const corpus::Totals& t) {
        out << name << '\t' << t.documents << '\t' << t.tokens << '\t' << t.sentences << '\t'
            << t.types << '\t' << t.empty_documents << '\n';
      };
      for (auto s : {corpus::Source::Wikipedia, corpus::Source::LegacyFont, corpus::Source::Other}) {
        auto it = report.by_source.find(s);
        row(corpus::to_string(s), it == report.by_source.end() ? corpus::Totals{} : it->second);
      }
      row("total", report.totals);
      if (verify) err << "verified " << report.totals.documents << " documents\n";
      return kOk;
    };
  });

  // tokenize
  auto* tokenize = app.add_subcommand("tokenize", "One token per line: TEXT KIND START END");
  std::string tok_input = "-";
  tokenize->add_option("input", tok_input, "Text file, or - for stdin");
  tokenize->callback([&] {
    action = [&] {
      const std::string text = script::normalize(detail::read_input(tok_input, in));
      for (const auto& t : segment::tokenize(text))
        out << t.text << '\t' << segment::to_string(t.kind) << '\t' << t.start << '\t' << t.end << '\n';
      return kOk;
    };
  });

  // sentences
  auto* sentences = app.add_subcommand("sentences", "Sentence spans with token counts");
  std::string sent_input = "-";
  sentences->add_option("input", sent_input, "Text file, or - for stdin");
  sentences->callback([&] {
    action = [&] {
      const std::string text = script::normalize(detail::read_input(sent_input, in));
      out << "index\tstart\tend\ttokens\twords\n";
      std::size_t i = 0;
      for (const auto& s : segment::split_sentences(text))
        out << ++i << '\t' << s.start << '\t' << s.end << '\t' << s.tokens.size() << '\t'
            << s.word_count() << '\n';
      return kOk;
    };
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Morphological analyses: surface root features trace");
  std::string an_target;
  bool no_lexicon = false;
  analyze->add_option("target", an_target, "A word, a text file, or - for stdin")->required();
  analyze->add_flag("--no-lexicon", no_lexicon, "Also propose roots missing from the lexicon");
  analyze->callback([&] {
    action = [&] {
      const auto engine = paths.load();
      const morph::AnalyzeOptions opts{no_lexicon};
      const bool is_text = an_target == "-" || std::filesystem::is_regular_file(an_target);
      if (!is_text) {
        detail::print_analyses(an_target, engine.analyze(an_target, opts), true, out);
        return kOk;
      }
      const std::string text = script::normalize(detail::read_input(an_target, in));
      const auto tokens = segment::tokenize(text);
      const segment::Token* prev = nullptr;
      for (const auto& t : tokens) {
        if (t.kind != segment::TokenKind::Word) {
          prev = nullptr;
          continue;
        }
        if (prev != nullptr)
          detail::print_analyses(prev->text + " " + t.text, engine.analyze_pair(prev->text, t.text, opts),
                                 false, out);
        detail::print_analyses(t.text, engine.analyze(t.text, opts), true, out);
        prev = &t;
      }
      return kOk;
    };
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Build a surface form from a root and features");
  std::string gen_root, gen_features;
  bool gen_trace = false;
  generate->add_option("--root", gen_root, "Lemma")->required();
  generate->add_option("--features", gen_features, "e.g. verb,imperative,slot=1")->required();
  generate->add_flag("--trace", gen_trace, "Append the applied rule ids");
  generate->callback([&] {
    action = [&] {
      const auto engine = paths.load();
      std::optional<morph::Pos> only_pos;
      for (const auto& r : engine.lexicon().roots()) {
        if (r.lemma != script::normalize(gen_root)) continue;
        only_pos = only_pos && *only_pos != r.pos ? std::nullopt : std::optional(r.pos);
      }
      morph::FeatureBundle features;
      try {
        features = morph::parse_features(gen_features, only_pos);
      } catch (const morph::FeatureSpecError& e) {
        throw detail::UsageError(e.what());
      }
      const morph::Root* root = engine.lexicon().find(gen_root, features.pos);
      if (root == nullptr) throw morph::UnknownRoot(gen_root);
      const auto d = engine.derive(*root, features);
      out << d.surface;
      if (gen_trace) out << '\t' << detail::join(d.trace, ",");
      out << '\n';
      return kOk;
    };
  });

  // paradigm
  auto* paradigm = app.add_subcommand("paradigm", "Pronoun forms by person and number");
  int person = 0;
  std::string par_number, par_gender;
  paradigm->add_option("--person", person, "1, 2 or 3")->required();
  paradigm->add_option("--number", par_number, "sg or pl")->required()->check(CLI::IsMember({"sg", "pl"}));
  paradigm->add_option("--gender", par_gender, "masc or fem")->check(CLI::IsMember({"masc", "fem"}));
  paradigm->callback([&] {
    action = [&] {
      const auto engine = paths.load();
      std::optional<morph::Gender> gender;
      if (!par_gender.empty()) gender = morph::from_string<morph::Gender>(par_gender);
      const auto table = engine.pronoun_paradigm(
          person, par_number == "sg" ? morph::PronounNumber::Sg : morph::PronounNumber::Pl, gender);
      out << "root\toblique\tcase\tvariant\tsurface\ttrace\n";
      for (const auto& e : table.entries)
        for (const auto& f : e.forms)
          out << e.root.lemma << '\t' << e.root.oblique.value_or("-") << '\t'
              << morph::to_string(f.grammatical_case) << '\t' << f.variant << '\t' << f.surface << '\t'
              << (f.trace.empty() ? "-" : detail::join(f.trace, ",")) << '\n';
      return kOk;
    };
  });

  // freq
  auto* freq_cmd = app.add_subcommand("freq", "Ranked word frequencies");
  std::string freq_input = "-", freq_format = "tsv", freq_output;
  std::optional<std::size_t> top;
  bool from_tokens = false;
  freq_cmd->add_option("input", freq_input, "Text file, directory, or - for stdin");
  freq_cmd->add_option("--top", top, "Only the N most frequent words");
  freq_cmd->add_option("--export", freq_format, "tsv or rank_report")
      ->check(CLI::IsMember({"tsv", "rank_report"}));
  freq_cmd->add_option("-o,--output", freq_output, "Output file (default stdout)");
  freq_cmd->add_flag("--from-tokens", from_tokens, "Input is `tokenize` output");
  freq_cmd->callback([&] {
    action = [&] {
      auto count_one = [&](const std::string& data) {
        if (!from_tokens) return freq::count_text(data);
        freq::FrequencyTable t;
        std::istringstream lines(data);
        std::string line;
        while (std::getline(lines, line)) {
          auto tab = line.find('\t');
          if (tab == std::string::npos) continue;
          auto kind_end = line.find('\t', tab + 1);
          if (line.compare(tab + 1, kind_end - tab - 1, "Word") == 0)
            t.add(script::strip_joiners(line.substr(0, tab)));
        }
        return t;
      };
      freq::FrequencyTable table;
      if (freq_input != "-" && std::filesystem::is_directory(freq_input)) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::recursive_directory_iterator(freq_input))
          if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) table = freq::merge(table, count_one(io::read_file(f)));
      } else {
        table = count_one(detail::read_input(freq_input, in));
      }
      const auto format = freq_format == "rank_report" ? freq::Format::RankReport : freq::Format::Tsv;
      detail::emit(freq::render(table, format, top.value_or(table.type_count())), freq_output, out);
      return kOk;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const detail::UsageError& e) {
    err << "bpy: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "bpy: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace bpy::cli

#endif  // BPY_CLI_HPP
