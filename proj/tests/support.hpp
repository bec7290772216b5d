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

#ifndef BPY_TESTS_SUPPORT_HPP
#define BPY_TESTS_SUPPORT_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bpy/io.hpp"
#include "bpy/morph/engine.hpp"

namespace bpy::testing {

inline const std::filesystem::path kTestData = BPY_TEST_DATA;
inline const std::filesystem::path kShippedData = BPY_SHIPPED_DATA;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("bpy-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline const morph::Engine& shipped_engine() {
  static const morph::Engine engine(morph::load_ruleset(kShippedData / "rules.tsv"),
                                    morph::load_lexicon(kShippedData / "lexicon.tsv"));
  return engine;
}

inline void write(const std::filesystem::path& path, const std::string& data) {
  io::write_atomically(path, data);
}

struct Generated {
  morph::FeatureBundle features;
  std::string surface;
};

// Every feature bundle `engine` accepts for `root`, found by brute force:
// each optional dimension, each value, each slot the rules mention, and every
// variant index up to the number of rules for that value.
inline std::vector<Generated> enumerate_forms(const morph::Engine& engine, const morph::Root& root) {
  using namespace morph;
  std::map<std::pair<Dimension, int>, int> rule_count;
  std::map<int, std::set<int>> slots;
  for (const auto& r : engine.rules().rules()) {
    ++rule_count[{r.dimension, r.value}];
    if (r.slot) slots[r.value].insert(*r.slot);
  }
  auto bound = [&](Dimension d, int v) {
    auto it = rule_count.find({d, v});
    return it == rule_count.end() ? 0 : it->second;
  };

  std::vector<Generated> out;
  auto attempt = [&](const FeatureBundle& f) {
    try {
      out.push_back({f, engine.generate(root, f)});
    } catch (const IncompatibleFeatures&) {
    } catch (const MissingSlot&) {
    }
  };

  if (root.pos == Pos::Verb) {
    for (auto t : all_values<TenseMood>()) {
      std::vector<std::optional<int>> slot_choices;
      if (slots.contains(static_cast<int>(t)))
        for (int s : slots[static_cast<int>(t)]) slot_choices.emplace_back(s);
      else
        slot_choices.emplace_back(std::nullopt);
      for (auto slot : slot_choices)
        for (int v = 0; v < bound(Dimension::TenseMood, static_cast<int>(t)); ++v) {
          FeatureBundle f;
          f.pos = Pos::Verb;
          f.tense_mood = t;
          f.slot = slot;
          f.form_variant = v;
          attempt(f);
        }
    }
    return out;
  }

  std::vector<std::optional<Gender>> genders{std::nullopt};
  for (auto g : all_values<Gender>()) genders.emplace_back(g);
  std::vector<std::optional<Number>> numbers{std::nullopt};
  for (auto n : all_values<Number>()) numbers.emplace_back(n);
  std::vector<std::optional<Case>> cases{std::nullopt};
  for (auto c : all_values<Case>()) cases.emplace_back(c);

  for (auto g : genders)
    for (auto n : numbers)
      for (auto c : cases) {
        if (!g && !n && !c) continue;
        const int gv = g ? bound(Dimension::Gender, static_cast<int>(*g)) : 1;
        const int nv = n ? bound(Dimension::Number, static_cast<int>(*n)) : 1;
        const int cv = c ? bound(Dimension::Case, static_cast<int>(*c)) : 1;
        for (int a = 0; a < gv; ++a)
          for (int b = 0; b < nv; ++b)
            for (int d = 0; d < cv; ++d) {
              FeatureBundle f;
              f.pos = root.pos;
              f.gender = g;
              f.gender_variant = a;
              f.number = n;
              f.number_variant = b;
              f.grammatical_case = c;
              f.case_variant = d;
              attempt(f);
            }
      }
  return out;
}

}  // namespace bpy::testing

#endif  // BPY_TESTS_SUPPORT_HPP
