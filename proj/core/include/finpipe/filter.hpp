// Copyright 2026 The finpipe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Rule-based document cleaning in the C4 tradition: drop boilerplate lines,
// drop repeated lines, normalize whitespace, then accept or reject the whole
// document.
//
// Rule names reported in rejections and FilterReport:
//   "min_doc_chars"  cleaned text shorter than FilterConfig::min_doc_chars
//   "cjk_ratio"      too few CJK ideographs among non-whitespace characters
//   "blocklist"      a banned substring occurs in the cleaned text

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "finpipe/aho_corasick.hpp"
#include "finpipe/records.hpp"

namespace finpipe {

struct FilterConfig {
  std::size_t min_doc_chars = 50;
  std::size_t min_line_chars = 5;
  bool require_terminal_punct = true;
  double cjk_ratio_min = 0.30;
  std::optional<std::filesystem::path> blocklist_path;
  // Loaded entries; filled from blocklist_path by load_blocklist().
  std::vector<std::string> blocklist;
  bool dedup_lines = true;

  // Throws ValidationError when a threshold is out of range.
  void validate() const;

  // Reads blocklist_path (one banned substring per line, UTF-8) into
  // blocklist. No-op when no path is set.
  void load_blocklist();

  // Every rule off: only whitespace and control normalization remain.
  static FilterConfig permissive();
};

// Characters accepted as sentence enders for the terminal punctuation rule.
bool is_terminal_punct(char32_t cp);

struct Rejection {
  std::string rule;

  bool operator==(const Rejection&) const = default;
};

struct CleanResult {
  std::variant<Document, Rejection> outcome;
  std::size_t lines_dropped = 0;

  bool accepted() const { return std::holds_alternative<Document>(outcome); }
  const Document& document() const { return std::get<Document>(outcome); }
  const Rejection& rejection() const { return std::get<Rejection>(outcome); }
};

struct FilterReport {
  std::size_t docs_in = 0;
  std::size_t docs_out = 0;
  std::map<std::string, std::size_t> docs_dropped_by_rule;
  std::size_t lines_dropped = 0;

  void add(const CleanResult& result);
  // Associative; lets per-shard reports be combined in any grouping.
  void merge(const FilterReport& other);
  std::size_t docs_dropped() const;

  bool operator==(const FilterReport&) const = default;
};

// Compiled form of a FilterConfig. Immutable after construction and safe to
// share between threads.
class DocumentFilter {
 public:
  explicit DocumentFilter(FilterConfig config);

  CleanResult clean(const Document& doc) const;
  const FilterConfig& config() const { return config_; }

 private:
  FilterConfig config_;
  AhoCorasick blocklist_;
  bool has_blocklist_ = false;
};

CleanResult clean_document(const Document& doc, const FilterConfig& config);

struct FilterOutput {
  std::vector<Document> documents;
  FilterReport report;
};

FilterOutput filter_stream(std::span<const Document> docs, const FilterConfig& config);

}  // namespace finpipe
