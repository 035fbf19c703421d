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

#include "finpipe/filter.hpp"

#include <fstream>
#include <numeric>
#include <unordered_set>

#include "finpipe/errors.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

namespace {

// Splits into lines, strips control characters and collapses each
// whitespace run to one space. Lines come back trimmed.
std::vector<std::u32string> normalized_lines(std::u32string_view text) {
  std::vector<std::u32string> lines;
  std::u32string line;
  bool pending_space = false;
  for (char32_t cp : text) {
    if (cp == U'\n') {
      lines.push_back(std::move(line));
      line.clear();
      pending_space = false;
    } else if (unicode::is_whitespace(cp)) {
      pending_space = !line.empty();
    } else if (unicode::is_control(cp)) {
      continue;
    } else {
      if (pending_space) line.push_back(U' ');
      pending_space = false;
      line.push_back(cp);
    }
  }
  lines.push_back(std::move(line));
  return lines;
}

double cjk_ratio(std::u32string_view text) {
  std::size_t visible = 0;
  std::size_t cjk = 0;
  for (char32_t cp : text) {
    if (unicode::is_whitespace(cp)) continue;
    ++visible;
    if (unicode::is_cjk_ideograph(cp)) ++cjk;
  }
  return visible == 0 ? 0.0 : static_cast<double>(cjk) / static_cast<double>(visible);
}

}  // namespace

bool is_terminal_punct(char32_t cp) {
  switch (cp) {
    case U'。':
    case U'！':
    case U'？':
    case U'；':
    case U'…':
    case U'!':
    case U'?':
    case U';':
    case U'.':
      return true;
    default:
      return false;
  }
}

void FilterConfig::validate() const {
  if (!(cjk_ratio_min >= 0.0 && cjk_ratio_min <= 1.0)) {
    throw ValidationError("cjk_ratio_min must be in [0, 1]");
  }
}

void FilterConfig::load_blocklist() {
  if (!blocklist_path) return;
  std::ifstream in(*blocklist_path, std::ios::binary);
  if (!in) throw IoError("cannot open blocklist '" + blocklist_path->string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!unicode::is_valid_utf8(line)) {
      throw ValidationError("blocklist '" + blocklist_path->string() + "' line " +
                            std::to_string(line_no) + ": invalid UTF-8");
    }
    blocklist.push_back(line);
  }
}

FilterConfig FilterConfig::permissive() {
  FilterConfig cfg;
  cfg.min_doc_chars = 0;
  cfg.min_line_chars = 0;
  cfg.require_terminal_punct = false;
  cfg.cjk_ratio_min = 0.0;
  cfg.dedup_lines = false;
  return cfg;
}

void FilterReport::add(const CleanResult& result) {
  ++docs_in;
  lines_dropped += result.lines_dropped;
  if (result.accepted()) {
    ++docs_out;
  } else {
    ++docs_dropped_by_rule[result.rejection().rule];
  }
}

void FilterReport::merge(const FilterReport& other) {
  docs_in += other.docs_in;
  docs_out += other.docs_out;
  lines_dropped += other.lines_dropped;
  for (const auto& [rule, n] : other.docs_dropped_by_rule) docs_dropped_by_rule[rule] += n;
}

std::size_t FilterReport::docs_dropped() const {
  std::size_t total = 0;
  for (const auto& [rule, n] : docs_dropped_by_rule) total += n;
  return total;
}

DocumentFilter::DocumentFilter(FilterConfig config) : config_(std::move(config)) {
  config_.validate();
  std::vector<std::u32string> patterns;
  for (const auto& banned : config_.blocklist) {
    auto decoded = unicode::decode_or_throw(banned);
    if (!decoded.empty()) patterns.push_back(std::move(decoded));
  }
  has_blocklist_ = !patterns.empty();
  if (has_blocklist_) blocklist_ = AhoCorasick(patterns);
}

CleanResult DocumentFilter::clean(const Document& doc) const {
  CleanResult result;
  auto text = unicode::decode(doc.text);
  if (!text) throw ValidationError("document '" + doc.id + "': invalid UTF-8");

  std::unordered_set<std::u32string> seen;
  std::u32string cleaned;
  cleaned.reserve(text->size());
  bool first = true;
  for (auto& line : normalized_lines(*text)) {
    if (line.empty()) continue;
    bool keep = line.size() >= config_.min_line_chars &&
                (!config_.require_terminal_punct || is_terminal_punct(line.back()));
    if (keep && config_.dedup_lines) keep = seen.insert(line).second;
    if (!keep) {
      ++result.lines_dropped;
      continue;
    }
    if (!first) cleaned.push_back(U'\n');
    cleaned += line;
    first = false;
  }

  if (cleaned.size() < config_.min_doc_chars) {
    result.outcome = Rejection{"min_doc_chars"};
  } else if (cjk_ratio(cleaned) < config_.cjk_ratio_min) {
    result.outcome = Rejection{"cjk_ratio"};
  } else {
    bool banned = false;
    if (has_blocklist_) blocklist_.scan(cleaned, [&](std::uint32_t, std::size_t) { banned = true; });
    if (banned) {
      result.outcome = Rejection{"blocklist"};
    } else {
      Document out = doc;
      out.text = unicode::encode(cleaned);
      result.outcome = std::move(out);
    }
  }
  return result;
}

CleanResult clean_document(const Document& doc, const FilterConfig& config) {
  return DocumentFilter(config).clean(doc);
}

FilterOutput filter_stream(std::span<const Document> docs, const FilterConfig& config) {
  const DocumentFilter filter(config);
  FilterOutput out;
  for (const auto& doc : docs) {
    auto result = filter.clean(doc);
    out.report.add(result);
    if (result.accepted()) out.documents.push_back(std::move(std::get<Document>(result.outcome)));
  }
  return out;
}

}  // namespace finpipe
