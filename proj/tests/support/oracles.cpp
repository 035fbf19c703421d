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

#include "oracles.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "finpipe/align.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe::testing {

namespace {

std::u32string norm(std::string_view s) {
  std::u32string t = normalize_text(unicode::decode_or_throw(s));
  while (!t.empty() && unicode::is_whitespace(t.front())) t.erase(t.begin());
  while (!t.empty() && unicode::is_whitespace(t.back())) t.pop_back();
  return t;
}

}  // namespace

std::vector<AlignedSentence> brute_force_align(const std::vector<Sentence>& sentences,
                                               const std::vector<KnowledgeTriple>& triples,
                                               std::size_t min_entity_chars) {
  struct Entry {
    std::u32string head, tail;
    bool usable;
  };
  std::vector<Entry> entries;
  for (const auto& t : triples) {
    Entry e{norm(t.head), norm(t.tail), false};
    e.usable = !e.head.empty() && !e.tail.empty() && e.head != e.tail &&
               !norm(t.relation).empty() && e.head.size() >= min_entity_chars &&
               e.tail.size() >= min_entity_chars;
    entries.push_back(std::move(e));
  }
  std::vector<AlignedSentence> out;
  for (const auto& s : sentences) {
    const std::u32string text = normalize_text(unicode::decode_or_throw(s.text));
    AlignedSentence a{s.text, s.doc_id, s.sent_index, {}};
    for (std::size_t id = 0; id < entries.size(); ++id) {
      const auto& e = entries[id];
      if (!e.usable) continue;
      const auto h = text.find(e.head);
      const auto t = text.find(e.tail);
      if (h == std::u32string::npos || t == std::u32string::npos) continue;
      a.triples.push_back({id, {h, h + e.head.size()}, {t, t + e.tail.size()}});
    }
    if (!a.triples.empty()) out.push_back(std::move(a));
  }
  return out;
}

std::optional<std::string> reference_clean(const std::string& text, const FilterConfig& cfg,
                                           std::string* rejected_rule) {
  const std::u32string cps = unicode::decode_or_throw(text);
  std::vector<std::u32string> raw_lines(1);
  for (char32_t c : cps) {
    if (c == U'\n') {
      raw_lines.emplace_back();
    } else {
      raw_lines.back().push_back(c);
    }
  }
  std::vector<std::u32string> kept;
  for (const auto& raw : raw_lines) {
    // whitespace to spaces, controls dropped
    std::u32string s;
    for (char32_t c : raw) {
      if (unicode::is_whitespace(c)) {
        s.push_back(U' ');
      } else if (!unicode::is_control(c)) {
        s.push_back(c);
      }
    }
    // collapse and trim
    std::u32string t;
    for (char32_t c : s) {
      if (c == U' ' && (t.empty() || t.back() == U' ')) continue;
      t.push_back(c);
    }
    if (!t.empty() && t.back() == U' ') t.pop_back();
    if (t.empty()) continue;
    if (t.size() < cfg.min_line_chars) continue;
    if (cfg.require_terminal_punct && !is_terminal_punct(t.back())) continue;
    if (cfg.dedup_lines && std::find(kept.begin(), kept.end(), t) != kept.end()) continue;
    kept.push_back(t);
  }
  std::u32string joined;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (i) joined.push_back(U'\n');
    joined += kept[i];
  }
  auto reject = [&](const char* rule) -> std::optional<std::string> {
    if (rejected_rule) *rejected_rule = rule;
    return std::nullopt;
  };
  if (joined.size() < cfg.min_doc_chars) return reject("min_doc_chars");
  std::size_t visible = 0;
  std::size_t cjk = 0;
  for (char32_t c : joined) {
    if (unicode::is_whitespace(c)) continue;
    ++visible;
    cjk += unicode::is_cjk_ideograph(c) ? 1 : 0;
  }
  const double ratio = visible ? double(cjk) / double(visible) : 0.0;
  if (ratio < cfg.cjk_ratio_min) return reject("cjk_ratio");
  for (const auto& banned : cfg.blocklist) {
    const auto b = unicode::decode_or_throw(banned);
    if (!b.empty() && joined.find(b) != std::u32string::npos) return reject("blocklist");
  }
  return unicode::encode(joined);
}

std::size_t brute_force_lcs(std::u32string_view a, std::u32string_view b) {
  if (a.size() > b.size()) std::swap(a, b);
  if (a.size() > 20) throw std::invalid_argument("brute_force_lcs: input too long");
  std::size_t best = 0;
  const std::uint32_t subsets = 1u << a.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    const auto len = static_cast<std::size_t>(__builtin_popcount(mask));
    if (len <= best) continue;
    // Is the masked subsequence of a a subsequence of b?
    std::size_t j = 0;
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      while (j < b.size() && b[j] != a[i]) ++j;
      if (j == b.size()) ok = false;
      else ++j;
    }
    if (ok) best = len;
  }
  return best;
}

double reference_rouge_n(std::u32string_view pred, std::u32string_view gold, std::size_t n) {
  std::map<std::u32string, int> p;
  std::map<std::u32string, int> g;
  for (std::size_t i = 0; i + n <= pred.size(); ++i) ++p[std::u32string(pred.substr(i, n))];
  for (std::size_t i = 0; i + n <= gold.size(); ++i) ++g[std::u32string(gold.substr(i, n))];
  int np = 0, ng = 0, hit = 0;
  for (const auto& [k, v] : p) np += v;
  for (const auto& [k, v] : g) ng += v;
  if (np == 0 && ng == 0) return pred == gold ? 1.0 : 0.0;
  for (const auto& [k, v] : p) {
    auto it = g.find(k);
    if (it != g.end()) hit += std::min(v, it->second);
  }
  if (hit == 0) return 0.0;
  const double prec = double(hit) / np;
  const double rec = double(hit) / ng;
  return 2 * prec * rec / (prec + rec);
}

double reference_char_f1(std::u32string_view pred, std::u32string_view gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  std::map<char32_t, int> p;
  std::map<char32_t, int> g;
  for (char32_t c : pred) ++p[c];
  for (char32_t c : gold) ++g[c];
  int hit = 0;
  for (const auto& [k, v] : p) {
    auto it = g.find(k);
    if (it != g.end()) hit += std::min(v, it->second);
  }
  if (hit == 0) return 0.0;
  const double prec = double(hit) / double(pred.size());
  const double rec = double(hit) / double(gold.size());
  return 2 * prec * rec / (prec + rec);
}

std::uint64_t TextGen::uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
}

bool TextGen::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

char32_t TextGen::cjk() { return static_cast<char32_t>(uniform(0x4E00, 0x4E00 + 400)); }

std::u32string TextGen::cjk_string(std::size_t n) {
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(cjk());
  return s;
}

std::u32string TextGen::noisy_line(std::size_t n) {
  static const std::u32string punct = U"。！？；…!?;.，,";
  static const std::u32string spaces = U" \t　 ";
  std::u32string s;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = uniform(0, 99);
    if (r < 60) {
      s.push_back(cjk());
    } else if (r < 72) {
      s.push_back(static_cast<char32_t>(uniform('a', 'z')));
    } else if (r < 78) {
      s.push_back(static_cast<char32_t>(uniform('0', '9')));
    } else if (r < 86) {
      s.push_back(punct[uniform(0, punct.size() - 1)]);
    } else if (r < 97) {
      s.push_back(spaces[uniform(0, spaces.size() - 1)]);
    } else if (r < 98) {
      s.push_back(static_cast<char32_t>(uniform(1, 8)));  // C0 control
    } else {
      s.push_back(static_cast<char32_t>(uniform(0xFF21, 0xFF3A)));  // full-width capital
    }
  }
  return s;
}

std::string TextGen::document_text(std::size_t lines) {
  std::vector<std::u32string> pool;
  std::u32string text;
  for (std::size_t i = 0; i < lines; ++i) {
    std::u32string line;
    if (!pool.empty() && chance(0.15)) {
      line = pool[uniform(0, pool.size() - 1)];
    } else {
      line = noisy_line(uniform(0, 40));
      if (chance(0.6)) line.push_back(U'。');
      pool.push_back(line);
    }
    if (i) text.push_back(U'\n');
    text += line;
  }
  return unicode::encode(text);
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  for (;;) {
    std::ostringstream name;
    name << "finpipe-test-" << ::getpid() << "-" << counter++;
    const auto p = base / name.str();
    if (std::filesystem::create_directory(p)) {
      root_ = p.string();
      break;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(root_, ec);
}

std::string TempDir::path(std::string_view name) const {
  return (std::filesystem::path(root_) / name).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace finpipe::testing
