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

#include "finpipe/aho_corasick.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace finpipe {

namespace {

// Dense tables above this many cells (4 bytes each) use sparse edges.
constexpr std::size_t kDenseCellLimit = std::size_t(1) << 22;

}  // namespace

AhoCorasick::AhoCorasick() : fail_{0}, out_{kNone}, dict_{kNone}, edge_begin_{0, 0} {}

AhoCorasick::AhoCorasick(const std::vector<std::u32string>& patterns) {
  bool need_bmp = false;
  for (const auto& p : patterns) {
    for (char32_t cp : p) {
      if (cp < 0x10000) {
        need_bmp = true;
      }
    }
  }
  if (need_bmp) bmp_.assign(0x10000, 0);
  auto intern = [&](char32_t cp) -> std::uint32_t {
    if (cp < 0x10000) {
      if (bmp_[cp] == 0) bmp_[cp] = alphabet_++;
      return bmp_[cp];
    }
    auto [it, inserted] = astral_.try_emplace(cp, alphabet_);
    if (inserted) ++alphabet_;
    return it->second;
  };

  // Trie with per-node sorted child lists.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> children(1);
  out_.assign(1, kNone);
  lengths_.reserve(patterns.size());
  for (const auto& p : patterns) {
    const auto id = static_cast<std::uint32_t>(lengths_.size());
    lengths_.push_back(static_cast<std::uint32_t>(p.size()));
    if (p.empty()) continue;
    std::uint32_t node = 0;
    for (char32_t cp : p) {
      const std::uint32_t sym = intern(cp);
      auto& kids = children[node];
      auto it = std::lower_bound(kids.begin(), kids.end(), std::make_pair(sym, 0u),
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      if (it != kids.end() && it->first == sym) {
        node = it->second;
      } else {
        const auto fresh = static_cast<std::uint32_t>(children.size());
        kids.insert(it, {sym, fresh});
        children.emplace_back();
        out_.push_back(kNone);
        node = fresh;
      }
    }
    if (out_[node] == kNone) out_[node] = id;
  }

  const std::size_t n = children.size();
  edge_begin_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    edge_begin_[i + 1] = edge_begin_[i] + static_cast<std::uint32_t>(children[i].size());
  }
  edge_sym_.reserve(edge_begin_[n]);
  edge_to_.reserve(edge_begin_[n]);
  for (const auto& kids : children) {
    for (const auto& [sym, to] : kids) {
      edge_sym_.push_back(sym);
      edge_to_.push_back(to);
    }
  }

  fail_.assign(n, 0);
  dict_.assign(n, kNone);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  std::deque<std::uint32_t> queue;
  for (const auto& [sym, to] : children[0]) queue.push_back(to);
  while (!queue.empty()) {
    const std::uint32_t u = queue.front();
    queue.pop_front();
    order.push_back(u);
    for (const auto& [sym, v] : children[u]) {
      std::uint32_t f = fail_[u];
      std::uint32_t target = kNone;
      while (true) {
        target = child(f, sym);
        if (target != kNone || f == 0) break;
        f = fail_[f];
      }
      fail_[v] = (target == kNone || target == v) ? 0 : target;
      dict_[v] = out_[fail_[v]] != kNone ? fail_[v] : dict_[fail_[v]];
      queue.push_back(v);
    }
  }

  if (n * alphabet_ <= kDenseCellLimit) {
    delta_.assign(n * alphabet_, 0);
    for (const auto& [sym, to] : children[0]) delta_[sym] = to;
    for (std::uint32_t u : order) {
      const std::size_t row = std::size_t(u) * alphabet_;
      const std::size_t frow = std::size_t(fail_[u]) * alphabet_;
      std::copy_n(delta_.begin() + frow, alphabet_, delta_.begin() + row);
      for (const auto& [sym, to] : children[u]) delta_[row + sym] = to;
    }
  }
}

std::uint32_t AhoCorasick::child(std::uint32_t state, std::uint32_t sym) const {
  const auto first = edge_sym_.begin() + edge_begin_[state];
  const auto last = edge_sym_.begin() + edge_begin_[state + 1];
  const auto it = std::lower_bound(first, last, sym);
  if (it == last || *it != sym) return kNone;
  return edge_to_[static_cast<std::size_t>(it - edge_sym_.begin())];
}

std::uint32_t AhoCorasick::find_exact(std::u32string_view pattern) const {
  if (pattern.empty()) return kNone;
  std::uint32_t node = 0;
  for (char32_t cp : pattern) {
    const std::uint32_t sym = symbol(cp);
    if (sym == 0) return kNone;
    node = child(node, sym);
    if (node == kNone) return kNone;
  }
  return out_[node];
}

}  // namespace finpipe
