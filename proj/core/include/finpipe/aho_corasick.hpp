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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace finpipe {

// Multi-pattern matcher over code points. Small automata get a dense
// transition table; large ones fall back to sorted edge lists plus failure
// links, so memory stays linear in total pattern length.
class AhoCorasick {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  AhoCorasick();
  // Empty patterns are ignored. A pattern repeated later in the list is
  // reported under the id of its first occurrence.
  explicit AhoCorasick(const std::vector<std::u32string>& patterns);

  std::size_t pattern_count() const { return lengths_.size(); }
  std::size_t pattern_length(std::uint32_t id) const { return lengths_[id]; }
  std::size_t state_count() const { return fail_.size(); }
  bool dense() const { return !delta_.empty(); }

  // Calls visit(pattern_id, end) for every occurrence; `end` is exclusive.
  // Occurrences arrive in increasing end order.
  template <class Visitor>
  void scan(std::u32string_view text, Visitor&& visit) const {
    std::uint32_t state = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = advance(state, text[i]);
      report(state, i + 1, visit);
    }
  }

  // Streaming interface: start from state 0, advance() once per code point,
  // then report() the matches ending there.
  std::uint32_t advance(std::uint32_t state, char32_t cp) const { return step(state, symbol(cp)); }

  template <class Visitor>
  void report(std::uint32_t state, std::size_t end, Visitor& visit) const {
    std::uint32_t o = out_[state] != kNone ? state : dict_[state];
    while (o != kNone) {
      visit(out_[o], end);
      o = dict_[o];
    }
  }

  // Returns the id of an exactly matching pattern, or kNone.
  std::uint32_t find_exact(std::u32string_view pattern) const;

 private:
  std::uint32_t symbol(char32_t cp) const {
    if (cp < bmp_.size()) return bmp_[cp];
    if (cp < 0x10000) return 0;
    auto it = astral_.find(cp);
    return it == astral_.end() ? 0 : it->second;
  }

  std::uint32_t step(std::uint32_t state, std::uint32_t sym) const {
    if (!delta_.empty()) return delta_[std::size_t(state) * alphabet_ + sym];
    if (sym == 0) return 0;
    while (true) {
      const std::uint32_t next = child(state, sym);
      if (next != kNone) return next;
      if (state == 0) return 0;
      state = fail_[state];
    }
  }

  std::uint32_t child(std::uint32_t state, std::uint32_t sym) const;

  std::vector<std::uint32_t> bmp_;
  std::unordered_map<char32_t, std::uint32_t> astral_;
  std::uint32_t alphabet_ = 1;  // symbol 0 is "not in any pattern"

  std::vector<std::uint32_t> fail_;
  std::vector<std::uint32_t> out_;   // pattern ending at this state
  std::vector<std::uint32_t> dict_;  // nearest proper suffix state with output
  std::vector<std::uint32_t> edge_begin_;
  std::vector<std::uint32_t> edge_sym_;
  std::vector<std::uint32_t> edge_to_;
  std::vector<std::uint32_t> delta_;
  std::vector<std::uint32_t> lengths_;
};

}  // namespace finpipe
