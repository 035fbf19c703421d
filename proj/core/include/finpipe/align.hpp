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

// Distant-supervision alignment: a sentence evidences a triple when both the
// head and the tail entity occur in it, compared after normalize_surface().
// Matching is plain substring containment (no word boundaries) and one
// automaton pass per sentence finds every entity of every triple.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finpipe/aho_corasick.hpp"
#include "finpipe/records.hpp"
#include "finpipe/segment.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

// Compatibility fold (full-width to half-width, Latin lower-casing) plus
// trimming of surrounding whitespace. CJK text passes through unchanged.
std::string normalize_surface(std::string_view s);

// The same per-character fold without trimming. Maps code point i of the
// input to code point i of the output, so offsets carry over unchanged.
std::u32string normalize_text(std::u32string_view s);

enum class EntityRole : std::uint8_t { head, tail };

struct RoleRef {
  std::uint32_t triple_id = 0;
  EntityRole role = EntityRole::head;

  bool operator==(const RoleRef&) const = default;
};

struct LexiconOptions {
  // Entities shorter than this (in code points, after normalization) are
  // left out of the lexicon. 0 or 1 keeps everything.
  std::size_t min_entity_chars = 2;
};

// Triple ids are positions in the sequence given to build().
class EntityLexicon {
 public:
  EntityLexicon() = default;

  // Triples that are invalid after normalization (an empty field or
  // head == tail) or that have an entity below the length threshold can
  // never align; skipped_triples() counts them.
  static EntityLexicon build(std::span<const KnowledgeTriple> triples,
                             const LexiconOptions& options = {});

  // Roles registered for a surface form (normalized before lookup).
  std::span<const RoleRef> roles(std::string_view surface) const;

  std::size_t pattern_count() const { return patterns_.size(); }
  std::size_t triple_count() const { return triple_patterns_.size(); }
  std::size_t skipped_triples() const { return skipped_; }
  const std::u32string& pattern(std::uint32_t id) const { return patterns_[id]; }

  // Calls visit(pattern_id, begin, end) for every entity occurrence in
  // already-normalized text, in increasing end order.
  template <class Visitor>
  void scan(std::u32string_view normalized, Visitor&& visit) const {
    automaton_.scan(normalized, [&](std::uint32_t id, std::size_t end) {
      visit(id, end - patterns_[id].size(), end);
    });
  }

  // Same over raw UTF-8, folding as it goes. Returns false on malformed
  // input, possibly after some occurrences were already visited.
  template <class Visitor>
  bool scan_utf8(std::string_view text, Visitor&& visit) const {
    auto emit = [&](std::uint32_t id, std::size_t end) {
      visit(id, end - patterns_[id].size(), end);
    };
    const auto* p = reinterpret_cast<const unsigned char*>(text.data());
    const auto* end = p + text.size();
    std::uint32_t state = 0;
    for (std::size_t i = 1; p < end; ++i) {
      char32_t cp;
      if (!unicode::next_code_point(p, end, cp)) return false;
      state = automaton_.advance(state, unicode::fold(cp));
      automaton_.report(state, i, emit);
    }
    return true;
  }

  const std::vector<RoleRef>& pattern_roles(std::uint32_t id) const { return roles_[id]; }

  struct TriplePatterns {
    std::uint32_t head = AhoCorasick::kNone;
    std::uint32_t tail = AhoCorasick::kNone;
  };
  const TriplePatterns& triple_patterns(std::size_t triple_id) const {
    return triple_patterns_[triple_id];
  }

 private:
  std::vector<std::u32string> patterns_;
  std::vector<std::vector<RoleRef>> roles_;
  std::vector<TriplePatterns> triple_patterns_;
  AhoCorasick automaton_;
  std::size_t skipped_ = 0;
};

// Validates the KnowledgeTriple invariants after normalization.
bool is_valid_triple(const KnowledgeTriple& triple);

std::optional<AlignedSentence> align_sentence(const Sentence& sentence,
                                              const EntityLexicon& lexicon);

std::vector<AlignedSentence> align_document(const Document& doc, const EntityLexicon& lexicon);

std::vector<AlignedSentence> align_corpus(std::span<const Document> docs,
                                          const EntityLexicon& lexicon);

}  // namespace finpipe
