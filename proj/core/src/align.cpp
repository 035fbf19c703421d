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

#include "finpipe/align.hpp"

#include <algorithm>
#include <unordered_map>

#include "finpipe/unicode.hpp"

namespace finpipe {

namespace {

std::u32string normalize_cps(std::string_view s) {
  auto decoded = unicode::decode(s);
  if (!decoded) return {};
  std::u32string folded = normalize_text(*decoded);
  std::size_t b = 0;
  std::size_t e = folded.size();
  while (b < e && unicode::is_whitespace(folded[b])) ++b;
  while (e > b && unicode::is_whitespace(folded[e - 1])) --e;
  return folded.substr(b, e - b);
}

}  // namespace

std::u32string normalize_text(std::u32string_view s) {
  std::u32string out(s.size(), U'\0');
  std::transform(s.begin(), s.end(), out.begin(), unicode::fold);
  return out;
}

std::string normalize_surface(std::string_view s) { return unicode::encode(normalize_cps(s)); }

bool is_valid_triple(const KnowledgeTriple& triple) {
  const auto head = normalize_cps(triple.head);
  const auto tail = normalize_cps(triple.tail);
  return !head.empty() && !tail.empty() && !normalize_cps(triple.relation).empty() && head != tail;
}

EntityLexicon EntityLexicon::build(std::span<const KnowledgeTriple> triples,
                                   const LexiconOptions& options) {
  EntityLexicon lex;
  std::unordered_map<std::u32string, std::uint32_t> ids;
  auto intern = [&](std::u32string form) {
    auto [it, inserted] = ids.try_emplace(form, static_cast<std::uint32_t>(lex.patterns_.size()));
    if (inserted) {
      lex.patterns_.push_back(std::move(form));
      lex.roles_.emplace_back();
    }
    return it->second;
  };

  lex.triple_patterns_.resize(triples.size());
  for (std::size_t t = 0; t < triples.size(); ++t) {
    const auto& triple = triples[t];
    auto head = normalize_cps(triple.head);
    auto tail = normalize_cps(triple.tail);
    const bool valid = !head.empty() && !tail.empty() && head != tail &&
                       !normalize_cps(triple.relation).empty() &&
                       head.size() >= options.min_entity_chars &&
                       tail.size() >= options.min_entity_chars;
    if (!valid) {
      ++lex.skipped_;
      continue;
    }
    const auto id = static_cast<std::uint32_t>(t);
    const std::uint32_t h = intern(std::move(head));
    const std::uint32_t tl = intern(std::move(tail));
    lex.roles_[h].push_back({id, EntityRole::head});
    lex.roles_[tl].push_back({id, EntityRole::tail});
    lex.triple_patterns_[t] = {h, tl};
  }
  lex.automaton_ = AhoCorasick(lex.patterns_);
  return lex;
}

std::span<const RoleRef> EntityLexicon::roles(std::string_view surface) const {
  const auto id = automaton_.find_exact(normalize_cps(surface));
  if (id == AhoCorasick::kNone) return {};
  return roles_[id];
}

std::optional<AlignedSentence> align_sentence(const Sentence& sentence,
                                              const EntityLexicon& lexicon) {
  if (lexicon.pattern_count() == 0) return std::nullopt;
  // pattern id -> leftmost begin. Occurrences of one pattern arrive in
  // increasing end order, so the first one seen is the leftmost. The table
  // is per thread and reset through `seen` so a sentence costs O(hits).
  thread_local std::vector<std::size_t> leftmost;
  thread_local std::vector<std::uint32_t> seen;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  if (leftmost.size() < lexicon.pattern_count()) leftmost.resize(lexicon.pattern_count(), kUnseen);
  seen.clear();
  const bool ok = lexicon.scan_utf8(sentence.text, [&](std::uint32_t id, std::size_t begin, std::size_t) {
    if (leftmost[id] == kUnseen) {
      leftmost[id] = begin;
      seen.push_back(id);
    }
  });
  struct Reset {
    ~Reset() {
      for (std::uint32_t id : seen) leftmost[id] = kUnseen;
    }
  } reset;
  if (!ok || seen.size() < 2) return std::nullopt;

  AlignedSentence out;
  for (std::uint32_t id : seen) {
    for (const RoleRef& ref : lexicon.pattern_roles(id)) {
      if (ref.role != EntityRole::head) continue;
      const auto& tp = lexicon.triple_patterns(ref.triple_id);
      const std::size_t tb = leftmost[tp.tail];
      if (tb == kUnseen) continue;
      const std::size_t hb = leftmost[id];
      out.triples.push_back({ref.triple_id,
                             {hb, hb + lexicon.pattern(id).size()},
                             {tb, tb + lexicon.pattern(tp.tail).size()}});
    }
  }
  if (out.triples.empty()) return std::nullopt;
  std::sort(out.triples.begin(), out.triples.end(),
            [](const TripleMatch& a, const TripleMatch& b) { return a.triple_id < b.triple_id; });
  out.sentence = sentence.text;
  out.doc_id = sentence.doc_id;
  out.sent_index = sentence.sent_index;
  return out;
}

std::vector<AlignedSentence> align_document(const Document& doc, const EntityLexicon& lexicon) {
  std::vector<AlignedSentence> out;
  for (const auto& sentence : split_sentences(doc)) {
    if (auto aligned = align_sentence(sentence, lexicon)) out.push_back(std::move(*aligned));
  }
  return out;
}

std::vector<AlignedSentence> align_corpus(std::span<const Document> docs,
                                          const EntityLexicon& lexicon) {
  std::vector<AlignedSentence> out;
  for (const auto& doc : docs) {
    auto aligned = align_document(doc, lexicon);
    std::move(aligned.begin(), aligned.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace finpipe
