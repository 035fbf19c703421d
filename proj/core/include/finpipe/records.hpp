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

// Record types shared by every pipeline stage, and their canonical
// one-line JSON encodings.
//
//   Document         {"id","source","text","meta"}
//   KnowledgeTriple  {"head","relation","tail"}
//   MaskedExample    {"input","target","doc_id","kind","seed"}
//   AlignedSentence  {"sentence","doc_id","sent_index","triples":[
//                       {"triple_id","head_span":[b,e],"tail_span":[b,e]}]}
//
// Serialization is canonical: keys are always written in the order above
// and non-ASCII text is emitted as raw UTF-8.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace finpipe {

enum class Source { announcement, report, news, social };

std::string_view to_string(Source source);
// Throws ValidationError for unknown names.
Source parse_source(std::string_view name);

struct Document {
  std::string id;
  Source source = Source::news;
  std::string text;
  std::map<std::string, std::string> meta;

  bool operator==(const Document&) const = default;
};

struct KnowledgeTriple {
  std::string head;
  std::string relation;
  std::string tail;

  bool operator==(const KnowledgeTriple&) const = default;
};

enum class ExampleKind { span_corruption, ketm };

std::string_view to_string(ExampleKind kind);
ExampleKind parse_example_kind(std::string_view name);

struct MaskedExample {
  std::string input;
  std::string target;
  std::string doc_id;
  ExampleKind kind = ExampleKind::span_corruption;
  std::uint64_t seed = 0;

  bool operator==(const MaskedExample&) const = default;
};

// Half-open [begin, end) range. Units depend on context: code points for
// text spans, token indices for corruption spans.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
  auto operator<=>(const Span&) const = default;
};

struct TripleMatch {
  std::size_t triple_id = 0;
  Span head;
  Span tail;

  bool operator==(const TripleMatch&) const = default;
  auto operator<=>(const TripleMatch&) const = default;
};

struct AlignedSentence {
  std::string sentence;
  std::string doc_id;
  std::size_t sent_index = 0;
  std::vector<TripleMatch> triples;

  bool operator==(const AlignedSentence&) const = default;
};

// One-line encodings, without the trailing newline.
std::string serialize(const Document& doc);
std::string serialize(const KnowledgeTriple& triple);
std::string serialize(const MaskedExample& example);
std::string serialize(const AlignedSentence& aligned);

// Parse one line. Errors are ValidationError with a message naming the
// offending field, e.g. "missing field text"; the readers prefix the line.
void deserialize(std::string_view line, Document& out);
void deserialize(std::string_view line, KnowledgeTriple& out);
void deserialize(std::string_view line, MaskedExample& out);
void deserialize(std::string_view line, AlignedSentence& out);

template <class Record>
Record deserialize(std::string_view line) {
  Record record;
  deserialize(line, record);
  return record;
}

}  // namespace finpipe
