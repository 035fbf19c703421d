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

#include "finpipe/records.hpp"

#include <array>
#include <utility>

#include "finpipe/errors.hpp"
#include "json.hpp"

namespace finpipe {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::array<std::pair<Source, std::string_view>, 4> kSourceNames{{
    {Source::announcement, "announcement"},
    {Source::report, "report"},
    {Source::news, "news"},
    {Source::social, "social"},
}};

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

json parse_object(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed record: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("malformed record: expected a JSON object");
  return j;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(std::string("missing field ") + name);
  return *it;
}

std::string string_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_string()) throw ValidationError(std::string("field ") + name + " must be a string");
  return v.get<std::string>();
}

std::size_t index_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_unsigned()) {
    throw ValidationError(std::string("field ") + name + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Span span_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() ||
      !v[1].is_number_unsigned()) {
    throw ValidationError(std::string("field ") + name + " must be [begin, end]");
  }
  Span s{v[0].get<std::size_t>(), v[1].get<std::size_t>()};
  if (s.begin > s.end) throw ValidationError(std::string("field ") + name + " has begin > end");
  return s;
}

std::string_view trim_tsv(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string_view to_string(Source source) {
  for (const auto& [value, name] : kSourceNames) {
    if (value == source) return name;
  }
  return "news";
}

Source parse_source(std::string_view name) {
  for (const auto& [value, text] : kSourceNames) {
    if (text == name) return value;
  }
  throw ValidationError("unknown source '" + std::string(name) +
                        "' (expected announcement, report, news or social)");
}

std::string_view to_string(ExampleKind kind) {
  return kind == ExampleKind::ketm ? "ketm" : "span_corruption";
}

ExampleKind parse_example_kind(std::string_view name) {
  if (name == "span_corruption") return ExampleKind::span_corruption;
  if (name == "ketm") return ExampleKind::ketm;
  throw ValidationError("unknown example kind '" + std::string(name) + "'");
}

std::string serialize(const Document& doc) {
  ordered_json j;
  j["id"] = doc.id;
  j["source"] = to_string(doc.source);
  j["text"] = doc.text;
  j["meta"] = ordered_json::object();
  for (const auto& [k, v] : doc.meta) j["meta"][k] = v;
  return dump(j);
}

std::string serialize(const KnowledgeTriple& triple) {
  ordered_json j;
  j["head"] = triple.head;
  j["relation"] = triple.relation;
  j["tail"] = triple.tail;
  return dump(j);
}

std::string serialize(const MaskedExample& example) {
  ordered_json j;
  j["input"] = example.input;
  j["target"] = example.target;
  j["doc_id"] = example.doc_id;
  j["kind"] = to_string(example.kind);
  j["seed"] = example.seed;
  return dump(j);
}

std::string serialize(const AlignedSentence& aligned) {
  ordered_json j;
  j["sentence"] = aligned.sentence;
  j["doc_id"] = aligned.doc_id;
  j["sent_index"] = aligned.sent_index;
  auto triples = ordered_json::array();
  for (const auto& m : aligned.triples) {
    ordered_json t;
    t["triple_id"] = m.triple_id;
    t["head_span"] = {m.head.begin, m.head.end};
    t["tail_span"] = {m.tail.begin, m.tail.end};
    triples.push_back(std::move(t));
  }
  j["triples"] = std::move(triples);
  return dump(j);
}

void deserialize(std::string_view line, Document& out) {
  const json j = parse_object(line);
  out.id = string_field(j, "id");
  if (out.id.empty()) throw ValidationError("field id must be non-empty");
  out.source = parse_source(string_field(j, "source"));
  out.text = string_field(j, "text");
  if (out.text.find('\0') != std::string::npos) {
    throw ValidationError("document '" + out.id + "': text contains NUL");
  }
  out.meta.clear();
  if (auto it = j.find("meta"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ValidationError("field meta must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw ValidationError("meta value for '" + k + "' must be a string");
      out.meta.emplace(k, v.get<std::string>());
    }
  }
}

void deserialize(std::string_view line, KnowledgeTriple& out) {
  std::size_t first = line.find_first_not_of(" \t");
  if (first != std::string_view::npos && line[first] == '{') {
    const json j = parse_object(line);
    out.head = string_field(j, "head");
    out.relation = string_field(j, "relation");
    out.tail = string_field(j, "tail");
    return;
  }
  // Tab-separated "head<TAB>relation<TAB>tail", the common KG dump layout.
  const std::size_t t1 = line.find('\t');
  const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
  if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos) {
    throw ValidationError("malformed triple: expected JSON object or three tab-separated fields");
  }
  out.head = std::string(trim_tsv(line.substr(0, t1)));
  out.relation = std::string(trim_tsv(line.substr(t1 + 1, t2 - t1 - 1)));
  out.tail = std::string(trim_tsv(line.substr(t2 + 1)));
}

void deserialize(std::string_view line, MaskedExample& out) {
  const json j = parse_object(line);
  out.input = string_field(j, "input");
  out.target = string_field(j, "target");
  out.doc_id = string_field(j, "doc_id");
  out.kind = parse_example_kind(string_field(j, "kind"));
  const json& seed = field(j, "seed");
  if (!seed.is_number_unsigned()) throw ValidationError("field seed must be an unsigned integer");
  out.seed = seed.get<std::uint64_t>();
}

void deserialize(std::string_view line, AlignedSentence& out) {
  const json j = parse_object(line);
  out.sentence = string_field(j, "sentence");
  out.doc_id = string_field(j, "doc_id");
  out.sent_index = index_field(j, "sent_index");
  const json& triples = field(j, "triples");
  if (!triples.is_array()) throw ValidationError("field triples must be an array");
  if (triples.empty()) throw ValidationError("field triples must be non-empty");
  out.triples.clear();
  out.triples.reserve(triples.size());
  for (const auto& t : triples) {
    if (!t.is_object()) throw ValidationError("triples entries must be objects");
    out.triples.push_back(
        {index_field(t, "triple_id"), span_field(t, "head_span"), span_field(t, "tail_span")});
  }
}

}  // namespace finpipe
