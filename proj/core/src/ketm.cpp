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

#include "finpipe/ketm.hpp"

#include <algorithm>
#include <cmath>

#include "finpipe/errors.hpp"
#include "finpipe/rng.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

namespace {

std::string trimmed(std::string_view s) {
  auto cps = unicode::decode_or_throw(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && unicode::is_whitespace(cps[b])) ++b;
  while (e > b && unicode::is_whitespace(cps[e - 1])) --e;
  return unicode::encode(std::u32string_view(cps).substr(b, e - b));
}

}  // namespace

std::string_view to_string(TripleElement element) {
  switch (element) {
    case TripleElement::head: return "head";
    case TripleElement::relation: return "relation";
    case TripleElement::tail: return "tail";
  }
  return "head";
}

void KetmConfig::validate() const {
  if (element_sep.empty()) throw ValidationError("element_sep must be non-empty");
  double total = 0.0;
  for (double p : element_probs) {
    if (!(p >= 0.0)) throw ValidationError("element_probs must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("element_probs must sum to 1");
  sentence_corruption().validate();
}

CorruptionConfig KetmConfig::sentence_corruption() const {
  CorruptionConfig c = corruption;
  c.mask_rate = sentence_mask_rate;
  return c;
}

TripleElement choose_element(const KetmConfig& config, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (config.element_probs[i] <= 0.0) continue;
    last_positive = i;
    acc += config.element_probs[i];
    if (u < acc) return static_cast<TripleElement>(i);
  }
  return static_cast<TripleElement>(last_positive);
}

MaskedExample render_ketm_example(const KnowledgeTriple& triple, TripleElement masked,
                                  const TokenSeq& sentence, std::span<const Span> spans,
                                  const KetmConfig& config) {
  const CorruptionConfig cc = config.sentence_corruption();
  const std::array<std::string, 3> parts{trimmed(triple.head), trimmed(triple.relation),
                                         trimmed(triple.tail)};
  const auto masked_index = static_cast<std::size_t>(masked);
  const std::string sep = config.separator();
  const std::string mask = cc.sentinel(0);
  auto corrupted = render_corruption(sentence, spans, cc, 1);

  MaskedExample ex;
  ex.kind = ExampleKind::ketm;
  for (std::size_t i = 0; i < 3; ++i) {
    ex.input += i == masked_index ? mask : parts[i];
    ex.input += sep;
  }
  ex.input += corrupted.input;
  ex.target = mask + " " + parts[masked_index] + " " + corrupted.target;
  return ex;
}

MaskedExample build_ketm_example(const AlignedSentence& aligned, std::size_t triple_id,
                                 const KnowledgeTriple& triple, const KetmConfig& config,
                                 std::uint64_t seed, const Tokenizer& tokenizer) {
  const bool present =
      std::any_of(aligned.triples.begin(), aligned.triples.end(),
                  [&](const TripleMatch& m) { return m.triple_id == triple_id; });
  if (!present) {
    throw ValidationError("triple " + std::to_string(triple_id) +
                          " is not aligned to sentence " + std::to_string(aligned.sent_index) +
                          " of document '" + aligned.doc_id + "'");
  }
  Rng rng(seed);
  const TripleElement element = choose_element(config, rng);
  Rng sentence_rng(rng.next());
  const TokenSeq tokens = tokenizer.tokenize(aligned.sentence);
  const auto spans = sample_spans(tokens.size(), config.sentence_corruption(), sentence_rng);
  MaskedExample ex = render_ketm_example(triple, element, tokens, spans, config);
  ex.doc_id = aligned.doc_id;
  ex.seed = seed;
  return ex;
}

std::uint64_t ketm_record_seed(std::uint64_t master_seed, const AlignedSentence& aligned,
                               std::size_t triple_id) {
  return derive_seed(master_seed, {"ketm", aligned.doc_id, aligned.sent_index, triple_id});
}

std::vector<MaskedExample> build_ketm_examples(const AlignedSentence& aligned,
                                               std::span<const KnowledgeTriple> triples,
                                               const KetmConfig& config,
                                               std::uint64_t master_seed,
                                               const Tokenizer& tokenizer) {
  std::vector<MaskedExample> out;
  out.reserve(aligned.triples.size());
  for (const auto& match : aligned.triples) {
    if (match.triple_id >= triples.size()) {
      throw ValidationError("unknown triple id " + std::to_string(match.triple_id));
    }
    out.push_back(build_ketm_example(aligned, match.triple_id, triples[match.triple_id], config,
                                     ketm_record_seed(master_seed, aligned, match.triple_id),
                                     tokenizer));
  }
  return out;
}

std::vector<MaskedExample> build_ketm_stream(std::span<const AlignedSentence> aligned,
                                             std::span<const KnowledgeTriple> triples,
                                             const KetmConfig& config, std::uint64_t master_seed,
                                             const Tokenizer& tokenizer) {
  config.validate();
  std::vector<MaskedExample> out;
  for (const auto& a : aligned) {
    auto examples = build_ketm_examples(a, triples, config, master_seed, tokenizer);
    std::move(examples.begin(), examples.end(), std::back_inserter(out));
  }
  return out;
}

std::array<std::string, 4> split_ketm_input(std::string_view input, const KetmConfig& config) {
  const std::string sep = config.separator();
  std::array<std::string, 4> regions;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t at = input.find(sep, cursor);
    if (at == std::string_view::npos) {
      throw ValidationError("KETM input is missing separator " + std::to_string(i + 1));
    }
    regions[i] = std::string(input.substr(cursor, at - cursor));
    cursor = at + sep.size();
  }
  regions[3] = std::string(input.substr(cursor));
  return regions;
}

}  // namespace finpipe
