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

// Knowledge-enhanced examples built from triple masking. A matched triple is
// prepended to its evidence sentence, one triple element is replaced by
// sentinel 0, and the sentence is span-corrupted with sentinels from 1 on:
//
//   input  = head SEP relation SEP tail SEP corrupted-sentence
//   target = <0> masked-element <1> span ... <k+1>
//
// where SEP is " [SEP] " by default and exactly one of head/relation/tail
// is rendered as <0>.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "finpipe/corruption.hpp"
#include "finpipe/records.hpp"
#include "finpipe/segment.hpp"

namespace finpipe {

enum class TripleElement : std::uint8_t { head = 0, relation = 1, tail = 2 };

std::string_view to_string(TripleElement element);

struct KetmConfig {
  std::string element_sep = "[SEP]";
  double sentence_mask_rate = 0.15;
  // Probability of masking head, relation, tail.
  std::array<double, 3> element_probs{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  // Span settings for the sentence part; its mask_rate is replaced by
  // sentence_mask_rate.
  CorruptionConfig corruption;

  void validate() const;
  // " [SEP] " for the default separator.
  std::string separator() const { return " " + element_sep + " "; }
  CorruptionConfig sentence_corruption() const;
};

TripleElement choose_element(const KetmConfig& config, Rng& rng);

// Deterministic rendering with the masked element and sentence spans fixed.
MaskedExample render_ketm_example(const KnowledgeTriple& triple, TripleElement masked,
                                  const TokenSeq& sentence, std::span<const Span> spans,
                                  const KetmConfig& config);

// Throws ValidationError when triple_id is not among aligned.triples.
MaskedExample build_ketm_example(const AlignedSentence& aligned, std::size_t triple_id,
                                 const KnowledgeTriple& triple, const KetmConfig& config,
                                 std::uint64_t seed, const Tokenizer& tokenizer = Tokenizer());

// Seed of the example for (sentence, triple) under a master seed.
std::uint64_t ketm_record_seed(std::uint64_t master_seed, const AlignedSentence& aligned,
                               std::size_t triple_id);

// One example per matched triple of `aligned`, in triple order. `triples`
// is indexed by triple id; unknown ids throw ValidationError.
std::vector<MaskedExample> build_ketm_examples(const AlignedSentence& aligned,
                                               std::span<const KnowledgeTriple> triples,
                                               const KetmConfig& config,
                                               std::uint64_t master_seed,
                                               const Tokenizer& tokenizer = Tokenizer());

std::vector<MaskedExample> build_ketm_stream(std::span<const AlignedSentence> aligned,
                                             std::span<const KnowledgeTriple> triples,
                                             const KetmConfig& config, std::uint64_t master_seed,
                                             const Tokenizer& tokenizer = Tokenizer());

// Splits a KETM input into its four regions (head, relation, tail,
// sentence). Throws ValidationError when the separators do not line up.
std::array<std::string, 4> split_ketm_input(std::string_view input, const KetmConfig& config);

}  // namespace finpipe
