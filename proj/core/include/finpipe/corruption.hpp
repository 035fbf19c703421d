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

// T5-style span corruption.
//
// A sequence of n tokens gets exactly round(mask_rate * n) tokens masked,
// split into max(1, round(masked / mean_span_length)) contiguous spans.
// Span lengths are a uniformly random composition of the masked budget and
// the unmasked tokens are spread as a uniformly random composition into the
// gaps, with at least one unmasked token between neighbouring spans.
//
// Rendering, for spans s0..s(k-1) and sentinel markers <0>..<k>:
//   input  = source text with each span replaced by its sentinel
//   target = "<0> s0 <1> s1 ... <k>"   (single spaces between parts)
// Span text is the source slice from its first to its last token, so
// whitespace inside a span survives and no spaces are added to CJK text.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finpipe/records.hpp"
#include "finpipe/rng.hpp"
#include "finpipe/segment.hpp"

namespace finpipe {

struct CorruptionConfig {
  double mask_rate = 0.15;
  double mean_span_length = 3.0;
  // "{i}" is replaced by the sentinel index.
  std::string sentinel_format = "<extra_id_{i}>";
  // Size of the sentinel vocabulary: indices 0 .. max_sentinels-1, the
  // terminating sentinel included.
  std::size_t max_sentinels = 100;

  void validate() const;
  std::string sentinel(std::size_t index) const;
};

std::size_t masked_token_count(std::size_t n_tokens, double mask_rate);

std::vector<Span> sample_spans(std::size_t n_tokens, const CorruptionConfig& config, Rng& rng);

struct CorruptedText {
  std::string input;
  std::string target;
};

// `spans` are token ranges, ascending and non-overlapping. Sentinels are
// numbered from `first_sentinel`. Throws ValidationError when the sentinels
// needed exceed config.max_sentinels.
CorruptedText render_corruption(const TokenSeq& tokens, std::span<const Span> spans,
                                const CorruptionConfig& config, std::size_t first_sentinel = 0);

MaskedExample corrupt(const TokenSeq& tokens, const CorruptionConfig& config, std::uint64_t seed);

// Splices the target spans back at their sentinels and returns the original
// text. Throws ValidationError on any sentinel mismatch between the two.
std::string reconstruct_text(std::string_view input, std::string_view target,
                             const CorruptionConfig& config, std::size_t first_sentinel = 0);

std::vector<std::string> reconstruct(std::string_view input, std::string_view target,
                                     const CorruptionConfig& config,
                                     const Tokenizer& tokenizer = Tokenizer());

}  // namespace finpipe
