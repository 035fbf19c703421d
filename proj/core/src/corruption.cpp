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

#include "finpipe/corruption.hpp"

#include <algorithm>
#include <cmath>

#include "finpipe/errors.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

namespace {

constexpr std::string_view kSlot = "{i}";

void append_slice(std::string& out, std::u32string_view source, std::size_t begin,
                  std::size_t end) {
  for (std::size_t i = begin; i < end; ++i) unicode::append_utf8(out, source[i]);
}

}  // namespace

void CorruptionConfig::validate() const {
  if (!(mask_rate > 0.0 && mask_rate < 1.0)) throw ValidationError("mask_rate must be in (0, 1)");
  if (!(mean_span_length >= 1.0) || !std::isfinite(mean_span_length)) {
    throw ValidationError("mean_span_length must be >= 1");
  }
  if (max_sentinels == 0) throw ValidationError("max_sentinels must be positive");
  const std::size_t slot = sentinel_format.find(kSlot);
  if (slot == std::string::npos || sentinel_format.find(kSlot, slot + 1) != std::string::npos) {
    throw ValidationError("sentinel_format must contain exactly one {i} slot");
  }
}

std::string CorruptionConfig::sentinel(std::size_t index) const {
  std::string out = sentinel_format;
  const std::size_t slot = out.find(kSlot);
  if (slot != std::string::npos) out.replace(slot, kSlot.size(), std::to_string(index));
  return out;
}

std::size_t masked_token_count(std::size_t n_tokens, double mask_rate) {
  return static_cast<std::size_t>(std::llround(mask_rate * static_cast<double>(n_tokens)));
}

std::vector<Span> sample_spans(std::size_t n_tokens, const CorruptionConfig& config, Rng& rng) {
  const std::size_t covered = std::min(n_tokens, masked_token_count(n_tokens, config.mask_rate));
  if (covered == 0) return {};
  const std::size_t unmasked = n_tokens - covered;

  std::size_t spans = static_cast<std::size_t>(
      std::llround(static_cast<double>(covered) / config.mean_span_length));
  spans = std::clamp<std::size_t>(spans, 1, covered);
  // Keep at least one unmasked token between neighbouring spans.
  spans = std::min(spans, unmasked + 1);

  std::vector<std::size_t> lengths(spans);
  {
    const auto cuts = rng.choose_sorted(covered - 1, spans - 1);
    std::size_t prev = 0;
    for (std::size_t i = 0; i + 1 < spans; ++i) {
      lengths[i] = cuts[i] + 1 - prev;
      prev = cuts[i] + 1;
    }
    lengths[spans - 1] = covered - prev;
  }

  // spans + 1 gaps; interior gaps take one token each up front, the rest of
  // the budget is a stars-and-bars composition.
  std::vector<std::size_t> gaps(spans + 1);
  {
    const std::size_t extra = unmasked - (spans - 1);
    const auto bars = rng.choose_sorted(extra + spans, spans);
    std::size_t prev = 0;
    for (std::size_t j = 0; j < spans; ++j) {
      gaps[j] = bars[j] - prev;
      prev = bars[j] + 1;
    }
    gaps[spans] = extra + spans - prev;
    for (std::size_t j = 1; j < spans; ++j) ++gaps[j];
  }

  std::vector<Span> out;
  out.reserve(spans);
  std::size_t pos = gaps[0];
  for (std::size_t i = 0; i < spans; ++i) {
    out.push_back({pos, pos + lengths[i]});
    pos += lengths[i] + gaps[i + 1];
  }
  return out;
}

CorruptedText render_corruption(const TokenSeq& tokens, std::span<const Span> spans,
                                const CorruptionConfig& config, std::size_t first_sentinel) {
  const std::size_t needed = first_sentinel + spans.size() + 1;
  if (needed > config.max_sentinels) {
    throw ValidationError("corruption needs " + std::to_string(needed) +
                          " sentinels but max_sentinels is " +
                          std::to_string(config.max_sentinels) + "; split the input");
  }
  const std::u32string_view source = tokens.source;
  CorruptedText out;
  out.input.reserve(source.size() * 3 + spans.size() * 16);
  out.target = config.sentinel(first_sentinel);
  std::size_t cursor = 0;
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& s = spans[i];
    if (s.begin >= s.end || s.end > tokens.size() || (i > 0 && s.begin < prev_end)) {
      throw ValidationError("corruption spans must be non-empty, ascending and in range");
    }
    prev_end = s.end;
    const std::size_t begin = tokens.offsets[s.begin].begin;
    const std::size_t end = tokens.offsets[s.end - 1].end;
    append_slice(out.input, source, cursor, begin);
    out.input += config.sentinel(first_sentinel + i);
    out.target.push_back(' ');
    append_slice(out.target, source, begin, end);
    out.target.push_back(' ');
    out.target += config.sentinel(first_sentinel + i + 1);
    cursor = end;
  }
  append_slice(out.input, source, cursor, source.size());
  return out;
}

MaskedExample corrupt(const TokenSeq& tokens, const CorruptionConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  const auto spans = sample_spans(tokens.size(), config, rng);
  auto rendered = render_corruption(tokens, spans, config);
  MaskedExample ex;
  ex.input = std::move(rendered.input);
  ex.target = std::move(rendered.target);
  ex.kind = ExampleKind::span_corruption;
  ex.seed = seed;
  return ex;
}

std::string reconstruct_text(std::string_view input, std::string_view target,
                             const CorruptionConfig& config, std::size_t first_sentinel) {
  std::string first = config.sentinel(first_sentinel);
  if (target.substr(0, first.size()) != first) {
    throw ValidationError("target does not start with sentinel " + first);
  }
  std::vector<std::string_view> spans;
  std::size_t pos = first.size();
  std::size_t index = first_sentinel;
  while (pos < target.size()) {
    const std::string next = config.sentinel(index + 1);
    const std::size_t at = target.find(next, pos);
    if (at == std::string_view::npos) {
      throw ValidationError("target is missing sentinel " + next);
    }
    const std::string_view segment = target.substr(pos, at - pos);
    if (segment.size() < 3 || segment.front() != ' ' || segment.back() != ' ') {
      throw ValidationError("malformed target span before sentinel " + next);
    }
    spans.push_back(segment.substr(1, segment.size() - 2));
    pos = at + next.size();
    ++index;
  }

  std::string out;
  out.reserve(input.size() + target.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string marker = config.sentinel(first_sentinel + i);
    const std::size_t at = input.find(marker, cursor);
    if (at == std::string_view::npos) {
      throw ValidationError("input is missing sentinel " + marker);
    }
    out.append(input.substr(cursor, at - cursor));
    out.append(spans[i]);
    cursor = at + marker.size();
  }
  const std::string terminator = config.sentinel(first_sentinel + spans.size());
  if (input.find(terminator, cursor) != std::string_view::npos) {
    throw ValidationError("input sentinel " + terminator + " has no span in target");
  }
  out.append(input.substr(cursor));
  return out;
}

std::vector<std::string> reconstruct(std::string_view input, std::string_view target,
                                     const CorruptionConfig& config, const Tokenizer& tokenizer) {
  return tokenizer.tokenize(reconstruct_text(input, target, config)).tokens;
}

}  // namespace finpipe
