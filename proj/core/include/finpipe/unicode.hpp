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

// UTF-8 helpers. All character offsets used by the pipeline count unicode
// scalar values (code points), never bytes.

#include <optional>
#include <string>
#include <string_view>

namespace finpipe::unicode {

// Returns std::nullopt when `bytes` is not well-formed UTF-8 (overlongs,
// surrogates and values above U+10FFFF are rejected).
std::optional<std::u32string> decode(std::string_view bytes);
// Decodes into `out`, reusing its storage. Returns false on malformed input.
bool decode_into(std::string_view bytes, std::u32string& out);

// Reads the code point at `p` and advances past it. Returns false, leaving
// `p` in place, on a malformed sequence.
bool next_code_point_slow(const unsigned char*& p, const unsigned char* end, char32_t& cp);

inline bool next_code_point(const unsigned char*& p, const unsigned char* end, char32_t& cp) {
  const unsigned b0 = *p;
  if (b0 < 0x80) {
    cp = b0;
    ++p;
    return true;
  }
  // Three-byte sequences cover CJK.
  if ((b0 & 0xF0) == 0xE0 && end - p >= 3 && (p[1] & 0xC0) == 0x80 && (p[2] & 0xC0) == 0x80) {
    cp = (b0 & 0x0Fu) << 12 | (p[1] & 0x3Fu) << 6 | (p[2] & 0x3Fu);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    p += 3;
    return true;
  }
  return next_code_point_slow(p, end, cp);
}

// Like decode() but throws ValidationError on malformed input.
std::u32string decode_or_throw(std::string_view bytes);

bool is_valid_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);
std::string encode(std::u32string_view text);

// Number of code points in valid UTF-8.
std::size_t length(std::string_view bytes);

bool is_whitespace(char32_t cp);

// C0/C1 controls and the byte order mark. '\n' is a control character too;
// callers that keep line structure check for it first.
bool is_control(char32_t cp);

// CJK Unified Ideographs, including Extension A through H.
bool is_cjk_ideograph(char32_t cp);

// Code-point-preserving compatibility fold: full-width ASCII variants and
// full-width symbols map to their half-width forms, unicode spaces map to
// U+0020 and Latin letters are lower-cased. CJK ideographs are unchanged.
// Always maps one code point to exactly one code point.
char32_t fold_slow(char32_t cp);

inline char32_t fold(char32_t cp) {
  if (cp < 0x80) return (cp >= U'A' && cp <= U'Z') ? cp + 0x20 : cp;
  // Nothing between the ideographic space and the full-width forms folds.
  if (cp > 0x3000 && cp < 0xFF01) return cp;
  return fold_slow(cp);
}

}  // namespace finpipe::unicode
