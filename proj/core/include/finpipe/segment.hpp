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
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "finpipe/records.hpp"

namespace finpipe {

struct Sentence {
  std::string text;
  std::string doc_id;
  std::size_t sent_index = 0;
  std::size_t char_offset = 0;  // code points into the parent document

  bool operator==(const Sentence&) const = default;
};

// Sentence enders: 。！？!?… A run of enders stays with the sentence it
// closes, and a newline always ends a sentence. Sentences are trimmed of
// surrounding whitespace; empty ones are dropped.
bool is_sentence_end(char32_t cp);
std::vector<Sentence> split_sentences(const Document& doc);

// Tokens of one sentence with code point offsets into it. Whitespace is
// never part of a token.
struct TokenSeq {
  std::u32string source;
  std::vector<std::string> tokens;
  std::vector<Span> offsets;

  std::size_t size() const { return tokens.size(); }
};

// Greedy longest-match vocabulary. File format: one token per line, UTF-8,
// no duplicates.
class Vocabulary {
 public:
  static Vocabulary load(const std::filesystem::path& path);
  static Vocabulary from_tokens(const std::vector<std::string>& tokens);

  // Length in code points of the longest entry that prefixes `text`, or 0.
  std::size_t longest_match(std::u32string_view text) const;
  std::size_t size() const { return size_; }

 private:
  struct Node;
  std::shared_ptr<const Node> trie_;
  std::size_t size_ = 0;
};

class Tokenizer {
 public:
  // One token per code point.
  Tokenizer() = default;
  explicit Tokenizer(Vocabulary vocab);

  TokenSeq tokenize(std::string_view sentence) const;
  TokenSeq tokenize(std::u32string source) const;

  bool uses_vocabulary() const { return vocab_ != nullptr; }

 private:
  std::shared_ptr<const Vocabulary> vocab_;
};

}  // namespace finpipe
