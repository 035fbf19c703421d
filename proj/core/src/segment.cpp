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

#include "finpipe/segment.hpp"

#include <algorithm>
#include <fstream>
#include <cstdint>
#include <map>

#include "finpipe/errors.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

bool is_sentence_end(char32_t cp) {
  switch (cp) {
    case U'。':
    case U'！':
    case U'？':
    case U'!':
    case U'?':
    case U'…':
      return true;
    default:
      return false;
  }
}

std::vector<Sentence> split_sentences(const Document& doc) {
  const std::u32string text = unicode::decode_or_throw(doc.text);
  std::vector<Sentence> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    while (begin < end && unicode::is_whitespace(text[begin])) ++begin;
    while (end > begin && unicode::is_whitespace(text[end - 1])) --end;
    if (begin == end) return;
    out.push_back({unicode::encode(std::u32string_view(text).substr(begin, end - begin)), doc.id,
                   out.size(), begin});
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == U'\n') {
      emit(start, i);
      start = i + 1;
    } else if (is_sentence_end(text[i]) &&
               (i + 1 == text.size() || !is_sentence_end(text[i + 1]))) {
      emit(start, i + 1);
      start = i + 1;
    }
  }
  emit(start, text.size());
  return out;
}

struct Vocabulary::Node {
  struct State {
    std::map<char32_t, std::uint32_t> children;
    bool terminal = false;
  };
  std::vector<State> states{State{}};
};

Vocabulary Vocabulary::from_tokens(const std::vector<std::string>& tokens) {
  auto trie = std::make_shared<Node>();
  auto& states = trie->states;
  Vocabulary v;
  for (const auto& token : tokens) {
    const std::u32string cps = unicode::decode_or_throw(token);
    if (cps.empty()) continue;
    if (std::any_of(cps.begin(), cps.end(), unicode::is_whitespace)) {
      throw ValidationError("vocabulary entry '" + token + "' contains whitespace");
    }
    std::uint32_t node = 0;
    for (char32_t cp : cps) {
      auto [it, inserted] =
          states[node].children.try_emplace(cp, static_cast<std::uint32_t>(states.size()));
      node = it->second;
      if (inserted) states.emplace_back();
    }
    if (states[node].terminal) throw ValidationError("duplicate vocabulary entry '" + token + "'");
    states[node].terminal = true;
    ++v.size_;
  }
  v.trie_ = std::move(trie);
  return v;
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary '" + path.string() + "'");
  std::vector<std::string> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!unicode::is_valid_utf8(line)) {
      throw ValidationError("vocabulary '" + path.string() + "' line " +
                            std::to_string(line_no) + ": invalid UTF-8");
    }
    tokens.push_back(std::move(line));
  }
  try {
    return from_tokens(tokens);
  } catch (const ValidationError& e) {
    throw ValidationError("vocabulary '" + path.string() + "': " + e.what());
  }
}

std::size_t Vocabulary::longest_match(std::u32string_view text) const {
  if (!trie_) return 0;
  const auto& states = trie_->states;
  std::uint32_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    auto it = states[node].children.find(text[i]);
    if (it == states[node].children.end()) break;
    node = it->second;
    if (states[node].terminal) best = i + 1;
  }
  return best;
}

Tokenizer::Tokenizer(Vocabulary vocab)
    : vocab_(std::make_shared<const Vocabulary>(std::move(vocab))) {}

TokenSeq Tokenizer::tokenize(std::string_view sentence) const {
  return tokenize(unicode::decode_or_throw(sentence));
}

TokenSeq Tokenizer::tokenize(std::u32string source) const {
  TokenSeq seq;
  seq.source = std::move(source);
  const std::u32string_view text = seq.source;
  seq.tokens.reserve(text.size());
  seq.offsets.reserve(text.size());
  std::size_t i = 0;
  std::size_t run_end = 0;  // end of the current non-whitespace run
  while (i < text.size()) {
    if (unicode::is_whitespace(text[i])) {
      ++i;
      continue;
    }
    std::size_t len = 1;
    if (vocab_) {
      if (run_end <= i) {
        run_end = i;
        while (run_end < text.size() && !unicode::is_whitespace(text[run_end])) ++run_end;
      }
      len = std::max<std::size_t>(1, vocab_->longest_match(text.substr(i, run_end - i)));
    }
    std::string token;
    for (std::size_t k = i; k < i + len; ++k) unicode::append_utf8(token, text[k]);
    seq.tokens.push_back(std::move(token));
    seq.offsets.push_back({i, i + len});
    i += len;
  }
  return seq;
}

}  // namespace finpipe
