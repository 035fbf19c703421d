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

#include <gtest/gtest.h>

#include "finpipe/unicode.hpp"
#include "oracles.hpp"

namespace finpipe {
namespace {

Sentence sentence(std::string text, std::size_t index = 0) {
  return Sentence{std::move(text), "d", index, 0};
}

TEST(Normalize, SurfaceForms) {
  EXPECT_EQ(normalize_surface("ＡＢＣ公司"), "abc公司");
  EXPECT_EQ(normalize_surface(" Tencent "), "tencent");
  EXPECT_EQ(normalize_surface("阿里巴巴"), "阿里巴巴");
  EXPECT_EQ(normalize_surface("１２３％"), "123%");
  EXPECT_EQ(normalize_surface("　"), "");
}

TEST(Normalize, TextKeepsLength) {
  testing::TextGen gen(5);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen.noisy_line(gen.uniform(0, 50));
    EXPECT_EQ(normalize_text(s).size(), s.size());
  }
}

TEST(Align, ExampleSpans) {
  const std::vector<KnowledgeTriple> triples{{"马云", "创办", "阿里巴巴"}};
  const auto lex = EntityLexicon::build(triples);
  const auto a = align_sentence(sentence("马云创办了阿里巴巴。"), lex);
  ASSERT_TRUE(a);
  ASSERT_EQ(a->triples.size(), 1u);
  EXPECT_EQ(a->triples[0].triple_id, 0u);
  EXPECT_EQ(a->triples[0].head, (Span{0, 2}));
  EXPECT_EQ(a->triples[0].tail, (Span{5, 9}));
  EXPECT_FALSE(align_sentence(sentence("马云今天休息。"), lex));
}

TEST(Align, HeadInsideTail) {
  const std::vector<KnowledgeTriple> triples{{"阿里", "子公司", "阿里巴巴"}};
  const auto lex = EntityLexicon::build(triples);
  const auto a = align_sentence(sentence("阿里巴巴上市。"), lex);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->triples[0].head, (Span{0, 2}));
  EXPECT_EQ(a->triples[0].tail, (Span{0, 4}));
}

TEST(Align, CaseAndWidthInsensitive) {
  const std::vector<KnowledgeTriple> triples{{"Tencent", "投资", "ＪＤ"}};
  const auto lex = EntityLexicon::build(triples);
  for (const char* s : {"tencent投资了jd。", "TENCENT投资了ＪＤ。", "ＴＥＮＣＥＮＴ投资了Jd。"}) {
    const auto a = align_sentence(sentence(s), lex);
    ASSERT_TRUE(a) << s;
    EXPECT_EQ(a->triples[0].head, (Span{0, 7}));
    EXPECT_EQ(a->triples[0].tail, (Span{10, 12}));
    EXPECT_EQ(a->sentence, s);
  }
}

TEST(Align, MalformedUtf8NeverAligns) {
  const std::vector<KnowledgeTriple> triples{{"马云", "创办", "阿里巴巴"}};
  const auto lex = EntityLexicon::build(triples);
  EXPECT_FALSE(align_sentence(sentence("马云创办了阿里巴巴\xFF。"), lex));
  EXPECT_FALSE(align_sentence(sentence("马云创办了阿里巴巴\xE4\xB8"), lex));
}

TEST(Align, SkipsUnusableTriples) {
  const std::vector<KnowledgeTriple> triples{
      {"马云", "创办", "马云"}, {"A", "是", "阿里巴巴"}, {"马云", "创办", "阿里巴巴"}};
  const auto lex = EntityLexicon::build(triples);
  EXPECT_EQ(lex.skipped_triples(), 2u);
  EXPECT_EQ(lex.triple_count(), 3u);
  const auto a = align_sentence(sentence("A和马云创办了阿里巴巴。"), lex);
  ASSERT_TRUE(a);
  ASSERT_EQ(a->triples.size(), 1u);
  EXPECT_EQ(a->triples[0].triple_id, 2u);

  LexiconOptions keep_all;
  keep_all.min_entity_chars = 1;
  const auto loose = EntityLexicon::build(triples, keep_all);
  EXPECT_EQ(loose.skipped_triples(), 1u);
  EXPECT_EQ(align_sentence(sentence("A和马云创办了阿里巴巴。"), loose)->triples.size(), 2u);
  EXPECT_FALSE(align_sentence(sentence("任何句子。"), EntityLexicon{}));
}

TEST(Align, SharedEntitiesAcrossTriples) {
  const std::vector<KnowledgeTriple> triples{
      {"马云", "创办", "阿里巴巴"}, {"马云", "出生于", "杭州"}, {"阿里巴巴", "总部", "杭州"}};
  const auto lex = EntityLexicon::build(triples);
  EXPECT_EQ(lex.pattern_count(), 3u);
  EXPECT_EQ(lex.roles("马云").size(), 2u);
  const auto a = align_sentence(sentence("杭州人马云创办了阿里巴巴。"), lex);
  ASSERT_TRUE(a);
  ASSERT_EQ(a->triples.size(), 3u);
  EXPECT_EQ(a->triples[1].triple_id, 1u);
  EXPECT_EQ(a->triples[1].tail, (Span{0, 2}));
}

TEST(Align, MatchesBruteForce) {
  testing::TextGen gen(17);
  for (int round = 0; round < 20; ++round) {
    // A small alphabet makes entities collide and overlap often.
    auto word = [&](std::size_t lo, std::size_t hi) {
      std::u32string w;
      const std::size_t n = gen.uniform(lo, hi);
      for (std::size_t i = 0; i < n; ++i) {
        w.push_back(gen.chance(0.2) ? static_cast<char32_t>(U'A' + gen.uniform(0, 3))
                                    : static_cast<char32_t>(0x4E00 + gen.uniform(0, 11)));
      }
      return unicode::encode(w);
    };
    std::vector<KnowledgeTriple> triples;
    for (int i = 0; i < 200; ++i) triples.push_back({word(1, 4), "关系", word(1, 4)});
    std::vector<Sentence> sentences;
    for (std::size_t i = 0; i < 100; ++i) sentences.push_back(sentence(word(0, 40), i));

    const std::size_t min_chars = round % 2 ? 1 : 2;
    const auto lex = EntityLexicon::build(triples, LexiconOptions{min_chars});
    std::vector<AlignedSentence> fast;
    for (const auto& s : sentences) {
      if (auto a = align_sentence(s, lex)) fast.push_back(std::move(*a));
    }
    ASSERT_EQ(fast, testing::brute_force_align(sentences, triples, min_chars));
  }
}

TEST(Align, DocumentAndCorpus) {
  const std::vector<KnowledgeTriple> triples{{"马云", "创办", "阿里巴巴"}};
  const auto lex = EntityLexicon::build(triples);
  const Document d{"doc", Source::news, "马云创办了阿里巴巴。今天天气很好。阿里巴巴由马云创办。", {}};
  const auto aligned = align_document(d, lex);
  ASSERT_EQ(aligned.size(), 2u);
  EXPECT_EQ(aligned[0].sent_index, 0u);
  EXPECT_EQ(aligned[1].sent_index, 2u);
  EXPECT_EQ(aligned[1].doc_id, "doc");
  EXPECT_EQ(aligned[1].triples[0].head, (Span{5, 7}));
  const std::vector<Document> docs{d, d};
  EXPECT_EQ(align_corpus(docs, lex).size(), 4u);
}

}  // namespace
}  // namespace finpipe
