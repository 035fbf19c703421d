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

#include <gtest/gtest.h>

#include "finpipe/align.hpp"
#include "finpipe/errors.hpp"
#include "finpipe/unicode.hpp"
#include "oracles.hpp"

namespace finpipe {
namespace {

const KnowledgeTriple kTriple{"马云", "创办", "阿里巴巴"};

KetmConfig x_config() {
  KetmConfig cfg;
  cfg.corruption.sentinel_format = "<X{i}>";
  return cfg;
}

AlignedSentence aligned_example() {
  return AlignedSentence{"马云创办了阿里巴巴。", "d", 0, {{0, {0, 2}, {5, 9}}}};
}

TEST(Ketm, RenderExample) {
  const Tokenizer tok;
  const auto seq = tok.tokenize("马云创办了阿里巴巴。");
  const std::vector<Span> spans{{2, 4}};
  const auto ex = render_ketm_example(kTriple, TripleElement::relation, seq, spans, x_config());
  EXPECT_EQ(ex.input, "马云 [SEP] <X0> [SEP] 阿里巴巴 [SEP] 马云<X1>了阿里巴巴。");
  EXPECT_EQ(ex.target, "<X0> 创办 <X1> 创办 <X2>");
  EXPECT_EQ(ex.kind, ExampleKind::ketm);

  const auto head = render_ketm_example(kTriple, TripleElement::head, seq, {}, x_config());
  EXPECT_EQ(head.input, "<X0> [SEP] 创办 [SEP] 阿里巴巴 [SEP] 马云创办了阿里巴巴。");
  EXPECT_EQ(head.target, "<X0> 马云 <X1>");
}

TEST(Ketm, ElementsAreTrimmed) {
  const Tokenizer tok;
  const KnowledgeTriple padded{" 马云 ", "创办\t", "阿里巴巴"};
  const auto ex = render_ketm_example(padded, TripleElement::head, tok.tokenize("好。"), {}, x_config());
  EXPECT_EQ(ex.input, "<X0> [SEP] 创办 [SEP] 阿里巴巴 [SEP] 好。");
  EXPECT_EQ(ex.target, "<X0> 马云 <X1>");
}

TEST(Ketm, ForcedElementProbabilities) {
  KetmConfig cfg = x_config();
  cfg.element_probs = {0.0, 0.0, 1.0};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ex = build_ketm_example(aligned_example(), 0, kTriple, cfg, seed);
    const auto regions = split_ketm_input(ex.input, cfg);
    ASSERT_EQ(regions[2], "<X0>");
    ASSERT_EQ(regions[0], "马云");
    ASSERT_TRUE(ex.target.starts_with("<X0> 阿里巴巴 <X1>"));
  }
  cfg.element_probs = {1.0, 0.0, 0.0};
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(choose_element(cfg, rng), TripleElement::head);
}

TEST(Ketm, ExactlyOneElementMasked) {
  const KetmConfig cfg = x_config();
  std::array<int, 3> counts{};
  const int n = 30000;
  for (int i = 0; i < n; ++i) {
    const auto ex = build_ketm_example(aligned_example(), 0, kTriple, cfg,
                                       static_cast<std::uint64_t>(i) * 7919);
    const auto regions = split_ketm_input(ex.input, cfg);
    int masked = 0;
    for (int k = 0; k < 3; ++k) {
      if (regions[k] == "<X0>") {
        ++masked;
        ++counts[k];
      }
    }
    ASSERT_EQ(masked, 1);
  }
  // Chi-square with 2 degrees of freedom; 13.82 is the 0.001 critical value.
  double chi2 = 0;
  for (int c : counts) chi2 += (c - n / 3.0) * (c - n / 3.0) / (n / 3.0);
  EXPECT_LT(chi2, 13.82);
}

TEST(Ketm, SentenceReconstructs) {
  testing::TextGen gen(43);
  const KetmConfig cfg = x_config();
  for (int i = 0; i < 500; ++i) {
    AlignedSentence a = aligned_example();
    a.sentence = "马云创办了阿里巴巴，" + unicode::encode(gen.cjk_string(gen.uniform(0, 60))) + "。";
    const auto ex = build_ketm_example(a, 0, kTriple, cfg, static_cast<std::uint64_t>(i));
    const auto regions = split_ketm_input(ex.input, cfg);
    // Drop "<X0> element " to leave the sentence target from <X1>.
    const std::size_t at = ex.target.find("<X1>");
    ASSERT_NE(at, std::string::npos);
    ASSERT_EQ(reconstruct_text(regions[3], ex.target.substr(at), cfg.sentence_corruption(), 1),
              a.sentence);
  }
}

TEST(Ketm, UnknownTripleIdRejected) {
  EXPECT_THROW(build_ketm_example(aligned_example(), 3, kTriple, x_config(), 1), ValidationError);
  AlignedSentence bad = aligned_example();
  bad.triples[0].triple_id = 5;
  const std::vector<KnowledgeTriple> triples{kTriple};
  EXPECT_THROW(build_ketm_examples(bad, triples, x_config(), 1), ValidationError);
}

TEST(Ketm, StreamSeedsAndOrder) {
  const std::vector<KnowledgeTriple> triples{kTriple, {"马云", "出生于", "杭州"}};
  const auto lex = EntityLexicon::build(triples);
  const Document d{"d", Source::news, "杭州人马云创办了阿里巴巴。马云爱杭州。", {}};
  const auto aligned = align_document(d, lex);
  const auto a = build_ketm_stream(aligned, triples, x_config(), 7);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a, build_ketm_stream(aligned, triples, x_config(), 7));
  EXPECT_EQ(a[0].seed, ketm_record_seed(7, aligned[0], 0));
  EXPECT_EQ(a[1].seed, ketm_record_seed(7, aligned[0], 1));
  EXPECT_EQ(a[2].seed, ketm_record_seed(7, aligned[1], 1));
  EXPECT_NE(a[0].seed, a[1].seed);
  EXPECT_NE(a[0].seed, ketm_record_seed(8, aligned[0], 0));
}

TEST(Ketm, ConfigValidation) {
  KetmConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.element_probs = {0.5, 0.5, 0.5};
  EXPECT_THROW(cfg.validate(), ValidationError);
  cfg = KetmConfig{};
  cfg.element_sep = "";
  EXPECT_THROW(cfg.validate(), ValidationError);
  EXPECT_THROW(split_ketm_input("a [SEP] b", KetmConfig{}), ValidationError);
}

}  // namespace
}  // namespace finpipe
