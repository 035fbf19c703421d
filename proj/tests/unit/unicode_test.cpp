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

#include "finpipe/unicode.hpp"

#include <gtest/gtest.h>

#include "finpipe/errors.hpp"

namespace finpipe::unicode {
namespace {

TEST(Unicode, DecodeEncodeRoundTrip) {
  const std::string s = "a\xC3\xA9\xE4\xB8\xAD\xF0\x9F\x98\x80";  // a é 中 😀
  const auto cps = decode(s);
  ASSERT_TRUE(cps);
  EXPECT_EQ(*cps, (std::u32string{U'a', 0xE9, 0x4E2D, 0x1F600}));
  EXPECT_EQ(encode(*cps), s);
  EXPECT_EQ(length(s), 4u);
}

TEST(Unicode, RejectsMalformed) {
  for (std::string bad : {std::string("\xC3"), std::string("\xC0\x80"), std::string("\xED\xA0\x80"),
                          std::string("\xF4\x90\x80\x80"), std::string("\x80"),
                          std::string("\xE4\xB8")}) {
    EXPECT_FALSE(decode(bad)) << "accepted malformed input";
    EXPECT_FALSE(is_valid_utf8(bad));
    EXPECT_THROW(decode_or_throw(bad), ValidationError);
  }
  EXPECT_TRUE(is_valid_utf8(""));
}

TEST(Unicode, Classes) {
  EXPECT_TRUE(is_whitespace(U' '));
  EXPECT_TRUE(is_whitespace(U'\n'));
  EXPECT_TRUE(is_whitespace(0x3000));
  EXPECT_FALSE(is_whitespace(U'a'));
  EXPECT_TRUE(is_control(0x01));
  EXPECT_TRUE(is_control(0x7F));
  EXPECT_TRUE(is_control(0xFEFF));
  EXPECT_FALSE(is_control(U'中'));
  EXPECT_TRUE(is_cjk_ideograph(U'中'));
  EXPECT_TRUE(is_cjk_ideograph(0x3400));
  EXPECT_TRUE(is_cjk_ideograph(0x20000));
  EXPECT_FALSE(is_cjk_ideograph(U'。'));
  EXPECT_FALSE(is_cjk_ideograph(U'A'));
}

TEST(Unicode, FoldIsOneToOne) {
  EXPECT_EQ(fold(0xFF21), U'a');  // Ａ
  EXPECT_EQ(fold(0xFF10), U'0');  // ０
  EXPECT_EQ(fold(U'Q'), U'q');
  EXPECT_EQ(fold(0xC9), 0xE9);  // É
  EXPECT_EQ(fold(0xD7), 0xD7);  // ×
  EXPECT_EQ(fold(0x3000), U' ');
  EXPECT_EQ(fold(U'\n'), U'\n');
  EXPECT_EQ(fold(U'腾'), U'腾');
}

}  // namespace
}  // namespace finpipe::unicode
