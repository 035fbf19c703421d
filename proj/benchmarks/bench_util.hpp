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

#include <random>
#include <string>

#include "finpipe/unicode.hpp"

namespace finpipe::bench {

inline std::string cjk_text(std::mt19937_64& rng, std::size_t n) {
  std::u32string s;
  s.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char32_t>(0x4E00 + rng() % 2000));
  return unicode::encode(s);
}

}  // namespace finpipe::bench
