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

#include "finpipe/rng.hpp"

#include <algorithm>
#include <cstring>

namespace finpipe {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Absorber {
 public:
  explicit Absorber(std::uint64_t master) : h_(mix64(master ^ 0x6A09E667F3BCC909ULL)) {}

  void word(std::uint64_t w) { h_ = mix64(h_ ^ w) + 0x9E3779B97F4A7C15ULL; }

  void key(const SeedKey& k) {
    if (const auto* s = std::get_if<std::string_view>(&k.value())) {
      word(0x5354520000000000ULL ^ s->size());  // "STR" tag
      std::size_t i = 0;
      for (; i + 8 <= s->size(); i += 8) {
        std::uint64_t w = 0;
        for (int b = 0; b < 8; ++b) {
          w |= std::uint64_t(static_cast<unsigned char>((*s)[i + b])) << (8 * b);
        }
        word(w);
      }
      std::uint64_t tail = 0;
      for (int b = 0; i < s->size(); ++i, ++b) {
        tail |= std::uint64_t(static_cast<unsigned char>((*s)[i])) << (8 * b);
      }
      word(tail);
    } else {
      word(0x494E540000000000ULL);  // "INT" tag
      word(std::get<std::uint64_t>(k.value()));
    }
  }

  std::uint64_t finish() const { return mix64(h_); }

 private:
  std::uint64_t h_;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t st = seed;
  for (auto& w : s_) w = splitmix64(st);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low range.
  std::uint64_t x = next();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::vector<std::uint64_t> Rng::choose_sorted(std::uint64_t n, std::uint64_t k) {
  // Floyd's algorithm: k draws regardless of n.
  std::vector<std::uint64_t> picked;
  picked.reserve(k);
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = below(j + 1);
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
      picked.push_back(t);
    } else {
      picked.push_back(j);
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<SeedKey> keys) {
  Absorber a(master);
  a.word(keys.size());
  for (const auto& k : keys) a.key(k);
  return a.finish();
}

std::uint64_t derive_seed(std::uint64_t master, const std::vector<SeedKey>& keys) {
  Absorber a(master);
  a.word(keys.size());
  for (const auto& k : keys) a.key(k);
  return a.finish();
}

}  // namespace finpipe
