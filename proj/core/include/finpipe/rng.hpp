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

// Portable random numbers. std::uniform_int_distribution and friends are
// implementation-defined, so every draw that shapes pipeline output goes
// through this header to stay bit-identical across platforms.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace finpipe {

// xoshiro256** seeded through SplitMix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // k distinct values from [0, n), sorted ascending, every k-subset equally
  // likely. Requires k <= n.
  std::vector<std::uint64_t> choose_sorted(std::uint64_t n, std::uint64_t k);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

class SeedKey {
 public:
  SeedKey(std::string_view s) : value_(s) {}  // NOLINT(google-explicit-constructor)
  SeedKey(const char* s) : value_(std::string_view(s)) {}  // NOLINT
  SeedKey(const std::string& s) : value_(std::string_view(s)) {}  // NOLINT
  template <class Int, class = std::enable_if_t<std::is_integral_v<Int>>>
  SeedKey(Int v) : value_(static_cast<std::uint64_t>(v)) {}  // NOLINT

  const std::variant<std::string_view, std::uint64_t>& value() const { return value_; }

 private:
  std::variant<std::string_view, std::uint64_t> value_;
};

// Stable hash of (master, keys...). Strings and integers are tagged and
// length-prefixed, so ["ab", 1] and ["a", "b1"] never share an encoding.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<SeedKey> keys);
std::uint64_t derive_seed(std::uint64_t master, const std::vector<SeedKey>& keys);

}  // namespace finpipe
