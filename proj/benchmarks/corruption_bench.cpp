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

#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "finpipe/corruption.hpp"
#include "finpipe/ketm.hpp"

namespace finpipe {
namespace {

void BM_Corrupt(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Tokenizer tok;
  const auto seq = tok.tokenize(bench::cjk_text(rng, static_cast<std::size_t>(state.range(0))));
  const CorruptionConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(corrupt(seq, cfg, ++seed));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Corrupt)->Arg(100)->Arg(512);

void BM_Tokenize(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const std::string text = bench::cjk_text(rng, 512);
  const Tokenizer tok;
  for (auto _ : state) benchmark::DoNotOptimize(tok.tokenize(text));
  state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_Tokenize);

void BM_KetmExample(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const KnowledgeTriple triple{"马云", "创办", "阿里巴巴"};
  const AlignedSentence aligned{"马云创办了阿里巴巴。" + bench::cjk_text(rng, 60), "d", 0, {{0, {0, 2}, {5, 9}}}};
  const KetmConfig cfg;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(build_ketm_example(aligned, 0, triple, cfg, ++seed));
}
BENCHMARK(BM_KetmExample);

}  // namespace
}  // namespace finpipe
