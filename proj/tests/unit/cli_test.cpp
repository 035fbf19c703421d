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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "finpipe/record_io.hpp"
#include "finpipe/unicode.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace finpipe::cli {
namespace {

using testing::read_file;
using testing::write_file;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    finpipe::testing::TextGen gen(99);
    std::vector<Document> docs;
    for (int i = 0; i < 300; ++i) {
      Document d;
      d.id = "doc" + std::to_string(i);
      d.source = static_cast<Source>(i % 4);
      std::string text;
      for (int s = 0; s < 4; ++s) {
        text += unicode::encode(gen.cjk_string(gen.uniform(15, 40))) + "。";
        if (i % 5 == 0) text += "马云创办了阿里巴巴。";
      }
      if (i % 7 == 0) text = "太短。";
      d.text = text;
      docs.push_back(d);
    }
    write_records(docs, dir.path("docs.jsonl"));
    write_file(dir.path("triples.tsv"), "马云\t创办\t阿里巴巴\n阿里巴巴\t位于\t杭州\n");
  }

  std::string p(std::string_view name) const { return dir.path(name); }

  finpipe::testing::TempDir dir;
};

TEST_F(CliTest, VersionAndHelp) {
  auto r = invoke({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("finpipe"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({}).code, kExitValidation);
}

TEST_F(CliTest, FilterReportAndExitCodes) {
  auto r = invoke({"filter", "--in", p("docs.jsonl"), "--out", p("clean.jsonl"), "--report",
                   p("report.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report["docs_in"], 300);
  EXPECT_EQ(report["docs_out"].get<int>() + report["docs_dropped"].get<int>(), 300);
  EXPECT_EQ(read_documents(p("clean.jsonl")).size(), report["docs_out"].get<std::size_t>());
  EXPECT_EQ(nlohmann::json::parse(read_file(p("report.json"))), report);

  r = invoke({"filter", "--in", p("missing.jsonl"), "--out", p("x.jsonl")});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("--in"), std::string::npos) << r.err;
  EXPECT_EQ(invoke({"filter", "--in", p("docs.jsonl"), "--out", p("x.jsonl"), "--bogus"}).code,
            kExitValidation);
  EXPECT_EQ(invoke({"filter", "--in", p("docs.jsonl"), "--out", p("x.jsonl"), "--cjk-ratio-min",
                    "2"})
                .code,
            kExitValidation);

  write_file(p("broken.jsonl"), "{\"id\":\"a\",\"source\":\"news\",\"text\":\"x\"}\nnot json\n");
  r = invoke({"filter", "--in", p("broken.jsonl"), "--out", p("x.jsonl")});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(p("x.jsonl")));
}

TEST_F(CliTest, ConfigFileAndPrecedence) {
  write_file(p("filter.cfg"), "# strict\nmin_doc_chars = 100000\n");
  auto r = invoke({"filter", "--config", p("filter.cfg"), "--in", p("docs.jsonl"), "--out",
                   p("a.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["docs_out"], 0);
  r = invoke({"filter", "--config", p("filter.cfg"), "--min-doc-chars", "1", "--in",
              p("docs.jsonl"), "--out", p("a.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_GT(nlohmann::json::parse(r.out)["docs_out"].get<int>(), 0);
  write_file(p("bad.cfg"), "no_such_key = 1\n");
  EXPECT_EQ(invoke({"filter", "--config", p("bad.cfg"), "--in", p("docs.jsonl"), "--out",
                    p("a.jsonl")})
                .code,
            kExitValidation);
}

TEST_F(CliTest, PipelineIsDeterministicAcrossWorkers) {
  std::map<std::string, std::string> first;
  for (const char* workers : {"1", "4", "16"}) {
    const std::string w = workers;
    auto run_step = [&](std::vector<std::string> args, const std::string& out) {
      args.push_back("--workers");
      args.push_back(w);
      args.push_back("--batch-size");
      args.push_back("37");
      const auto r = invoke(args);
      ASSERT_EQ(r.code, kExitOk) << args[0] << ": " << r.err;
      const std::string bytes = read_file(out) + r.out;
      if (w == "1") {
        first[args[0]] = bytes;
      } else {
        EXPECT_EQ(first[args[0]], bytes) << args[0] << " with " << w << " workers";
      }
    };
    run_step({"filter", "--in", p("docs.jsonl"), "--out", p("clean" + w + ".jsonl")},
             p("clean" + w + ".jsonl"));
    run_step({"corrupt", "--in", p("clean" + w + ".jsonl"), "--out", p("c" + w + ".jsonl"),
              "--seed", "5"},
             p("c" + w + ".jsonl"));
    run_step({"align", "--docs", p("clean" + w + ".jsonl"), "--triples", p("triples.tsv"),
              "--out", p("a" + w + ".jsonl")},
             p("a" + w + ".jsonl"));
    run_step({"ketm", "--aligned", p("a" + w + ".jsonl"), "--triples", p("triples.tsv"), "--out",
              p("k" + w + ".jsonl"), "--seed", "5"},
             p("k" + w + ".jsonl"));
  }
  EXPECT_FALSE(read_file(p("k1.jsonl")).empty());

  // Ratio 0 passes the span-corruption stream through unchanged.
  auto r = invoke({"mix", "--corrupt", p("c1.jsonl"), "--ketm", p("k1.jsonl"), "--ratio", "0",
                   "--out", p("m.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(p("m.jsonl")), read_file(p("c1.jsonl")));
  r = invoke({"mix", "--corrupt", p("c1.jsonl"), "--ketm", p("k1.jsonl"), "--ratio", "0.5",
              "--out", p("m2.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto c_lines = std::count(first["corrupt"].begin(), first["corrupt"].end(), '\n');
  const std::string mixed = read_file(p("m2.jsonl"));
  EXPECT_GE(std::count(mixed.begin(), mixed.end(), '\n'), c_lines - 1);
  EXPECT_EQ(invoke({"mix", "--corrupt", p("c1.jsonl"), "--ketm", p("k1.jsonl"), "--ratio", "1.5",
                    "--out", p("m3.jsonl")})
                .code,
            kExitValidation);

  r = invoke({"stats", "--in", p("clean1.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_GT(nlohmann::json::parse(r.out)["documents"].get<int>(), 0);
}

TEST_F(CliTest, SeedChangesOutput) {
  ASSERT_EQ(invoke({"corrupt", "--in", p("docs.jsonl"), "--out", p("s1.jsonl"), "--seed", "1"}).code,
            kExitOk);
  ASSERT_EQ(invoke({"corrupt", "--in", p("docs.jsonl"), "--out", p("s2.jsonl"), "--seed", "2"}).code,
            kExitOk);
  EXPECT_NE(read_file(p("s1.jsonl")), read_file(p("s2.jsonl")));
}

TEST_F(CliTest, EvalAndLeaderboard) {
  write_file(p("gold.jsonl"), "{\"id\":\"1\",\"label\":\"今天下跌\"}\n");
  write_file(p("pred.jsonl"), "{\"id\":\"1\",\"prediction\":\"今天上涨\"}\n");
  auto r = invoke({"eval", "--task", "FinNA", "--pred", p("pred.jsonl"), "--gold", p("gold.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["rouge2"].get<double>(), 33.33);

  write_file(p("scores.jsonl"),
             "{\"model_name\":\"GPT2-base\",\"scores\":{\"FinFE\":79.05,\"FinNL\":84.09,"
             "\"FinNSP\":91.30,\"FinRE\":36.37,\"FinNA\":44.19,\"FinQA\":75.22}}\n");
  r = invoke({"eval", "leaderboard", "--scores", p("scores.jsonl"), "--out", p("rows.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("68.37"), std::string::npos) << r.out;
  EXPECT_NE(read_file(p("rows.jsonl")).find("\"avg\":68.37"), std::string::npos);
  EXPECT_EQ(invoke({"eval", "--task", "FinXX", "--pred", p("pred.jsonl"), "--gold",
                    p("gold.jsonl")})
                .code,
            kExitValidation);
}

}  // namespace
}  // namespace finpipe::cli
