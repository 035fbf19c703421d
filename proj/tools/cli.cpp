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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "finpipe/align.hpp"
#include "finpipe/corruption.hpp"
#include "finpipe/errors.hpp"
#include "finpipe/eval.hpp"
#include "finpipe/eval_files.hpp"
#include "finpipe/filter.hpp"
#include "finpipe/ketm.hpp"
#include "finpipe/record_io.hpp"
#include "finpipe/rng.hpp"
#include "finpipe/segment.hpp"
#include "finpipe/unicode.hpp"
#include "json.hpp"
#include "worker_pool.hpp"

#ifndef FINPIPE_VERSION
#define FINPIPE_VERSION "unknown"
#endif

namespace finpipe::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Common {
  std::size_t workers = 0;  // 0: default_workers()
  std::size_t batch_size = 4096;
  std::string config;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--workers", common.workers,
                  "Worker threads (default: $FINPIPE_WORKERS or the core count)");
  sub->add_option("--batch-size", common.batch_size, "Records per parallel batch")
      ->check(CLI::PositiveNumber);
  sub->add_option("--config", common.config,
                  "Flat key=value file; keys are flag names, flags given on the command line win");
}

std::size_t worker_count(const Common& common) {
  return common.workers ? common.workers : default_workers();
}

void require_file(std::string_view flag, const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw IoError(std::string(flag) + ": no such file '" + path + "'");
  }
}

// --- config files -----------------------------------------------------

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::optional<std::string> find_config_arg(const std::vector<std::string>& args,
                                           std::size_t from) {
  for (std::size_t i = from; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Expands the --config file of the selected subcommand into flags placed
// right after the subcommand name, so anything given explicitly later on
// the command line takes precedence.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  CLI::App* current = &app;
  std::size_t insert_at = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i].empty() || args[i][0] == '-') continue;
    if (auto* sub = current->get_subcommand_no_throw(args[i])) {
      current = sub;
      insert_at = i + 1;
    }
  }
  if (current == &app) return args;
  const auto path = find_config_arg(args, insert_at);
  if (!path) return args;
  require_file("--config", *path);

  std::ifstream in(*path, std::ios::binary);
  if (!in) throw IoError("--config: cannot read '" + *path + "'");
  std::vector<std::string> injected;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    auto where = [&] { return "config '" + *path + "' line " + std::to_string(line_no) + ": "; };
    if (eq == std::string::npos) throw ValidationError(where() + "expected key=value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty() || key == "config" || !current->get_option_no_throw("--" + key)) {
      throw ValidationError(where() + "unknown key '" + key + "' for '" + current->get_name() +
                            "'");
    }
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), injected.begin(),
              injected.end());
  return args;
}

// --- ordered parallel streaming ------------------------------------------

struct RawLine {
  std::string text;
  std::size_t line = 0;
  std::size_t offset = 0;
};

bool read_batch(LineReader& reader, std::vector<RawLine>& batch, std::size_t max) {
  batch.clear();
  while (batch.size() < max) {
    auto line = reader.next();
    if (!line) break;
    batch.push_back({std::string(*line), reader.line_number(), reader.byte_offset()});
  }
  return !batch.empty();
}

template <class Record>
Record parse(const RawLine& raw) {
  return parse_record<Record>(raw.text, raw.line, raw.offset);
}

// Maps each input line to a Result on the pool and hands results to `sink`
// in input order.
template <class Result, class Map, class Sink>
void map_ordered(LineReader& reader, WorkerPool& pool, std::size_t batch_size, Map&& map,
                 Sink&& sink) {
  std::vector<RawLine> batch;
  std::vector<Result> results;
  while (read_batch(reader, batch, batch_size)) {
    results.clear();
    results.resize(batch.size());
    try {
      pool.parallel_for(batch.size(), [&](std::size_t i) { results[i] = map(batch[i]); });
    } catch (const FormatError& e) {
      throw ValidationError(reader.path().string() + ": " + e.what());
    }
    for (auto& r : results) sink(std::move(r));
  }
}

Tokenizer make_tokenizer(const std::string& vocab) {
  if (vocab.empty()) return Tokenizer();
  require_file("--vocab", vocab);
  return Tokenizer(Vocabulary::load(vocab));
}

// Tokens [begin, end) of `seq` as a sequence of their own.
TokenSeq window(const TokenSeq& seq, std::size_t begin, std::size_t end) {
  const std::size_t from = seq.offsets[begin].begin;
  const std::size_t to = seq.offsets[end - 1].end;
  TokenSeq out;
  out.source = seq.source.substr(from, to - from);
  out.tokens.assign(seq.tokens.begin() + static_cast<std::ptrdiff_t>(begin),
                    seq.tokens.begin() + static_cast<std::ptrdiff_t>(end));
  out.offsets.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    out.offsets.push_back({seq.offsets[i].begin - from, seq.offsets[i].end - from});
  }
  return out;
}

void print_json(std::ostream& out, const ordered_json& j) { out << j.dump() << "\n"; }

// --- filter -------------------------------------------------------------

struct FilterArgs {
  Common common;
  std::string in;
  std::string out;
  std::string report;
  FilterConfig config;
  std::string blocklist;
};

ordered_json report_json(const FilterReport& r) {
  ordered_json j;
  j["docs_in"] = r.docs_in;
  j["docs_out"] = r.docs_out;
  j["docs_dropped"] = r.docs_dropped();
  j["docs_dropped_by_rule"] = ordered_json::object();
  for (const auto& [rule, n] : r.docs_dropped_by_rule) j["docs_dropped_by_rule"][rule] = n;
  j["lines_dropped"] = r.lines_dropped;
  return j;
}

int run_filter(FilterArgs& a, std::ostream& out) {
  require_file("--in", a.in);
  if (!a.blocklist.empty()) {
    require_file("--blocklist", a.blocklist);
    a.config.blocklist_path = a.blocklist;
  }
  a.config.validate();
  a.config.load_blocklist();
  const DocumentFilter filter(a.config);
  WorkerPool pool(worker_count(a.common));
  LineReader reader(a.in);
  RecordWriter writer(a.out);
  FilterReport report;

  struct Item {
    std::optional<CleanResult> result;
    std::string line;
  };
  map_ordered<Item>(
      reader, pool, a.common.batch_size,
      [&](const RawLine& raw) {
        Item item{filter.clean(parse<Document>(raw)), {}};
        if (item.result->accepted()) item.line = serialize(item.result->document());
        return item;
      },
      [&](Item&& item) {
        report.add(*item.result);
        if (item.result->accepted()) writer.write_line(item.line);
      });
  writer.commit();

  const auto j = report_json(report);
  if (!a.report.empty()) {
    RecordWriter rw(a.report);
    rw.write_line(j.dump(2));
    rw.commit();
  }
  print_json(out, j);
  return kExitOk;
}

// --- align --------------------------------------------------------------

struct AlignArgs {
  Common common;
  std::string docs;
  std::string triples;
  std::string out;
  LexiconOptions lexicon;
};

int run_align(AlignArgs& a, std::ostream& out) {
  require_file("--docs", a.docs);
  require_file("--triples", a.triples);
  const auto triples = read_records<KnowledgeTriple>(a.triples);
  const auto lexicon = EntityLexicon::build(triples, a.lexicon);
  WorkerPool pool(worker_count(a.common));
  LineReader reader(a.docs);
  RecordWriter writer(a.out);

  struct Item {
    std::size_t sentences = 0;
    std::size_t matches = 0;
    std::vector<std::string> lines;
  };
  std::size_t docs = 0;
  std::size_t sentences = 0;
  std::size_t matches = 0;
  map_ordered<Item>(
      reader, pool, a.common.batch_size,
      [&](const RawLine& raw) {
        Item item;
        for (const auto& s : split_sentences(parse<Document>(raw))) {
          ++item.sentences;
          if (auto aligned = align_sentence(s, lexicon)) {
            item.matches += aligned->triples.size();
            item.lines.push_back(serialize(*aligned));
          }
        }
        return item;
      },
      [&](Item&& item) {
        ++docs;
        sentences += item.sentences;
        matches += item.matches;
        for (const auto& l : item.lines) writer.write_line(l);
      });
  writer.commit();

  ordered_json j;
  j["documents"] = docs;
  j["sentences"] = sentences;
  j["aligned_sentences"] = writer.count();
  j["matches"] = matches;
  j["triples"] = triples.size();
  j["skipped_triples"] = lexicon.skipped_triples();
  print_json(out, j);
  return kExitOk;
}

// --- corrupt ------------------------------------------------------------

struct CorruptArgs {
  Common common;
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  CorruptionConfig config;
  std::string unit = "sentence";
  std::size_t max_tokens = 512;
  std::string vocab;
};

int run_corrupt(CorruptArgs& a, std::ostream& out) {
  require_file("--in", a.in);
  a.config.validate();
  const Tokenizer tokenizer = make_tokenizer(a.vocab);
  const bool per_sentence = a.unit == "sentence";
  WorkerPool pool(worker_count(a.common));
  LineReader reader(a.in);
  RecordWriter writer(a.out);

  struct Item {
    std::size_t units = 0;
    std::size_t skipped = 0;
    std::size_t tokens = 0;
    std::size_t masked = 0;
    std::vector<std::string> lines;
  };
  auto emit = [&](Item& item, const TokenSeq& seq, const std::string& doc_id,
                  std::initializer_list<SeedKey> keys) {
    const std::size_t limit = a.max_tokens ? a.max_tokens : seq.size();
    for (std::size_t w = 0, begin = 0; begin < seq.size(); ++w, begin += limit) {
      const std::size_t end = std::min(seq.size(), begin + limit);
      const TokenSeq part = (begin == 0 && end == seq.size()) ? seq : window(seq, begin, end);
      ++item.units;
      const std::size_t masked = masked_token_count(part.size(), a.config.mask_rate);
      if (masked == 0) {
        ++item.skipped;
        continue;
      }
      std::vector<SeedKey> k(keys);
      k.emplace_back(w);
      MaskedExample ex = corrupt(part, a.config, derive_seed(a.seed, k));
      ex.doc_id = doc_id;
      item.tokens += part.size();
      item.masked += masked;
      item.lines.push_back(serialize(ex));
    }
  };

  std::size_t units = 0;
  std::size_t skipped = 0;
  std::size_t tokens = 0;
  std::size_t masked = 0;
  map_ordered<Item>(
      reader, pool, a.common.batch_size,
      [&](const RawLine& raw) {
        const Document doc = parse<Document>(raw);
        Item item;
        if (per_sentence) {
          for (const auto& s : split_sentences(doc)) {
            emit(item, tokenizer.tokenize(s.text), doc.id, {"corrupt", doc.id, s.sent_index});
          }
        } else {
          emit(item, tokenizer.tokenize(doc.text), doc.id, {"corrupt", doc.id});
        }
        return item;
      },
      [&](Item&& item) {
        units += item.units;
        skipped += item.skipped;
        tokens += item.tokens;
        masked += item.masked;
        for (const auto& l : item.lines) writer.write_line(l);
      });
  writer.commit();

  ordered_json j;
  j["units"] = units;
  j["examples"] = writer.count();
  j["skipped_units"] = skipped;
  j["tokens"] = tokens;
  j["masked_tokens"] = masked;
  print_json(out, j);
  return kExitOk;
}

// --- ketm ---------------------------------------------------------------

struct KetmArgs {
  Common common;
  std::string aligned;
  std::string triples;
  std::string out;
  std::uint64_t seed = 0;
  KetmConfig config;
  std::string vocab;
};

int run_ketm(KetmArgs& a, std::ostream& out) {
  require_file("--aligned", a.aligned);
  require_file("--triples", a.triples);
  a.config.validate();
  const Tokenizer tokenizer = make_tokenizer(a.vocab);
  const auto triples = read_records<KnowledgeTriple>(a.triples);
  WorkerPool pool(worker_count(a.common));
  LineReader reader(a.aligned);
  RecordWriter writer(a.out);

  using Item = std::vector<std::string>;
  map_ordered<Item>(
      reader, pool, a.common.batch_size,
      [&](const RawLine& raw) {
        Item lines;
        for (const auto& ex : build_ketm_examples(parse<AlignedSentence>(raw), triples, a.config,
                                                  a.seed, tokenizer)) {
          lines.push_back(serialize(ex));
        }
        return lines;
      },
      [&](Item&& lines) {
        for (const auto& l : lines) writer.write_line(l);
      });
  writer.commit();

  ordered_json j;
  j["examples"] = writer.count();
  j["triples"] = triples.size();
  print_json(out, j);
  return kExitOk;
}

// --- mix ----------------------------------------------------------------

struct MixArgs {
  Common common;
  std::string corrupt;
  std::string ketm;
  std::string out;
  double ratio = -1.0;
  std::uint64_t seed = 0;
};

int run_mix(MixArgs& a, std::ostream& out) {
  require_file("--corrupt", a.corrupt);
  require_file("--ketm", a.ketm);
  if (!(a.ratio >= 0.0 && a.ratio <= 1.0)) throw ValidationError("--ratio must be in [0, 1]");
  RecordReader<MaskedExample> corrupt_in(a.corrupt);
  RecordReader<MaskedExample> ketm_in(a.ketm);
  RecordWriter writer(a.out);
  Rng rng(derive_seed(a.seed, {"mix"}));

  auto read = [](RecordReader<MaskedExample>& r, const std::string& path) {
    try {
      return r.next();
    } catch (const FormatError& e) {
      throw ValidationError(path + ": " + e.what());
    }
  };
  std::optional<MaskedExample> c = read(corrupt_in, a.corrupt);
  std::optional<MaskedExample> k = read(ketm_in, a.ketm);
  std::size_t n_corrupt = 0;
  std::size_t n_ketm = 0;
  while (c && k) {
    if (rng.uniform() < a.ratio) {
      writer.write(*k);
      ++n_ketm;
      k = read(ketm_in, a.ketm);
    } else {
      writer.write(*c);
      ++n_corrupt;
      c = read(corrupt_in, a.corrupt);
    }
  }
  // Drain whichever stream is left, unless the ratio never selects it.
  for (; c && a.ratio < 1.0; c = read(corrupt_in, a.corrupt), ++n_corrupt) writer.write(*c);
  for (; k && a.ratio > 0.0; k = read(ketm_in, a.ketm), ++n_ketm) writer.write(*k);
  writer.commit();

  ordered_json j;
  j["examples"] = writer.count();
  j["span_corruption"] = n_corrupt;
  j["ketm"] = n_ketm;
  print_json(out, j);
  return kExitOk;
}

// --- eval ---------------------------------------------------------------

struct EvalArgs {
  std::string task;
  std::string pred;
  std::string gold;
  std::string averaging = "micro";
  std::string relation_averaging = "macro";
  std::string null_label = "unknown";
  bool include_null = false;
  std::string labels;
  // leaderboard
  std::string scores;
  std::string out;
};

eval::Averaging parse_averaging(const std::string& s) {
  return s == "macro" ? eval::Averaging::macro : eval::Averaging::micro;
}

int run_eval(EvalArgs& a, std::ostream& out) {
  if (a.task.empty()) throw ValidationError("eval: --task is required");
  if (a.pred.empty()) throw ValidationError("eval: --pred is required");
  if (a.gold.empty()) throw ValidationError("eval: --gold is required");
  const eval::Task task = eval::parse_task(a.task);
  require_file("--pred", a.pred);
  require_file("--gold", a.gold);
  eval::EvalOptions opts;
  opts.multilabel_averaging = parse_averaging(a.averaging);
  opts.relation.averaging = parse_averaging(a.relation_averaging);
  opts.relation.null_label = a.null_label;
  opts.relation.include_null = a.include_null;
  if (!a.labels.empty()) {
    require_file("--labels", a.labels);
    opts.label_space = eval::read_label_space(a.labels);
  }
  const auto r = eval::evaluate_files(task, a.pred, a.gold, opts);

  ordered_json j;
  j["task"] = eval::to_string(task);
  j["metric"] = eval::to_string(eval::task_spec(task).metric);
  j["items"] = r.items;
  j["score"] = eval::round_half_up(r.score);
  if (r.rouge) {
    j["rouge1"] = eval::round_half_up(r.rouge->rouge1);
    j["rouge2"] = eval::round_half_up(r.rouge->rouge2);
    j["rouge_l"] = eval::round_half_up(r.rouge->rouge_l);
  }
  print_json(out, j);
  return kExitOk;
}

int run_leaderboard(EvalArgs& a, std::ostream& out) {
  require_file("--scores", a.scores);
  const auto models = eval::read_model_scores(a.scores);
  if (models.empty()) throw ValidationError("--scores: no model rows in '" + a.scores + "'");
  const auto boards = eval::aggregate(models);
  if (!a.out.empty()) {
    RecordWriter writer(a.out);
    for (auto board : {eval::Board::overall, eval::Board::understanding, eval::Board::generation}) {
      const auto& rows = boards.get(board).rows;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        writer.write_line(eval::serialize_row(rows[i], board, i + 1));
      }
    }
    writer.commit();
  }
  out << eval::render_leaderboards(boards);
  return kExitOk;
}

// --- stats --------------------------------------------------------------

struct StatsArgs {
  Common common;
  std::string in;
  std::string vocab;
};

// Power-of-two buckets: 0, 1, 2-3, 4-7, ...
std::size_t bucket_of(std::size_t v) {
  std::size_t b = 0;
  while (v) {
    ++b;
    v >>= 1;
  }
  return b;
}

std::string bucket_label(std::size_t b) {
  if (b == 0) return "0";
  const std::size_t lo = std::size_t{1} << (b - 1);
  const std::size_t hi = (lo << 1) - 1;
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

ordered_json histogram_json(const std::map<std::size_t, std::size_t>& h) {
  ordered_json j = ordered_json::object();
  for (const auto& [b, n] : h) j[bucket_label(b)] = n;
  return j;
}

int run_stats(StatsArgs& a, std::ostream& out) {
  require_file("--in", a.in);
  const Tokenizer tokenizer = make_tokenizer(a.vocab);
  WorkerPool pool(worker_count(a.common));
  LineReader reader(a.in);

  struct Item {
    Source source = Source::news;
    std::size_t chars = 0;
    std::vector<std::size_t> sentence_tokens;
  };
  std::size_t docs = 0;
  std::size_t chars = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::map<std::string, std::size_t> sources;
  for (Source s : {Source::announcement, Source::report, Source::news, Source::social}) {
    sources[std::string(to_string(s))] = 0;
  }
  std::map<std::size_t, std::size_t> sent_hist;
  std::map<std::size_t, std::size_t> tok_hist;
  map_ordered<Item>(
      reader, pool, a.common.batch_size,
      [&](const RawLine& raw) {
        const Document doc = parse<Document>(raw);
        Item item{doc.source, unicode::length(doc.text), {}};
        for (const auto& s : split_sentences(doc)) {
          item.sentence_tokens.push_back(tokenizer.tokenize(s.text).size());
        }
        return item;
      },
      [&](Item&& item) {
        ++docs;
        chars += item.chars;
        ++sources[std::string(to_string(item.source))];
        sentences += item.sentence_tokens.size();
        ++sent_hist[bucket_of(item.sentence_tokens.size())];
        for (std::size_t t : item.sentence_tokens) {
          tokens += t;
          ++tok_hist[bucket_of(t)];
        }
      });

  ordered_json j;
  j["documents"] = docs;
  j["characters"] = chars;
  j["sentences"] = sentences;
  j["tokens"] = tokens;
  j["sources"] = ordered_json::object();
  for (Source s : {Source::announcement, Source::report, Source::news, Source::social}) {
    const std::string name(to_string(s));
    j["sources"][name] = sources[name];
  }
  j["sentences_per_document"] = histogram_json(sent_hist);
  j["tokens_per_sentence"] = histogram_json(tok_hist);
  out << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finpipe: financial corpus cleaning, pre-training example generation and "
               "benchmark evaluation"};
  app.name("finpipe");
  app.set_version_flag("--version", std::string("finpipe ") + FINPIPE_VERSION);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  FilterArgs fa;
  auto* filter = app.add_subcommand("filter", "Clean and filter a document corpus");
  add_common(filter, fa.common);
  filter->add_option("--in", fa.in, "Input documents (.jsonl or .jsonl.gz)")->required();
  filter->add_option("--out", fa.out, "Output documents")->required();
  filter->add_option("--report", fa.report, "Also write the filter report to this file");
  filter->add_option("--min-doc-chars", fa.config.min_doc_chars, "Minimum document length")
      ->capture_default_str();
  filter->add_option("--min-line-chars", fa.config.min_line_chars, "Minimum line length")
      ->capture_default_str();
  filter->add_option("--require-terminal-punct", fa.config.require_terminal_punct,
                     "Drop lines without terminal punctuation")
      ->capture_default_str();
  filter->add_option("--cjk-ratio-min", fa.config.cjk_ratio_min,
                     "Minimum share of CJK ideographs per document")
      ->capture_default_str();
  filter->add_option("--dedup-lines", fa.config.dedup_lines, "Drop repeated lines")
      ->capture_default_str();
  filter->add_option("--blocklist", fa.blocklist, "Banned substrings, one per line");

  AlignArgs aa;
  auto* align = app.add_subcommand("align", "Align knowledge triples to corpus sentences");
  add_common(align, aa.common);
  align->add_option("--docs", aa.docs, "Input documents")->required();
  align->add_option("--triples", aa.triples, "Triples (JSONL or head<TAB>relation<TAB>tail)")
      ->required();
  align->add_option("--out", aa.out, "Output aligned sentences")->required();
  align->add_option("--min-entity-chars", aa.lexicon.min_entity_chars,
                    "Shortest entity kept in the lexicon")
      ->capture_default_str();

  CorruptArgs ca;
  auto* corrupt = app.add_subcommand("corrupt", "Generate span-corruption examples");
  add_common(corrupt, ca.common);
  corrupt->add_option("--in", ca.in, "Input documents")->required();
  corrupt->add_option("--out", ca.out, "Output examples")->required();
  corrupt->add_option("--seed", ca.seed, "Master seed")->capture_default_str();
  corrupt->add_option("--mask-rate", ca.config.mask_rate, "Fraction of tokens masked")
      ->capture_default_str();
  corrupt->add_option("--mean-span", ca.config.mean_span_length, "Mean span length in tokens")
      ->capture_default_str();
  corrupt->add_option("--sentinel-format", ca.config.sentinel_format, "Sentinel template")
      ->capture_default_str();
  corrupt->add_option("--max-sentinels", ca.config.max_sentinels, "Sentinel vocabulary size")
      ->capture_default_str();
  corrupt->add_option("--unit", ca.unit, "Corruption unit")
      ->check(CLI::IsMember({"sentence", "document"}))
      ->capture_default_str();
  corrupt->add_option("--max-tokens", ca.max_tokens,
                      "Split longer units into windows of this many tokens (0: never)")
      ->capture_default_str();
  corrupt->add_option("--vocab", ca.vocab, "Vocabulary file; character tokens when absent");

  KetmArgs ka;
  auto* ketm = app.add_subcommand("ketm", "Generate knowledge-enhanced triple-masking examples");
  add_common(ketm, ka.common);
  ketm->add_option("--aligned", ka.aligned, "Aligned sentences from 'align'")->required();
  ketm->add_option("--triples", ka.triples, "The triples file given to 'align'")->required();
  ketm->add_option("--out", ka.out, "Output examples")->required();
  ketm->add_option("--seed", ka.seed, "Master seed")->capture_default_str();
  ketm->add_option("--mask-rate", ka.config.sentence_mask_rate,
                   "Fraction of sentence tokens masked")
      ->capture_default_str();
  ketm->add_option("--mean-span", ka.config.corruption.mean_span_length,
                   "Mean span length in tokens")
      ->capture_default_str();
  ketm->add_option("--element-sep", ka.config.element_sep, "Separator between regions")
      ->capture_default_str();
  ketm->add_option("--sentinel-format", ka.config.corruption.sentinel_format, "Sentinel template")
      ->capture_default_str();
  ketm->add_option("--max-sentinels", ka.config.corruption.max_sentinels,
                   "Sentinel vocabulary size")
      ->capture_default_str();
  ketm->add_option("--vocab", ka.vocab, "Vocabulary file; character tokens when absent");

  MixArgs ma;
  auto* mix = app.add_subcommand("mix", "Interleave span-corruption and KETM examples");
  add_common(mix, ma.common);
  mix->add_option("--corrupt", ma.corrupt, "Span-corruption examples")->required();
  mix->add_option("--ketm", ma.ketm, "KETM examples")->required();
  mix->add_option("--ratio", ma.ratio, "Probability that an output slot takes a KETM example")
      ->required();
  mix->add_option("--out", ma.out, "Output examples")->required();
  mix->add_option("--seed", ma.seed, "Master seed")->capture_default_str();

  EvalArgs ea;
  auto* evalc = app.add_subcommand("eval", "Score predictions or build leaderboards");
  evalc->require_subcommand(0, 1);
  evalc->add_option("--task", ea.task, "FinNL, FinNA, FinRE, FinFE, FinQA or FinNSP");
  evalc->add_option("--pred", ea.pred, "Predictions: {\"id\", \"prediction\"} per line");
  evalc->add_option("--gold", ea.gold, "Gold labels: {\"id\", \"label\"} per line");
  evalc->add_option("--averaging", ea.averaging, "FinNL F1 averaging")
      ->check(CLI::IsMember({"micro", "macro"}))
      ->capture_default_str();
  evalc->add_option("--relation-averaging", ea.relation_averaging, "FinRE F1 averaging")
      ->check(CLI::IsMember({"micro", "macro"}))
      ->capture_default_str();
  evalc->add_option("--null-label", ea.null_label, "FinRE null relation label")
      ->capture_default_str();
  evalc->add_option("--include-null", ea.include_null, "Count the null relation as a class")
      ->capture_default_str();
  evalc->add_option("--labels", ea.labels, "Allowed labels for FinRE/FinFE, one per line");
  std::string eval_config;
  evalc->add_option("--config", eval_config, "Flat key=value file");
  auto* leaderboard = evalc->add_subcommand("leaderboard", "Aggregate per-task model scores");
  leaderboard->add_option("--scores", ea.scores,
                          "{\"model_name\", \"scores\": {task: score}} per line")
      ->required();
  leaderboard->add_option("--out", ea.out, "Also write leaderboard rows as JSONL");
  leaderboard->add_option("--config", eval_config, "Flat key=value file");

  StatsArgs sa;
  auto* stats = app.add_subcommand("stats", "Token, sentence and source histograms");
  add_common(stats, sa.common);
  stats->add_option("--in", sa.in, "Input documents")->required();
  stats->add_option("--vocab", sa.vocab, "Vocabulary file; character tokens when absent");

  try {
    auto args = expand_config(app, raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitValidation;
    }

    if (filter->parsed()) return run_filter(fa, out);
    if (align->parsed()) return run_align(aa, out);
    if (corrupt->parsed()) return run_corrupt(ca, out);
    if (ketm->parsed()) return run_ketm(ka, out);
    if (mix->parsed()) return run_mix(ma, out);
    if (leaderboard->parsed()) return run_leaderboard(ea, out);
    if (evalc->parsed()) return run_eval(ea, out);
    if (stats->parsed()) return run_stats(sa, out);
    return kExitValidation;
  } catch (const IoError& e) {
    err << "finpipe: error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "finpipe: error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "finpipe: error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace finpipe::cli
