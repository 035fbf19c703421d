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

// Benchmark metrics for the six financial tasks and leaderboard averages.
// Every metric returns a percentage in [0, 100], unrounded; round_half_up()
// is applied only for presentation. All metrics reject empty evaluation sets
// and prediction/gold id mismatches with a ValidationError.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finpipe::eval {

enum class Task { FinNL, FinNA, FinRE, FinFE, FinQA, FinNSP };

enum class Metric { micro_f1_multilabel, rouge, class_f1, accuracy, qa_f1, nsp_f1 };

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;

  bool operator==(const SplitSizes&) const = default;
};

struct TaskSpec {
  Task task;
  std::string_view name;
  Metric metric;
  SplitSizes splits;
  bool generation;  // belongs to the generation leaderboard
};

std::span<const TaskSpec> task_specs();
const TaskSpec& task_spec(Task task);
std::string_view to_string(Task task);
std::string_view to_string(Metric metric);
// Throws ValidationError for unknown names.
Task parse_task(std::string_view name);

enum class Averaging { micro, macro };

using LabelSetMap = std::map<std::string, std::set<std::string>>;
using LabelMap = std::map<std::string, std::string>;
using TextMap = std::map<std::string, std::string>;

struct NspAnswer {
  bool is_negative = false;
  std::set<std::string> subject_entities;

  bool operator==(const NspAnswer&) const = default;
};
using NspMap = std::map<std::string, NspAnswer>;

// Pooled (id, label) pairs for micro; mean per-label F1 over labels present
// in gold for macro. Both sides empty everywhere scores 100.
double score_multilabel_f1(const LabelSetMap& preds, const LabelSetMap& golds,
                           Averaging averaging = Averaging::micro);

struct RougeScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rouge_l = 0.0;
  double combined = 0.0;  // mean of the three
};

// Character-level ROUGE F-scores (whitespace ignored), averaged over items.
RougeScores score_rouge(const TextMap& preds, const TextMap& golds);

struct ClassF1Options {
  std::string null_label = "unknown";
  // Count the null relation as a class of its own in the average.
  bool include_null = false;
  Averaging averaging = Averaging::macro;
  // When set, any label outside it is an error.
  std::optional<std::set<std::string>> label_space;
};

// Macro: mean F1 over non-null classes present in gold. Null predictions
// still count as misses for the gold class. No non-null gold class at all
// scores 100 when every prediction is null as well, 0 otherwise.
double score_class_f1(const LabelMap& preds, const LabelMap& golds,
                      const ClassF1Options& options = {});

double score_accuracy(const LabelMap& preds, const LabelMap& golds,
                      const std::optional<std::set<std::string>>& label_space = std::nullopt);

// Bag-of-characters F1 per item, averaged. Both strings empty scores 100.
double score_qa_f1(const TextMap& preds, const TextMap& golds);

// Micro-F1 over one negativity unit per item (correct when the flag
// matches) plus one unit per subject entity.
double score_nsp_f1(const NspMap& preds, const NspMap& golds);

// Building blocks, exposed for testing.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);
std::u32string metric_chars(std::string_view text);
double rouge_n_f(std::u32string_view pred, std::u32string_view gold, std::size_t n);
double rouge_l_f(std::u32string_view pred, std::u32string_view gold);
double char_f1(std::u32string_view pred, std::u32string_view gold);

// Half-up rounding at `decimals` places, tolerant of binary representation
// error (59.705 rounds to 59.71).
double round_half_up(double value, int decimals = 2);

enum class Board { overall, understanding, generation };

std::string_view to_string(Board board);
std::span<const Task> board_tasks(Board board);

struct ModelScores {
  std::string model_name;
  std::map<Task, double> scores;
};

// Unrounded mean over the board's tasks, or nullopt when one is missing.
std::optional<double> board_average(const ModelScores& scores, Board board);

struct LeaderboardRow {
  std::string model_name;
  std::map<Task, double> per_task;  // rounded
  std::optional<double> un_avg;     // rounded
  std::optional<double> ge_avg;
  std::optional<double> avg;

  std::optional<double> average(Board board) const;
};

struct Leaderboard {
  Board board;
  std::vector<LeaderboardRow> rows;  // best first, ties by model name
};

struct Leaderboards {
  Leaderboard overall{Board::overall, {}};
  Leaderboard understanding{Board::understanding, {}};
  Leaderboard generation{Board::generation, {}};
  std::vector<std::string> warnings;

  const Leaderboard& get(Board board) const;
};

// Models missing a task of a board are left off that board with a warning.
Leaderboards aggregate(std::span<const ModelScores> models);

}  // namespace finpipe::eval
