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

// File surfaces of the evaluation harness.
//
// Prediction file: one {"id": ..., "prediction": ...} object per line.
// Gold file:       one {"id": ..., "label": ...} object per line.
// The value shape depends on the task:
//   FinNL          list of label strings (a bare string is a one-label list)
//   FinNA, FinQA   string
//   FinRE, FinFE   label string (integers are accepted and stringified)
//   FinNSP         {"is_negative": bool, "subject_entities": [string, ...]}
//
// Scores file (leaderboard input): one
//   {"model_name": ..., "scores": {"FinFE": 79.05, ...}}
// object per line. Leaderboard output lines carry "leaderboard", "rank",
// "model_name", "per_task", "un_avg", "ge_avg" and "avg" (null when absent).

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "finpipe/eval.hpp"

namespace finpipe::eval {

struct EvalOptions {
  Averaging multilabel_averaging = Averaging::micro;
  ClassF1Options relation;
  std::optional<std::set<std::string>> label_space;  // FinFE / FinRE
};

struct TaskResult {
  Task task;
  double score = 0.0;  // the reported number for the task
  std::optional<RougeScores> rouge;
  std::size_t items = 0;
};

TaskResult evaluate_files(Task task, const std::filesystem::path& predictions,
                          const std::filesystem::path& gold, const EvalOptions& options = {});

std::vector<ModelScores> read_model_scores(const std::filesystem::path& path);
std::string serialize(const ModelScores& scores);

std::string serialize_row(const LeaderboardRow& row, Board board, std::size_t rank);

// Fixed-width text tables, one per leaderboard, followed by warnings.
std::string render_leaderboards(const Leaderboards& boards);

// Reads a label-space file: one label per line.
std::set<std::string> read_label_space(const std::filesystem::path& path);

}  // namespace finpipe::eval
