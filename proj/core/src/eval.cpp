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

#include "finpipe/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "finpipe/errors.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe::eval {

namespace {

constexpr std::array<TaskSpec, 6> kTasks{{
    {Task::FinNL, "FinNL", Metric::micro_f1_multilabel, {8000, 1000, 1000}, false},
    {Task::FinNA, "FinNA", Metric::rouge, {24000, 3000, 3000}, true},
    {Task::FinRE, "FinRE", Metric::class_f1, {7454, 1489, 3727}, false},
    {Task::FinFE, "FinFE", Metric::accuracy, {8000, 1000, 1000}, false},
    {Task::FinQA, "FinQA", Metric::qa_f1, {16000, 2000, 2000}, true},
    {Task::FinNSP, "FinNSP", Metric::nsp_f1, {4800, 600, 600}, false},
}};

// Column order of the published results table.
constexpr std::array<Task, 6> kOverall{Task::FinFE, Task::FinNL, Task::FinNSP,
                                       Task::FinRE, Task::FinNA, Task::FinQA};
constexpr std::array<Task, 4> kUnderstanding{Task::FinFE, Task::FinNL, Task::FinNSP,
                                             Task::FinRE};
constexpr std::array<Task, 2> kGeneration{Task::FinNA, Task::FinQA};

template <class Map>
void check_ids(const Map& preds, const Map& golds) {
  if (golds.empty()) throw ValidationError("empty evaluation set");
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
  for (const auto& [id, v] : golds) {
    if (!preds.contains(id)) missing.push_back(id);
  }
  for (const auto& [id, v] : preds) {
    if (!golds.contains(id)) unexpected.push_back(id);
  }
  if (missing.empty() && unexpected.empty()) return;
  auto list = [](const std::vector<std::string>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size() && i < 10; ++i) {
      if (i) s += ", ";
      s += ids[i];
    }
    if (ids.size() > 10) s += ", ... (" + std::to_string(ids.size()) + " total)";
    return s;
  };
  std::string what = "prediction ids do not match gold ids";
  if (!missing.empty()) what += "; missing predictions: " + list(missing);
  if (!unexpected.empty()) what += "; unexpected ids: " + list(unexpected);
  throw ValidationError(what);
}

double f1(double tp, double n_pred, double n_gold) {
  const double p = n_pred > 0 ? tp / n_pred : 0.0;
  const double r = n_gold > 0 ? tp / n_gold : 0.0;
  return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

// Sorted n-grams as views into `s`.
std::vector<std::u32string_view> ngrams(std::u32string_view s, std::size_t n) {
  std::vector<std::u32string_view> out;
  if (s.size() < n) return out;
  out.reserve(s.size() - n + 1);
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.push_back(s.substr(i, n));
  std::sort(out.begin(), out.end());
  return out;
}

// Multiset intersection size of two sorted sequences.
template <class T>
std::size_t overlap(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

void check_label(const std::optional<std::set<std::string>>& space, const std::string& label,
                 const std::string& id) {
  if (space && !space->contains(label)) {
    throw ValidationError("unknown label '" + label + "' for id '" + id + "'");
  }
}

}  // namespace

std::span<const TaskSpec> task_specs() { return kTasks; }

const TaskSpec& task_spec(Task task) {
  for (const auto& spec : kTasks) {
    if (spec.task == task) return spec;
  }
  throw ValidationError("unknown task");
}

std::string_view to_string(Task task) { return task_spec(task).name; }

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::micro_f1_multilabel: return "micro_f1_multilabel";
    case Metric::rouge: return "rouge";
    case Metric::class_f1: return "class_f1";
    case Metric::accuracy: return "accuracy";
    case Metric::qa_f1: return "qa_f1";
    case Metric::nsp_f1: return "nsp_f1";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (const auto& spec : kTasks) {
    if (spec.name == name) return spec.task;
  }
  throw ValidationError("unknown task '" + std::string(name) +
                        "' (expected FinNL, FinNA, FinRE, FinFE, FinQA or FinNSP)");
}

double score_multilabel_f1(const LabelSetMap& preds, const LabelSetMap& golds,
                           Averaging averaging) {
  check_ids(preds, golds);
  if (averaging == Averaging::micro) {
    std::size_t tp = 0;
    std::size_t n_pred = 0;
    std::size_t n_gold = 0;
    for (const auto& [id, gold] : golds) {
      const auto& pred = preds.at(id);
      n_pred += pred.size();
      n_gold += gold.size();
      for (const auto& label : pred) tp += gold.count(label);
    }
    if (n_pred == 0 && n_gold == 0) return 100.0;
    return 100.0 * f1(double(tp), double(n_pred), double(n_gold));
  }
  std::map<std::string, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  std::set<std::string> gold_labels;
  bool any_pred = false;
  for (const auto& [id, gold] : golds) {
    const auto& pred = preds.at(id);
    any_pred = any_pred || !pred.empty();
    for (const auto& label : gold) {
      gold_labels.insert(label);
      ++counts[label][pred.contains(label) ? 0 : 2];
    }
    for (const auto& label : pred) {
      if (!gold.contains(label)) ++counts[label][1];
    }
  }
  if (gold_labels.empty()) return any_pred ? 0.0 : 100.0;
  double sum = 0.0;
  for (const auto& label : gold_labels) {
    const auto& c = counts[label];
    sum += 2.0 * c[0] / (2.0 * c[0] + c[1] + c[2]);
  }
  return 100.0 * sum / gold_labels.size();
}

std::u32string metric_chars(std::string_view text) {
  std::u32string out;
  for (char32_t cp : unicode::decode_or_throw(text)) {
    if (!unicode::is_whitespace(cp)) out.push_back(cp);
  }
  return out;
}

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_n_f(std::u32string_view pred, std::u32string_view gold, std::size_t n) {
  const auto p = ngrams(pred, n);
  const auto g = ngrams(gold, n);
  if (p.empty() && g.empty()) return pred == gold ? 1.0 : 0.0;
  return f1(double(overlap(p, g)), double(p.size()), double(g.size()));
}

double rouge_l_f(std::u32string_view pred, std::u32string_view gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  return f1(double(lcs_length(pred, gold)), double(pred.size()), double(gold.size()));
}

double char_f1(std::u32string_view pred, std::u32string_view gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  std::vector<char32_t> p(pred.begin(), pred.end());
  std::vector<char32_t> g(gold.begin(), gold.end());
  std::sort(p.begin(), p.end());
  std::sort(g.begin(), g.end());
  return f1(double(overlap(p, g)), double(p.size()), double(g.size()));
}

RougeScores score_rouge(const TextMap& preds, const TextMap& golds) {
  check_ids(preds, golds);
  RougeScores s;
  for (const auto& [id, gold_text] : golds) {
    const auto pred = metric_chars(preds.at(id));
    const auto gold = metric_chars(gold_text);
    s.rouge1 += rouge_n_f(pred, gold, 1);
    s.rouge2 += rouge_n_f(pred, gold, 2);
    s.rouge_l += rouge_l_f(pred, gold);
  }
  const double n = static_cast<double>(golds.size());
  s.rouge1 = 100.0 * s.rouge1 / n;
  s.rouge2 = 100.0 * s.rouge2 / n;
  s.rouge_l = 100.0 * s.rouge_l / n;
  s.combined = (s.rouge1 + s.rouge2 + s.rouge_l) / 3.0;
  return s;
}

double score_class_f1(const LabelMap& preds, const LabelMap& golds,
                      const ClassF1Options& options) {
  check_ids(preds, golds);
  for (const auto& [id, gold] : golds) {
    check_label(options.label_space, gold, id);
    check_label(options.label_space, preds.at(id), id);
  }
  auto counted = [&](const std::string& label) {
    return options.include_null || label != options.null_label;
  };

  if (options.averaging == Averaging::micro) {
    std::size_t tp = 0;
    std::size_t n_pred = 0;
    std::size_t n_gold = 0;
    for (const auto& [id, gold] : golds) {
      const auto& pred = preds.at(id);
      if (counted(pred)) ++n_pred;
      if (counted(gold)) ++n_gold;
      if (counted(gold) && pred == gold) ++tp;
    }
    if (n_pred == 0 && n_gold == 0) return 100.0;
    return 100.0 * f1(double(tp), double(n_pred), double(n_gold));
  }

  std::map<std::string, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  std::set<std::string> classes;
  bool any_counted_pred = false;
  for (const auto& [id, gold] : golds) {
    const auto& pred = preds.at(id);
    if (counted(gold)) classes.insert(gold);
    if (counted(pred)) any_counted_pred = true;
    if (pred == gold) {
      ++counts[gold][0];
    } else {
      ++counts[pred][1];
      ++counts[gold][2];
    }
  }
  if (classes.empty()) return any_counted_pred ? 0.0 : 100.0;
  double sum = 0.0;
  for (const auto& c : classes) {
    const auto& k = counts[c];
    sum += 2.0 * k[0] / (2.0 * k[0] + k[1] + k[2]);
  }
  return 100.0 * sum / classes.size();
}

double score_accuracy(const LabelMap& preds, const LabelMap& golds,
                      const std::optional<std::set<std::string>>& label_space) {
  check_ids(preds, golds);
  std::size_t correct = 0;
  for (const auto& [id, gold] : golds) {
    const auto& pred = preds.at(id);
    check_label(label_space, gold, id);
    check_label(label_space, pred, id);
    if (pred == gold) ++correct;
  }
  return 100.0 * double(correct) / double(golds.size());
}

double score_qa_f1(const TextMap& preds, const TextMap& golds) {
  check_ids(preds, golds);
  double sum = 0.0;
  for (const auto& [id, gold] : golds) {
    sum += char_f1(metric_chars(preds.at(id)), metric_chars(gold));
  }
  return 100.0 * sum / double(golds.size());
}

double score_nsp_f1(const NspMap& preds, const NspMap& golds) {
  check_ids(preds, golds);
  std::size_t tp = 0;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;
  for (const auto& [id, gold] : golds) {
    const auto& pred = preds.at(id);
    n_pred += 1 + pred.subject_entities.size();
    n_gold += 1 + gold.subject_entities.size();
    if (pred.is_negative == gold.is_negative) ++tp;
    for (const auto& e : pred.subject_entities) tp += gold.subject_entities.count(e);
  }
  return 100.0 * f1(double(tp), double(n_pred), double(n_gold));
}

double round_half_up(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5 + 1e-7) / scale;
}

std::string_view to_string(Board board) {
  switch (board) {
    case Board::overall: return "overall";
    case Board::understanding: return "understanding";
    case Board::generation: return "generation";
  }
  return "overall";
}

std::span<const Task> board_tasks(Board board) {
  switch (board) {
    case Board::understanding: return kUnderstanding;
    case Board::generation: return kGeneration;
    case Board::overall: break;
  }
  return kOverall;
}

std::optional<double> board_average(const ModelScores& scores, Board board) {
  const auto tasks = board_tasks(board);
  double sum = 0.0;
  for (Task t : tasks) {
    auto it = scores.scores.find(t);
    if (it == scores.scores.end()) return std::nullopt;
    sum += it->second;
  }
  return sum / static_cast<double>(tasks.size());
}

std::optional<double> LeaderboardRow::average(Board board) const {
  switch (board) {
    case Board::understanding: return un_avg;
    case Board::generation: return ge_avg;
    case Board::overall: break;
  }
  return avg;
}

const Leaderboard& Leaderboards::get(Board board) const {
  switch (board) {
    case Board::understanding: return understanding;
    case Board::generation: return generation;
    case Board::overall: break;
  }
  return overall;
}

Leaderboards aggregate(std::span<const ModelScores> models) {
  Leaderboards out;
  auto rounded = [](std::optional<double> v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return round_half_up(*v);
  };
  for (const auto& model : models) {
    LeaderboardRow row;
    row.model_name = model.model_name;
    for (const auto& [task, score] : model.scores) row.per_task[task] = round_half_up(score);
    row.un_avg = rounded(board_average(model, Board::understanding));
    row.ge_avg = rounded(board_average(model, Board::generation));
    row.avg = rounded(board_average(model, Board::overall));
    for (Board board : {Board::overall, Board::understanding, Board::generation}) {
      if (row.average(board)) {
        Leaderboard& lb = board == Board::overall         ? out.overall
                          : board == Board::understanding ? out.understanding
                                                          : out.generation;
        lb.rows.push_back(row);
      } else {
        std::string missing;
        for (Task t : board_tasks(board)) {
          if (!model.scores.contains(t)) {
            if (!missing.empty()) missing += ", ";
            missing += to_string(t);
          }
        }
        out.warnings.push_back("model '" + model.model_name + "' has no score for " + missing +
                               "; left off the " + std::string(to_string(board)) +
                               " leaderboard");
      }
    }
  }
  for (Leaderboard* lb : {&out.overall, &out.understanding, &out.generation}) {
    const Board board = lb->board;
    std::stable_sort(lb->rows.begin(), lb->rows.end(),
                     [board](const LeaderboardRow& a, const LeaderboardRow& b) {
                       const double x = *a.average(board);
                       const double y = *b.average(board);
                       if (x != y) return x > y;
                       return a.model_name < b.model_name;
                     });
  }
  return out;
}

}  // namespace finpipe::eval
