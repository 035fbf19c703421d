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

#include "finpipe/eval_files.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "finpipe/errors.hpp"
#include "finpipe/record_io.hpp"
#include "json.hpp"

namespace finpipe::eval {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::map<std::string, json> read_keyed(const std::filesystem::path& path, const char* value_key) {
  LineReader lines(path);
  std::map<std::string, json> out;
  while (auto line = lines.next()) {
    auto fail = [&](const std::string& what) {
      throw FormatError(lines.line_number(), lines.byte_offset(), path.string() + ": " + what);
    };
    json j;
    try {
      j = json::parse(*line);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed record: ") + e.what());
    }
    if (!j.is_object()) fail("expected a JSON object");
    auto id = j.find("id");
    if (id == j.end()) fail("missing field id");
    std::string key = id->is_string() ? id->get<std::string>() : id->dump();
    auto value = j.find(value_key);
    if (value == j.end()) fail(std::string("missing field ") + value_key);
    if (!out.emplace(key, *value).second) fail("duplicate id '" + key + "'");
  }
  return out;
}

std::string as_label(const json& v, const std::string& id) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ValidationError("id '" + id + "': expected a label string");
}

std::string as_text(const json& v, const std::string& id) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  throw ValidationError("id '" + id + "': expected a string");
}

std::set<std::string> as_label_set(const json& v, const std::string& id) {
  std::set<std::string> out;
  if (v.is_array()) {
    for (const auto& e : v) out.insert(as_label(e, id));
  } else if (!v.is_null()) {
    out.insert(as_label(v, id));
  }
  return out;
}

NspAnswer as_nsp(const json& v, const std::string& id) {
  if (!v.is_object()) throw ValidationError("id '" + id + "': expected an object");
  NspAnswer a;
  auto flag = v.find("is_negative");
  if (flag == v.end()) throw ValidationError("id '" + id + "': missing field is_negative");
  if (flag->is_boolean()) {
    a.is_negative = flag->get<bool>();
  } else if (flag->is_number_integer()) {
    a.is_negative = flag->get<long long>() != 0;
  } else {
    throw ValidationError("id '" + id + "': is_negative must be a boolean");
  }
  if (auto ents = v.find("subject_entities"); ents != v.end()) {
    a.subject_entities = as_label_set(*ents, id);
  }
  return a;
}

template <class T, class Convert>
std::map<std::string, T> convert(const std::map<std::string, json>& raw, Convert fn) {
  std::map<std::string, T> out;
  for (const auto& [id, v] : raw) out.emplace(id, fn(v, id));
  return out;
}

ordered_json optional_number(std::optional<double> v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

TaskResult evaluate_files(Task task, const std::filesystem::path& predictions,
                          const std::filesystem::path& gold, const EvalOptions& options) {
  const auto preds = read_keyed(predictions, "prediction");
  const auto golds = read_keyed(gold, "label");
  TaskResult r{task, 0.0, std::nullopt, golds.size()};
  switch (task_spec(task).metric) {
    case Metric::micro_f1_multilabel:
      r.score = score_multilabel_f1(convert<std::set<std::string>>(preds, as_label_set),
                                    convert<std::set<std::string>>(golds, as_label_set),
                                    options.multilabel_averaging);
      break;
    case Metric::rouge: {
      const auto s =
          score_rouge(convert<std::string>(preds, as_text), convert<std::string>(golds, as_text));
      r.rouge = s;
      r.score = s.combined;
      break;
    }
    case Metric::class_f1: {
      ClassF1Options opt = options.relation;
      if (options.label_space) opt.label_space = options.label_space;
      r.score = score_class_f1(convert<std::string>(preds, as_label),
                               convert<std::string>(golds, as_label), opt);
      break;
    }
    case Metric::accuracy:
      r.score = score_accuracy(convert<std::string>(preds, as_label),
                               convert<std::string>(golds, as_label), options.label_space);
      break;
    case Metric::qa_f1:
      r.score =
          score_qa_f1(convert<std::string>(preds, as_text), convert<std::string>(golds, as_text));
      break;
    case Metric::nsp_f1:
      r.score = score_nsp_f1(convert<NspAnswer>(preds, as_nsp), convert<NspAnswer>(golds, as_nsp));
      break;
  }
  return r;
}

std::vector<ModelScores> read_model_scores(const std::filesystem::path& path) {
  LineReader lines(path);
  std::vector<ModelScores> out;
  while (auto line = lines.next()) {
    auto fail = [&](const std::string& what) {
      throw FormatError(lines.line_number(), lines.byte_offset(), what);
    };
    json j;
    try {
      j = json::parse(*line);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed record: ") + e.what());
    }
    if (!j.is_object()) fail("expected a JSON object");
    ModelScores m;
    auto name = j.find("model_name");
    if (name == j.end() || !name->is_string()) fail("missing field model_name");
    m.model_name = name->get<std::string>();
    auto scores = j.find("scores");
    if (scores == j.end() || !scores->is_object()) fail("missing field scores");
    for (const auto& [task, value] : scores->items()) {
      if (value.is_null()) continue;  // "-" cells
      if (!value.is_number()) fail("score for " + task + " must be a number");
      const double v = value.get<double>();
      if (!(v >= 0.0 && v <= 100.0)) fail("score for " + task + " must be within [0, 100]");
      try {
        m.scores[parse_task(task)] = v;
      } catch (const ValidationError& e) {
        fail(e.what());
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string serialize(const ModelScores& scores) {
  ordered_json j;
  j["model_name"] = scores.model_name;
  j["scores"] = ordered_json::object();
  for (Task t : board_tasks(Board::overall)) {
    if (auto it = scores.scores.find(t); it != scores.scores.end()) {
      j["scores"][std::string(to_string(t))] = it->second;
    }
  }
  return j.dump();
}

std::string serialize_row(const LeaderboardRow& row, Board board, std::size_t rank) {
  ordered_json j;
  j["leaderboard"] = to_string(board);
  j["rank"] = rank;
  j["model_name"] = row.model_name;
  j["per_task"] = ordered_json::object();
  for (Task t : board_tasks(board)) {
    if (auto it = row.per_task.find(t); it != row.per_task.end()) {
      j["per_task"][std::string(to_string(t))] = it->second;
    }
  }
  j["un_avg"] = optional_number(row.un_avg);
  j["ge_avg"] = optional_number(row.ge_avg);
  j["avg"] = optional_number(row.avg);
  return j.dump(-1, ' ', false, json::error_handler_t::strict);
}

std::string render_leaderboards(const Leaderboards& boards) {
  std::ostringstream out;
  for (Board board : {Board::overall, Board::understanding, Board::generation}) {
    const auto& lb = boards.get(board);
    const auto tasks = board_tasks(board);
    std::size_t name_width = 5;
    for (const auto& row : lb.rows) name_width = std::max(name_width, row.model_name.size());

    out << to_string(board) << " leaderboard\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-4s %-*s", "rank", static_cast<int>(name_width), "model");
    out << buf;
    for (Task t : tasks) {
      std::snprintf(buf, sizeof buf, " %8s", std::string(to_string(t)).c_str());
      out << buf;
    }
    if (board == Board::overall) out << "   Un.Avg   Ge.Avg";
    out << "      Avg\n";
    std::size_t rank = 0;
    for (const auto& row : lb.rows) {
      std::snprintf(buf, sizeof buf, "%-4zu %-*s", ++rank, static_cast<int>(name_width),
                    row.model_name.c_str());
      out << buf;
      for (Task t : tasks) {
        std::snprintf(buf, sizeof buf, " %8s", fixed2(row.per_task.at(t)).c_str());
        out << buf;
      }
      if (board == Board::overall) {
        std::snprintf(buf, sizeof buf, " %8s %8s", fixed2(*row.un_avg).c_str(),
                      fixed2(*row.ge_avg).c_str());
        out << buf;
      }
      std::snprintf(buf, sizeof buf, " %8s", fixed2(*row.average(board)).c_str());
      out << buf << "\n";
    }
    out << "\n";
  }
  for (const auto& w : boards.warnings) out << "warning: " << w << "\n";
  return out.str();
}

std::set<std::string> read_label_space(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open label file '" + path.string() + "'");
  std::set<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) labels.insert(line);
  }
  return labels;
}

}  // namespace finpipe::eval
