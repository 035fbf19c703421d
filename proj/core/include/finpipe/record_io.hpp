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

// Streaming line-delimited record files. Paths ending in ".gz" are read and
// written gzip-compressed; plain files are read through the same path since
// zlib passes uncompressed input through unchanged.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finpipe/errors.hpp"
#include "finpipe/records.hpp"
#include "finpipe/unicode.hpp"

namespace finpipe {

bool is_gzip_path(const std::filesystem::path& path);

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;

  // Next non-blank line without its terminator, or nullopt at end of input.
  // The view stays valid until the next call.
  std::optional<std::string_view> next();

  // 1-based number and starting byte offset of the line last returned.
  std::size_t line_number() const { return line_number_; }
  std::size_t byte_offset() const { return line_offset_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  bool fill();

  struct Handle;
  std::unique_ptr<Handle> handle_;
  std::filesystem::path path_;
  std::string buffer_;
  std::size_t pos_ = 0;
  std::size_t buffer_offset_ = 0;  // stream offset of buffer_[0]
  std::string line_;  // assembly space for lines crossing a chunk boundary
  bool eof_ = false;
  std::size_t line_number_ = 0;
  std::size_t line_offset_ = 0;
};

// Best-effort extraction of the "id" value from a line that failed to decode.
std::optional<std::string> sniff_record_id(std::string_view line);

// Decodes one JSONL line, reporting any problem as a FormatError that names
// the line and, when it can be recovered, the record id.
template <class Record>
Record parse_record(std::string_view line, std::size_t line_number, std::size_t byte_offset) {
  if (!unicode::is_valid_utf8(line)) {
    std::string what = "invalid UTF-8";
    if (auto id = sniff_record_id(line)) what += " in record '" + *id + "'";
    throw FormatError(line_number, byte_offset, what);
  }
  Record record;
  try {
    deserialize(line, record);
  } catch (const FormatError&) {
    throw;
  } catch (const ValidationError& e) {
    throw FormatError(line_number, byte_offset, e.what());
  }
  return record;
}

template <class Record>
class RecordReader {
 public:
  explicit RecordReader(const std::filesystem::path& path) : lines_(path) {}

  std::optional<Record> next() {
    auto line = lines_.next();
    if (!line) return std::nullopt;
    return parse_record<Record>(*line, lines_.line_number(), lines_.byte_offset());
  }

  // Reads up to `max` records into `out` (cleared first). Returns false once
  // the stream is exhausted and nothing was read.
  bool next_batch(std::vector<Record>& out, std::size_t max) {
    out.clear();
    while (out.size() < max) {
      auto r = next();
      if (!r) break;
      out.push_back(std::move(*r));
    }
    return !out.empty();
  }

  std::size_t line_number() const { return lines_.line_number(); }

 private:
  LineReader lines_;
};

// Writes to "<path>.partial" and renames onto `path` in commit(). A writer
// destroyed without commit() removes its partial file.
class RecordWriter {
 public:
  explicit RecordWriter(std::filesystem::path path);
  ~RecordWriter();
  RecordWriter(const RecordWriter&) = delete;
  RecordWriter& operator=(const RecordWriter&) = delete;

  void write_line(std::string_view line);

  template <class Record>
  void write(const Record& record) {
    write_line(serialize(record));
  }

  void commit();
  std::size_t count() const { return count_; }

 private:
  struct Handle;
  std::unique_ptr<Handle> handle_;
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::size_t count_ = 0;
  bool committed_ = false;
};

template <class Record>
std::vector<Record> read_records(const std::filesystem::path& path) {
  RecordReader<Record> reader(path);
  std::vector<Record> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

inline std::vector<Document> read_documents(const std::filesystem::path& path) {
  return read_records<Document>(path);
}

template <class Range>
std::size_t write_records(const Range& records, const std::filesystem::path& path) {
  RecordWriter writer(path);
  for (const auto& r : records) writer.write(r);
  writer.commit();
  return writer.count();
}

}  // namespace finpipe
