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

#include "finpipe/record_io.hpp"

#include <zlib.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <system_error>

namespace finpipe {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kReadChunk = 1 << 20;

std::string describe_errno() { return std::strerror(errno); }

}  // namespace

bool is_gzip_path(const fs::path& path) { return path.extension() == ".gz"; }

struct LineReader::Handle {
  gzFile file = nullptr;
  ~Handle() {
    if (file != nullptr) gzclose(file);
  }
};

LineReader::LineReader(const fs::path& path) : handle_(std::make_unique<Handle>()), path_(path) {
  handle_->file = gzopen(path.c_str(), "rb");
  if (handle_->file == nullptr) {
    throw IoError("cannot open '" + path.string() + "': " + describe_errno());
  }
  gzbuffer(handle_->file, 1 << 18);
}

LineReader::~LineReader() = default;
LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::fill() {
  if (eof_) return false;
  buffer_offset_ += buffer_.size();
  buffer_.resize(kReadChunk);
  const int n = gzread(handle_->file, buffer_.data(), static_cast<unsigned>(kReadChunk));
  if (n < 0) {
    int code = 0;
    const char* msg = gzerror(handle_->file, &code);
    throw IoError("read error in '" + path_.string() + "': " + (msg ? msg : "unknown"));
  }
  buffer_.resize(static_cast<std::size_t>(n));
  pos_ = 0;
  if (n == 0) eof_ = true;
  return n > 0;
}

std::optional<std::string_view> LineReader::next() {
  while (true) {
    line_.clear();
    const std::size_t start = buffer_offset_ + pos_;
    bool spilled = false;
    std::string_view line;
    while (true) {
      const std::size_t nl = buffer_.find('\n', pos_);
      if (nl != std::string::npos) {
        if (spilled) {
          line_.append(buffer_, pos_, nl - pos_);
          line = line_;
        } else {
          line = std::string_view(buffer_).substr(pos_, nl - pos_);
        }
        pos_ = nl + 1;
        break;
      }
      line_.append(buffer_, pos_, std::string::npos);
      spilled = true;
      pos_ = buffer_.size();
      if (!fill()) {
        if (line_.empty()) return std::nullopt;
        line = line_;
        break;
      }
    }
    ++line_number_;
    line_offset_ = start;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    return line;
  }
}

struct RecordWriter::Handle {
  std::FILE* plain = nullptr;
  gzFile gz = nullptr;

  void close() {
    if (plain != nullptr) {
      std::fclose(plain);
      plain = nullptr;
    }
    if (gz != nullptr) {
      gzclose(gz);
      gz = nullptr;
    }
  }
  ~Handle() { close(); }
};

RecordWriter::RecordWriter(fs::path path)
    : handle_(std::make_unique<Handle>()), path_(std::move(path)) {
  partial_ = path_;
  partial_ += ".partial";
  if (path_.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path_.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory '" + path_.parent_path().string() +
                    "': " + ec.message());
    }
  }
  if (is_gzip_path(path_)) {
    handle_->gz = gzopen(partial_.c_str(), "wb6");
    if (handle_->gz == nullptr) {
      throw IoError("cannot open '" + partial_.string() + "' for writing: " + describe_errno());
    }
  } else {
    handle_->plain = std::fopen(partial_.c_str(), "wb");
    if (handle_->plain == nullptr) {
      throw IoError("cannot open '" + partial_.string() + "' for writing: " + describe_errno());
    }
    std::setvbuf(handle_->plain, nullptr, _IOFBF, 1 << 20);
  }
}

RecordWriter::~RecordWriter() {
  if (!committed_) {
    handle_->close();
    std::error_code ec;
    fs::remove(partial_, ec);
  }
}

void RecordWriter::write_line(std::string_view line) {
  bool ok;
  if (handle_->gz != nullptr) {
    ok = line.empty() ||
         gzwrite(handle_->gz, line.data(), static_cast<unsigned>(line.size())) ==
             static_cast<int>(line.size());
    ok = ok && gzputc(handle_->gz, '\n') == '\n';
  } else {
    ok = std::fwrite(line.data(), 1, line.size(), handle_->plain) == line.size();
    ok = ok && std::fputc('\n', handle_->plain) == '\n';
  }
  if (!ok) throw IoError("write failed for '" + partial_.string() + "': " + describe_errno());
  ++count_;
}

void RecordWriter::commit() {
  if (committed_) return;
  bool ok = true;
  if (handle_->gz != nullptr) {
    ok = gzclose(handle_->gz) == Z_OK;
    handle_->gz = nullptr;
  } else if (handle_->plain != nullptr) {
    ok = std::fclose(handle_->plain) == 0;
    handle_->plain = nullptr;
  }
  if (!ok) throw IoError("cannot finish writing '" + partial_.string() + "': " + describe_errno());
  std::error_code ec;
  fs::rename(partial_, path_, ec);
  if (ec) throw IoError("cannot rename '" + partial_.string() + "' to '" + path_.string() +
                        "': " + ec.message());
  committed_ = true;
}

std::optional<std::string> sniff_record_id(std::string_view line) {
  const std::size_t key = line.find("\"id\"");
  if (key == std::string_view::npos) return std::nullopt;
  std::size_t i = line.find(':', key + 4);
  if (i == std::string_view::npos) return std::nullopt;
  i = line.find('"', i);
  if (i == std::string_view::npos) return std::nullopt;
  const std::size_t end = line.find('"', i + 1);
  if (end == std::string_view::npos) return std::nullopt;
  std::string id(line.substr(i + 1, end - i - 1));
  if (!unicode::is_valid_utf8(id)) return std::nullopt;
  return id;
}

}  // namespace finpipe
