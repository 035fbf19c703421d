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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finpipe {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data or configuration violates a documented contract.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A record line could not be decoded. Carries the 1-based line number and
// the byte offset of the line start within the (uncompressed) stream.
class FormatError : public ValidationError {
 public:
  FormatError(std::size_t line, std::size_t byte_offset, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what),
        line_(line),
        byte_offset_(byte_offset) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t line_;
  std::size_t byte_offset_;
};

// Filesystem or stream failure; message names the path involved.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace finpipe
