// Copyright 2026 The Entity Pulse Authors
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

// RFC-4180 record reading and field quoting.

#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace entity_pulse::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t number = 0;  // 1-based record number
  std::size_t line = 0;    // 1-based physical line the record starts on
  bool malformed = false;  // stray quote or text after a closing quote
};

/// Thrown when the input cannot be tokenized at all (unterminated quoted
/// field at end of input, stream failure).
class ReadError : public std::runtime_error {
 public:
  ReadError(const std::string& what, std::size_t line, std::size_t offset)
      : std::runtime_error(what), line_(line), offset_(offset) {}
  std::size_t line() const { return line_; }
  std::size_t offset() const { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

/// Streams records from an RFC-4180 source. Accepts LF and CRLF line ends;
/// quoted fields may span lines. Blank lines are skipped.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in), buffer_(1 << 16) {}

  /// Reads the next record into `row`. Returns false at end of input.
  bool next(Row& row);

 private:
  int get();
  int peek();

  std::istream& in_;
  std::vector<char> buffer_;
  std::size_t pos_ = 0;
  std::size_t size_ = 0;
  std::size_t offset_ = 0;
  std::size_t line_ = 1;
  std::size_t records_ = 0;
  bool eof_ = false;
};

/// Splits one record held in memory. Returns false for malformed quoting.
bool split(std::string_view record, std::vector<std::string>& fields);

/// Quotes `field` when it contains a separator, quote, CR or LF, or when
/// `force` is set.
std::string quote(std::string_view field, bool force = false);

}  // namespace entity_pulse::csv
