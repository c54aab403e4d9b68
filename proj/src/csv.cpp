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

#include "entity_pulse/csv.hpp"

#include <sstream>

namespace entity_pulse::csv {

int Reader::get() {
  if (pos_ == size_) {
    if (eof_) return EOF;
    try {
      in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    } catch (const std::exception& e) {
      throw ReadError(std::string("read failure: ") + e.what(), line_, offset_);
    }
    size_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    if (in_.bad()) throw ReadError("input stream failure", line_, offset_);
    if (size_ == 0) {
      eof_ = true;
      return EOF;
    }
  }
  ++offset_;
  return static_cast<unsigned char>(buffer_[pos_++]);
}

int Reader::peek() {
  const int c = get();
  if (c != EOF) {
    --pos_;
    --offset_;
  }
  return c;
}

bool Reader::next(Row& row) {
  row.fields.clear();
  row.malformed = false;

  // Skip blank lines between records.
  int c = peek();
  while (c == '\n' || c == '\r') {
    get();
    if (c == '\n') ++line_;
    c = peek();
  }
  if (c == EOF) return false;

  row.line = line_;
  row.number = ++records_;
  std::string field;
  bool quoted = false;       // currently inside quotes
  bool was_quoted = false;   // current field started with a quote
  bool after_close = false;  // a closing quote has been seen in this field
  const std::size_t start_offset = offset_;

  for (;;) {
    c = get();
    if (c == EOF) {
      if (quoted) {
        throw ReadError("unterminated quoted field in record starting at line " +
                            std::to_string(row.line),
                        row.line, start_offset);
      }
      row.fields.push_back(std::move(field));
      return true;
    }
    if (quoted) {
      if (c == '"') {
        if (peek() == '"') {
          get();
          field.push_back('"');
        } else {
          quoted = false;
          after_close = true;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(static_cast<char>(c));
      }
      continue;
    }
    if (c == ',') {
      row.fields.push_back(std::move(field));
      field.clear();
      was_quoted = after_close = false;
      continue;
    }
    if (c == '\r' && peek() == '\n') continue;
    if (c == '\n') {
      ++line_;
      row.fields.push_back(std::move(field));
      return true;
    }
    if (c == '"') {
      if (field.empty() && !was_quoted) {
        quoted = was_quoted = true;
      } else {
        row.malformed = true;
        field.push_back('"');
      }
      continue;
    }
    if (after_close) row.malformed = true;
    field.push_back(static_cast<char>(c));
  }
}

bool split(std::string_view record, std::vector<std::string>& fields) {
  std::istringstream in{std::string(record)};
  Reader reader(in);
  Row row;
  try {
    if (!reader.next(row)) {
      fields.assign(1, std::string());
      return true;
    }
  } catch (const ReadError&) {
    return false;
  }
  fields = std::move(row.fields);
  Row extra;
  // A second record means an unquoted line break inside the string.
  if (reader.next(extra)) return false;
  return !row.malformed;
}

std::string quote(std::string_view field, bool force) {
  const bool needs = force || field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace entity_pulse::csv
