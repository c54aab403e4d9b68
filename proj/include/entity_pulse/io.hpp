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

#pragma once

#include <filesystem>
#include <functional>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace entity_pulse {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Opens `path` for reading. Files ending in `.gz` are decompressed
/// transparently. Throws IoError when the file cannot be opened.
std::unique_ptr<std::istream> open_input(const std::filesystem::path& path);

/// Writes through a sibling temporary file and renames it over `path`, so
/// readers never observe a partially written file. If `writer` throws, the
/// temporary is removed and `path` is left untouched.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace entity_pulse
