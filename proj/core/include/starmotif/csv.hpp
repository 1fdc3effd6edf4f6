// Copyright 2026 The starmotif Authors
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
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace starmotif::csv {

// Splits one CSV record. Double-quoted fields may contain commas and ""
// escapes; records spanning lines are not supported.
std::vector<std::string> split(std::string_view line);

// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

// Reads a header-led CSV stream, skipping blank lines.
class Reader {
 public:
  explicit Reader(std::istream& in);

  // False (and no header) for an empty stream.
  bool has_header() const { return !header_.empty(); }
  const std::vector<std::string>& header() const { return header_; }
  std::optional<std::size_t> column(std::string_view name) const;

  // Advances to the next non-blank record. `line()` is 1-based and counts
  // the header.
  bool next(std::vector<std::string>& fields);
  std::size_t line() const { return line_; }

 private:
  bool read_line(std::string& out);

  std::istream& in_;
  std::vector<std::string> header_;
  std::size_t line_ = 0;
};

}  // namespace starmotif::csv
