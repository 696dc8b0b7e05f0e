// Copyright 2026 The wcop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The .wco operator description format.
//
//   # comment
//   label = free text            (optional)
//   p = 2
//   weight {
//     except 1 = 0               (repeatable; `except 1..3 = 0` for a run)
//     tail from 4 : 1 + 1/n      (terms c, c/n, c/n^a; or `tail zero`)
//   }
//   map {
//     except 1..5 = 1
//     tail from 6 : identity     (identity | const k | n + b | a*n - b | n^e)
//   }
//
// Weight table entries missing below the tail start are zero; the map table
// must define every n below its tail start.

#ifndef WCOP_SPEC_FILE_HPP
#define WCOP_SPEC_FILE_HPP

#include <string>
#include <string_view>

#include "wcop/analysis.hpp"
#include "wcop/errors.hpp"

namespace wcop {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

struct SpecFile {
  std::string label;
  OperatorSpec op;
};

SpecFile parse_spec(std::string_view text);
std::string print_spec(const SpecFile& spec);

/// Parses "i:q, j:r, ..." into a finitely supported sequence.
SeqExpr parse_vector(std::string_view text);
/// Formats the nonzero entries of a finitely supported sequence as "i:q, ...";
/// a nonzero tail is appended in .wco term syntax.
std::string format_vector(const SeqExpr& f);

}  // namespace wcop

#endif  // WCOP_SPEC_FILE_HPP
