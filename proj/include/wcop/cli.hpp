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

// Command-line front end. The wco executable is a thin wrapper over run().

#ifndef WCOP_CLI_HPP
#define WCOP_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wcop::cli {

enum ExitCode : int {
  kOk = 0,
  kHypothesisViolated = 1,
  kParseError = 2,
  kOracleMismatch = 3,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SuiteRow {
  std::string fixture;
  std::string quantity;
  std::string expected;
  std::string actual;
  std::string status;  // PASS, FAIL or KNOWN-DISCREPANCY
  std::string note;
};

/// The regression table over the embedded fixtures.
std::vector<SuiteRow> run_suite();

}  // namespace wcop::cli

#endif  // WCOP_CLI_HPP
