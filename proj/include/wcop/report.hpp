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

// JSON form of an analysis report. Rationals travel as strings ("7/6"),
// infinite dimensions as the string "infinite". docs/report.schema.json is
// the published schema.

#ifndef WCOP_REPORT_HPP
#define WCOP_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wcop/analysis.hpp"
#include "wcop/oracle.hpp"

namespace wcop {

std::string_view tool_version();

struct OracleSummary {
  std::string check;  // kernel | range | all
  std::vector<Nat> windows;
  std::vector<std::uint64_t> zero_columns;
  std::vector<std::uint64_t> range_deficiency;
  bool stabilized = false;
  bool agrees = true;
  std::vector<std::string> mismatches;
  friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

OracleSummary summarize(const WindowReport& r);

struct Provenance {
  std::string path;
  std::string sha256;  // of the input bytes
  std::string tool_version;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

Provenance make_provenance(std::string_view path, std::string_view contents);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

struct ReportDocument {
  std::string label;
  Rational p = 1;
  AnalysisReport report;
  std::optional<OracleSummary> oracle;
  Provenance provenance;
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

nlohmann::ordered_json to_json(const NormValue& v);
NormValue norm_value_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json to_json(const ExtNat& v);
ExtNat ext_nat_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ReportDocument& doc);
/// Throws Error on a malformed document.
ReportDocument report_from_json(const nlohmann::ordered_json& j);

}  // namespace wcop

#endif  // WCOP_REPORT_HPP
