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

#include "wcop/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

namespace wcop {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<Hypothesis, 5> kHypotheses = {
    Hypothesis::kSupportNotInvariant, Hypothesis::kUnbounded,
    Hypothesis::kCompositionUnbounded, Hypothesis::kRangeNotClosed,
    Hypothesis::kNotBoundedAwayFromZero};

Hypothesis hypothesis_from_name(std::string_view name) {
  for (Hypothesis h : kHypotheses) {
    if (hypothesis_check_name(h) == name) return h;
  }
  throw Error("unknown hypothesis flag: " + std::string(name));
}

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw Error(std::string("report: missing rational field '") + key + "'");
  }
  return parse_rational(j.at(key).get<std::string>());
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(std::string("report: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report: bad field '") + key + "': " + e.what());
  }
}

}  // namespace

std::string_view tool_version() { return WCOP_VERSION; }

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

Provenance make_provenance(std::string_view path, std::string_view contents) {
  return {std::string(path), sha256_hex(contents), std::string(tool_version())};
}

OracleSummary summarize(const WindowReport& r) {
  OracleSummary s;
  s.check = r.check == OracleCheck::kKernel ? "kernel" : r.check == OracleCheck::kRange ? "range" : "all";
  for (const auto& w : r.windows) {
    s.windows.push_back(w.window);
    s.zero_columns.push_back(w.zero_columns);
    s.range_deficiency.push_back(w.range_deficiency);
  }
  s.stabilized = r.stabilized;
  s.agrees = r.agrees;
  s.mismatches = r.mismatches;
  return s;
}

json to_json(const NormValue& v) {
  switch (v.kind) {
    case NormValue::Kind::kExact:
      return {{"kind", "exact"}, {"value", to_string(v.lo)}};
    case NormValue::Kind::kEnclosure:
      return {{"kind", "enclosure"}, {"lo", to_string(v.lo)}, {"hi", to_string(v.hi)}};
    case NormValue::Kind::kDivergent:
      return {{"kind", "divergent"}, {"lower_bound", to_string(v.lo)}};
  }
  return {};
}

NormValue norm_value_from_json(const json& j) {
  const std::string kind = field<std::string>(j, "kind");
  if (kind == "exact") return NormValue::exact(rational_field(j, "value"));
  if (kind == "enclosure") return NormValue::enclosure(rational_field(j, "lo"), rational_field(j, "hi"));
  if (kind == "divergent") return NormValue::divergent(rational_field(j, "lower_bound"));
  throw Error("report: unknown norm kind '" + kind + "'");
}

json to_json(const ExtNat& v) {
  if (v.is_infinite()) return "infinite";
  return v.value();
}

ExtNat ext_nat_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "infinite") return ExtNat::infinite();
  if (j.is_number_unsigned()) return ExtNat::finite(j.get<std::uint64_t>());
  throw Error("report: expected a non-negative integer or \"infinite\"");
}

json to_json(const ReportDocument& doc) {
  const AnalysisReport& r = doc.report;
  json j;
  j["label"] = doc.label;
  j["p"] = to_string(doc.p);
  j["bounded"] = r.bounded;
  j["fiber_sum_sup"] = to_json(r.fiber_sum_sup);
  j["norm"] = r.norm ? to_json(*r.norm) : json(nullptr);
  j["kernel_dim"] = to_json(r.kernel_dim);
  j["kernel_codim"] = to_json(r.kernel_codim);
  j["multi_fiber_set"] = r.multi_fiber_set.elements();
  j["range_codim"] = to_json(r.range_codim);
  j["closed_range"] = r.closed_range;
  j["fredholm_index"] = r.fredholm_index ? json(*r.fredholm_index) : json(nullptr);
  json flags = json::array();
  for (const auto& c : r.hypothesis_flags) {
    flags.push_back({{"hypothesis", std::string(hypothesis_check_name(c.which))}, {"holds", c.holds}});
  }
  j["hypothesis_flags"] = flags;
  if (doc.oracle) {
    const OracleSummary& o = *doc.oracle;
    j["oracle"] = {{"check", o.check},
                   {"windows", o.windows},
                   {"zero_columns", o.zero_columns},
                   {"range_deficiency", o.range_deficiency},
                   {"stabilized", o.stabilized},
                   {"agrees", o.agrees},
                   {"mismatches", o.mismatches}};
  } else {
    j["oracle"] = nullptr;
  }
  j["provenance"] = {{"path", doc.provenance.path},
                     {"sha256", doc.provenance.sha256},
                     {"tool_version", doc.provenance.tool_version}};
  return j;
}

ReportDocument report_from_json(const json& j) {
  if (!j.is_object()) throw Error("report: expected an object");
  ReportDocument doc;
  doc.label = field<std::string>(j, "label");
  doc.p = rational_field(j, "p");
  AnalysisReport& r = doc.report;
  r.bounded = field<bool>(j, "bounded");
  r.fiber_sum_sup = norm_value_from_json(j.at("fiber_sum_sup"));
  if (!j.at("norm").is_null()) r.norm = norm_value_from_json(j.at("norm"));
  r.kernel_dim = ext_nat_from_json(j.at("kernel_dim"));
  r.kernel_codim = ext_nat_from_json(j.at("kernel_codim"));
  r.multi_fiber_set = NatSet::finite(field<std::vector<Nat>>(j, "multi_fiber_set"));
  r.range_codim = ext_nat_from_json(j.at("range_codim"));
  r.closed_range = field<bool>(j, "closed_range");
  if (!j.at("fredholm_index").is_null()) r.fredholm_index = field<std::int64_t>(j, "fredholm_index");
  for (const auto& flag : j.at("hypothesis_flags")) {
    r.hypothesis_flags.push_back(
        {hypothesis_from_name(field<std::string>(flag, "hypothesis")), field<bool>(flag, "holds")});
  }
  if (j.contains("oracle") && !j.at("oracle").is_null()) {
    const json& o = j.at("oracle");
    OracleSummary s;
    s.check = field<std::string>(o, "check");
    s.windows = field<std::vector<Nat>>(o, "windows");
    s.zero_columns = field<std::vector<std::uint64_t>>(o, "zero_columns");
    s.range_deficiency = field<std::vector<std::uint64_t>>(o, "range_deficiency");
    s.stabilized = field<bool>(o, "stabilized");
    s.agrees = field<bool>(o, "agrees");
    s.mismatches = field<std::vector<std::string>>(o, "mismatches");
    doc.oracle = s;
  }
  const json& prov = j.at("provenance");
  doc.provenance = {field<std::string>(prov, "path"), field<std::string>(prov, "sha256"),
                    field<std::string>(prov, "tool_version")};
  return doc;
}

}  // namespace wcop
