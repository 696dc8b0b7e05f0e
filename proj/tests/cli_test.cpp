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

#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "wcop/cli.hpp"

namespace wcop {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture_path(const std::string& name) {
  return std::string(WCOP_FIXTURE_DIR) + "/" + name + ".wco";
}

TEST(Cli, AnalyzeText) {
  const Result r = run_cli({"analyze", fixture_path("index_three")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("fredholm index: 3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("kernel dim: 4"), std::string::npos);
}

TEST(Cli, AnalyzeJson) {
  const Result r = run_cli({"analyze", fixture_path("index_zero"), "--format", "json"});
  ASSERT_EQ(r.code, cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("fredholm_index"), 0);
  EXPECT_EQ(j.at("provenance").at("sha256").get<std::string>().size(), 64u);
}

TEST(Cli, Apply) {
  const Result r = run_cli({"apply", fixture_path("range_codim_one"), "--vector", "1:1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "6:7/6, 7:8/7\n");
}

TEST(Cli, KernelAndRange) {
  Result r = run_cli({"kernel", fixture_path("index_three"), "--basis", "10"});
  EXPECT_NE(r.out.find("basis indices: 2, 3, 4, 5"), std::string::npos) << r.out;
  r = run_cli({"range", fixture_path("range_codim_one"), "--member", "6:1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("member: no"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("range codim: 1"), std::string::npos);
}

TEST(Cli, HypothesisExit) {
  Result r = run_cli({"fredholm", fixture_path("vanishing_identity")});
  EXPECT_EQ(r.code, cli::kHypothesisViolated);
  EXPECT_NE(r.err.find("range_closed"), std::string::npos);
  r = run_cli({"kernel", fixture_path("index_three"), "--power", "2"});
  EXPECT_EQ(r.code, cli::kHypothesisViolated);
}

TEST(Cli, ParseErrorExit) {
  Result r = run_cli({"analyze", "/nonexistent.wco"});
  EXPECT_EQ(r.code, cli::kParseError);
  r = run_cli({"apply", fixture_path("index_three"), "--vector", "1:"});
  EXPECT_EQ(r.code, cli::kParseError);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, cli::kParseError);
  r = run_cli({"analyze", fixture_path("index_three"), "--format", "xml"});
  EXPECT_EQ(r.code, cli::kParseError);
  r = run_cli({"oracle", fixture_path("index_three"), "--windows", "16,32"});
  EXPECT_EQ(r.code, cli::kParseError);
}

TEST(Cli, Oracle) {
  const Result r = run_cli({"oracle", fixture_path("range_codim_one"), "--check", "range"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("stabilized: yes"), std::string::npos) << r.out;
}

TEST(Cli, Suite) {
  const Result r = run_cli({"paper-suite"});
  EXPECT_EQ(r.code, cli::kOk) << r.out;
  const std::vector<cli::SuiteRow> rows = cli::run_suite();
  EXPECT_GE(rows.size(), 8u);
  int known = 0;
  for (const auto& row : rows) {
    EXPECT_NE(row.status, "FAIL") << row.fixture << " " << row.quantity;
    known += row.status == "KNOWN-DISCREPANCY";
  }
  EXPECT_EQ(known, 2);
  EXPECT_NE(r.out.find("KNOWN-DISCREPANCY"), std::string::npos);
  // Deterministic output.
  EXPECT_EQ(run_cli({"paper-suite"}).out, r.out);
}

TEST(Cli, EnclosureWidth) {
  const Result coarse = run_cli(
      {"analyze", fixture_path("convergent_constant"), "--format", "json", "--enclosure-width", "1/100"});
  ASSERT_EQ(coarse.code, cli::kOk) << coarse.err;
  const Result bad = run_cli({"analyze", fixture_path("convergent_constant"), "--enclosure-width", "0"});
  EXPECT_EQ(bad.code, cli::kParseError);
}

}  // namespace
}  // namespace wcop
