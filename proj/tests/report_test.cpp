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

#include <random>

#include "test_support.hpp"
#include "wcop/fixtures.hpp"
#include "wcop/report.hpp"

namespace wcop {
namespace {

ReportDocument document_for(const OperatorSpec& op, std::string label) {
  ReportDocument doc;
  doc.label = std::move(label);
  doc.p = op.p;
  doc.report = analyze(op);
  doc.provenance = make_provenance("in-memory", print_spec({doc.label, op}));
  return doc;
}

TEST(Report, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Report, FieldShapes) {
  const nlohmann::ordered_json j = to_json(document_for(load_fixture("range_codim_one").op, "x"));
  EXPECT_EQ(j.at("range_codim"), 1);
  EXPECT_EQ(j.at("kernel_dim"), 7);  // complement of {1} U {n >= 9}
  EXPECT_EQ(j.at("kernel_codim"), "infinite");
  EXPECT_EQ(j.at("fiber_sum_sup").at("kind"), "exact");
  EXPECT_EQ(j.at("p"), "2");
  EXPECT_TRUE(j.at("oracle").is_null());
  EXPECT_EQ(j.at("fredholm_index"), 6);
  const nlohmann::ordered_json v = to_json(document_for(load_fixture("vanishing_identity").op, "v"));
  EXPECT_TRUE(v.at("fredholm_index").is_null());
  const nlohmann::ordered_json three = to_json(document_for(load_fixture("index_three").op, "y"));
  EXPECT_EQ(three.at("fredholm_index"), 3);
  EXPECT_EQ(three.at("fiber_sum_sup").at("value"), "1201/400");
  EXPECT_EQ(three.at("norm").at("kind"), "enclosure");
}

TEST(Report, NormValueStrings) {
  EXPECT_EQ(to_json(NormValue::exact(Rational(7, 6))).at("value"), "7/6");
  EXPECT_EQ(norm_value_from_json(to_json(NormValue::enclosure(Rational(1, 3), Rational(1, 2)))),
            NormValue::enclosure(Rational(1, 3), Rational(1, 2)));
  EXPECT_EQ(norm_value_from_json(to_json(NormValue::divergent(5))), NormValue::divergent(5));
  EXPECT_EQ(ext_nat_from_json(to_json(ExtNat::infinite())), ExtNat::infinite());
  EXPECT_EQ(ext_nat_from_json(to_json(ExtNat::finite(9))), ExtNat::finite(9));
  EXPECT_THROW(ext_nat_from_json(nlohmann::ordered_json(-1)), Error);
  EXPECT_THROW(ext_nat_from_json(nlohmann::ordered_json("many")), Error);
}

TEST(Report, RoundTripFixtures) {
  for (const Fixture& f : fixtures()) {
    ReportDocument doc = document_for(parse_spec(f.text).op, std::string(f.name));
    doc.oracle = summarize(stabilized_check(parse_spec(f.text).op, OracleCheck::kAll, {8, 16, 32}));
    const std::string text = to_json(doc).dump();
    EXPECT_EQ(report_from_json(nlohmann::ordered_json::parse(text)), doc) << f.name;
  }
}

TEST(Report, RoundTripRandom) {
  std::mt19937_64 rng(0x7e9047);
  for (int trial = 0; trial < 150; ++trial) {
    const ReportDocument doc = document_for(testing::random_op(rng), "random");
    EXPECT_EQ(report_from_json(nlohmann::ordered_json::parse(to_json(doc).dump())), doc);
  }
}

TEST(Report, RejectsMalformed) {
  nlohmann::ordered_json j = to_json(document_for(load_fixture("index_zero").op, "z"));
  j.erase("bounded");
  EXPECT_THROW(report_from_json(j), Error);
  j = to_json(document_for(load_fixture("index_zero").op, "z"));
  j["fiber_sum_sup"]["kind"] = "approximate";
  EXPECT_THROW(report_from_json(j), Error);
  j = to_json(document_for(load_fixture("index_zero").op, "z"));
  j["hypothesis_flags"][0]["hypothesis"] = "mystery";
  EXPECT_THROW(report_from_json(j), Error);
}

}  // namespace
}  // namespace wcop
