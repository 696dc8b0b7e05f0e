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
#include "wcop/oracle.hpp"

namespace wcop {
namespace {

OperatorSpec op_of(std::string_view name) { return load_fixture(name).op; }

TEST(Matrix, CollapsedFiberColumn) {
  const TruncationMatrix m = build_matrix(op_of("range_codim_one"), 8);
  EXPECT_GE(m.rows(), 9u);
  EXPECT_EQ(m.column_support(1), (std::vector<Nat>{6, 7}));
  EXPECT_EQ(m.at(6, 1), Rational(7, 6));
  EXPECT_EQ(m.at(7, 1), Rational(8, 7));
  // phi(9) = 10 falls outside the window.
  EXPECT_EQ(m.row(9).column, 0u);
  // 7 is exceptional and maps to 1, so nothing lands on 8.
  EXPECT_TRUE(m.column_support(8).empty());
  EXPECT_FALSE(m.fiber_truncated());
}

TEST(Matrix, ZeroWeight) {
  const TruncationMatrix m = build_matrix(op_of("zero_operator"), 10);
  for (Nat r = 1; r <= m.rows(); ++r) EXPECT_EQ(m.row(r).column, 0u);
  EXPECT_EQ(matrix_rank(m), 0u);
}

TEST(Matrix, Diagonal) {
  OperatorSpec op{Weight::make({}, 1, {{1, 2}}), SelfMap::identity(), 1};
  const TruncationMatrix m = build_matrix(op, 4);
  for (Nat r = 1; r <= 4; ++r) {
    for (Nat c = 1; c <= 4; ++c) {
      EXPECT_EQ(m.at(r, c), r == c ? Rational(1, r * r) : Rational(0));
    }
  }
  EXPECT_EQ(matrix_rank(m), 4u);
}

TEST(Matrix, InfiniteFiberIsFlagged) {
  const TruncationMatrix m = build_matrix(op_of("constant_map"), 8);
  EXPECT_TRUE(m.fiber_truncated());
  EXPECT_EQ(m.truncated_columns(), (std::vector<Nat>{1}));
  EXPECT_GE(m.column_support(1).size(), 8u);
}

TEST(Matrix, IrrationalEntriesKeepRank) {
  OperatorSpec op{Weight::make({}, 1, {{1, Rational(1, 2)}}), SelfMap::identity(), 1};
  const TruncationMatrix m = build_matrix(op, 6);
  EXPECT_TRUE(m.has_symbolic_entries());
  EXPECT_EQ(m.at(4, 4), Rational(1, 2));  // 4^(-1/2) is rational
  EXPECT_EQ(m.at(2, 2), std::nullopt);
  EXPECT_EQ(matrix_rank(m), 6u);
}

TEST(Windowed, KernelCounts) {
  EXPECT_EQ(windowed_kernel_count(op_of("index_three"), 16), 4u);
  EXPECT_EQ(windowed_kernel_count(op_of("constant_map"), 32), 31u);
  OperatorSpec full{Weight::make({}, 1, {{1, 0}}), SelfMap::identity(), 1};
  EXPECT_EQ(windowed_kernel_count(full, 32), 0u);
}

TEST(Windowed, RangeDeficiency) {
  EXPECT_EQ(windowed_range_deficiency(op_of("range_codim_one"), 16), 1u);
  EXPECT_EQ(windowed_range_deficiency(op_of("index_zero"), 16), 2u);
  OperatorSpec full{Weight::make({}, 1, {{1, 0}}), SelfMap::identity(), 1};
  EXPECT_EQ(windowed_range_deficiency(full, 16), 0u);
}

TEST(Stabilized, FiniteKernel) {
  const WindowReport r = stabilized_check(op_of("index_three"), OracleCheck::kAll, {16, 32, 64});
  EXPECT_TRUE(r.stabilized);
  EXPECT_TRUE(r.agrees);
  EXPECT_EQ(r.windows.back().zero_columns, 4u);
  EXPECT_EQ(r.kernel_prediction, ExtNat::finite(4));
  EXPECT_EQ(r.windows.back().range_deficiency, 1u);
}

TEST(Stabilized, RangeCodimOne) {
  const WindowReport r =
      stabilized_check(op_of("range_codim_one"), OracleCheck::kRange, {16, 32, 64});
  EXPECT_TRUE(r.stabilized);
  for (const auto& w : r.windows) EXPECT_EQ(w.range_deficiency, 1u);
}

TEST(Stabilized, GrowingKernel) {
  const WindowReport r =
      stabilized_check(op_of("square_map_kernel"), OracleCheck::kKernel, {16, 32, 64});
  EXPECT_FALSE(r.stabilized);
  EXPECT_TRUE(r.agrees) << (r.mismatches.empty() ? "" : r.mismatches.front());
  EXPECT_EQ(r.kernel_prediction, ExtNat::infinite());
  EXPECT_LT(r.windows[0].zero_columns, r.windows[1].zero_columns);
  EXPECT_LT(r.windows[1].zero_columns, r.windows[2].zero_columns);
}

TEST(Stabilized, ZeroOperator) {
  const WindowReport r =
      stabilized_check(op_of("zero_operator"), OracleCheck::kAll, {16, 32, 64});
  for (const auto& w : r.windows) EXPECT_EQ(w.zero_columns, w.window);
  EXPECT_TRUE(r.agrees);
}

TEST(Stabilized, ParallelMatchesSerial) {
  for (const Fixture& f : fixtures()) {
    const OperatorSpec op = parse_spec(f.text).op;
    const WindowReport a = stabilized_check(op, OracleCheck::kAll, {8, 16, 32, 64}, true);
    const WindowReport b = stabilized_check(op, OracleCheck::kAll, {8, 16, 32, 64}, false);
    ASSERT_EQ(a.windows.size(), b.windows.size());
    for (std::size_t i = 0; i < a.windows.size(); ++i) {
      EXPECT_EQ(a.windows[i].zero_columns, b.windows[i].zero_columns);
      EXPECT_EQ(a.windows[i].column_fiber_sizes, b.windows[i].column_fiber_sizes);
    }
    EXPECT_EQ(a.mismatches, b.mismatches);
    EXPECT_TRUE(a.agrees) << f.name << ": " << (a.mismatches.empty() ? "" : a.mismatches.front());
  }
}

TEST(Property, MatrixVectorAgreement) {
  std::mt19937_64 rng(0x0ac1e1);
  for (int trial = 0; trial < 150; ++trial) {
    const OperatorSpec op = testing::random_op(rng);
    const SeqExpr f = testing::random_sparse_vector(rng, 12, 24);
    const Nat window = 24;
    const TruncationMatrix m = build_matrix(op, window);
    const std::vector<Rational> mf = matrix_apply(m, f);
    const SeqExpr image = apply(op, f);
    for (Nat r = 1; r <= m.rows(); ++r) {
      EXPECT_EQ(mf[r], weight_at(image, r)) << "row " << r;
    }
  }
}

TEST(Property, RankIsOrderIndependent) {
  std::mt19937_64 rng(0x0ac1e2);
  for (int trial = 0; trial < 100; ++trial) {
    const OperatorSpec op = testing::random_op(rng);
    const TruncationMatrix m = build_matrix(op, 32);
    std::vector<Nat> order(32);
    std::iota(order.begin(), order.end(), Nat{1});
    std::shuffle(order.begin(), order.end(), rng);
    EXPECT_EQ(matrix_rank(m), matrix_rank(m, order));
  }
}

TEST(Property, OracleMatchesClosedForm) {
  std::mt19937_64 rng(0x0ac1e3);
  int finite_cases = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const OperatorSpec op = testing::random_op(rng);
    const WindowReport r = stabilized_check(op, OracleCheck::kAll, {16, 32, 64});
    EXPECT_TRUE(r.agrees) << print_spec({"", op}) << r.mismatches.front();
    if (r.kernel_prediction.is_finite() && r.range_prediction.is_finite()) {
      ++finite_cases;
      EXPECT_TRUE(r.stabilized);
    }
  }
  EXPECT_GT(finite_cases, 30);
}

}  // namespace
}  // namespace wcop
