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

// Brute-force cross-checks: the operator restricted to a coordinate window,
// written as an exact matrix and measured directly.

#ifndef WCOP_ORACLE_HPP
#define WCOP_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wcop/analysis.hpp"

namespace wcop {

/// Column n of the matrix is u * chi_{phi^-1(n)} restricted to rows 1..R.
/// Each row holds at most one nonzero, at column phi(m).
class TruncationMatrix {
 public:
  struct Entry {
    Nat column = 0;   // 0: no entry in the window
    Rational value;   // u(m) when exact
    bool exact = true;
  };

  Nat rows() const { return rows_; }
  Nat cols() const { return cols_; }
  /// Row m, 1-based.
  const Entry& row(Nat m) const { return rows_data_.at(m - 1); }
  /// Columns whose fiber is infinite and was cut at R.
  const std::vector<Nat>& truncated_columns() const { return truncated_; }
  bool fiber_truncated() const { return !truncated_.empty(); }
  /// True when some weight value is irrational; those entries are stored as 1.
  bool has_symbolic_entries() const { return symbolic_; }

  /// Rows carrying a nonzero in column n.
  std::vector<Nat> column_support(Nat n) const;
  /// Rational entries keyed by (row, column).
  std::optional<Rational> at(Nat m, Nat n) const;

 private:
  friend TruncationMatrix build_matrix(const OperatorSpec& op, Nat window);
  Nat rows_ = 0;
  Nat cols_ = 0;
  std::vector<Entry> rows_data_;
  std::vector<Nat> truncated_;
  bool symbolic_ = false;
};

/// Picks R so that every finite fiber over 1..W lies inside the rows; an
/// infinite fiber is cut after its first W elements and the column flagged.
TruncationMatrix build_matrix(const OperatorSpec& op, Nat window);

/// Rank over the rationals by fraction-free elimination, columns visited in
/// the given order (all columns when empty).
std::uint64_t matrix_rank(const TruncationMatrix& m, const std::vector<Nat>& column_order = {});

/// Matrix times the coordinate vector of f; result indexed by row (1..R).
std::vector<Rational> matrix_apply(const TruncationMatrix& m, const SeqExpr& f);

std::uint64_t windowed_kernel_count(const OperatorSpec& op, Nat window);
std::uint64_t windowed_range_deficiency(const OperatorSpec& op, Nat window);

enum class OracleCheck { kKernel, kRange, kAll };

struct WindowCounts {
  Nat window = 0;
  Nat rows = 0;
  std::uint64_t zero_columns = 0;
  std::uint64_t range_deficiency = 0;
  std::uint64_t rank = 0;
  /// |column support| for columns 1..W (index 0 unused).
  std::vector<std::uint64_t> column_fiber_sizes;
  bool fiber_truncated = false;
  /// rank == nonzero rows - deficiency, and a shuffled column order agrees.
  bool rank_consistent = true;
  /// Closed-form counts restricted to the window.
  std::uint64_t predicted_zero_columns = 0;
  std::uint64_t predicted_range_deficiency = 0;
};

struct WindowReport {
  OracleCheck check = OracleCheck::kAll;
  std::vector<WindowCounts> windows;
  ExtNat kernel_prediction = ExtNat::finite(0);
  ExtNat range_prediction = ExtNat::finite(0);
  bool kernel_stabilized = false;
  bool range_stabilized = false;
  /// Last three windows agree on every selected count and match the
  /// closed form.
  bool stabilized = false;
  /// Every window matches the restricted closed form, and finite predictions
  /// are reached. False means the closed form and the matrices disagree.
  bool agrees = true;
  std::vector<std::string> mismatches;
};

/// Needs at least three increasing windows; windows run concurrently.
WindowReport stabilized_check(const OperatorSpec& op, OracleCheck check,
                              const std::vector<Nat>& windows, bool parallel = true);

}  // namespace wcop

#endif  // WCOP_ORACLE_HPP
