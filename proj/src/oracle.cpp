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

#include "wcop/oracle.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace wcop {

namespace {

// Largest m in the tail region whose image can still be <= window.
Nat tail_reach(const SelfMap& phi, Nat window) {
  return std::visit(
      [&](const auto& r) -> Nat {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          return window;
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          return 0;  // handled separately
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          const __int128 top = static_cast<__int128>(window) - r.b;
          return top <= 0 ? 0 : static_cast<Nat>(top / r.a);
        } else {
          return iroot_floor(window, r.e);
        }
      },
      phi.tail());
}

// phi(m), or nullopt when it does not fit in 64 bits (so it exceeds any window).
std::optional<Nat> image_of(const SelfMap& phi, Nat m) {
  try {
    return map_at(phi, m);
  } catch (const OverflowError&) {
    return std::nullopt;
  }
}

using SparseRow = std::map<Nat, BigInt>;

void reduce_content(SparseRow& row) {
  BigInt g = 0;
  for (const auto& [c, v] : row) g = gcd(g, BigInt(v));
  if (g > 1) {
    for (auto& [c, v] : row) v /= g;
  }
}

}  // namespace

std::vector<Nat> TruncationMatrix::column_support(Nat n) const {
  std::vector<Nat> out;
  for (Nat m = 1; m <= rows_; ++m) {
    if (rows_data_[m - 1].column == n) out.push_back(m);
  }
  return out;
}

std::optional<Rational> TruncationMatrix::at(Nat m, Nat n) const {
  const Entry& e = row(m);
  if (e.column != n) return Rational(0);
  if (!e.exact) return std::nullopt;
  return e.value;
}

TruncationMatrix build_matrix(const OperatorSpec& op, Nat window) {
  if (window == 0) throw std::invalid_argument("window must be >= 1");
  TruncationMatrix out;
  out.cols_ = window;
  const SelfMap& phi = op.phi;
  const Nat start = phi.tail_start();
  Nat rows = std::max(window, start - 1);
  if (const auto* c = std::get_if<ConstTail>(&phi.tail())) {
    if (c->k <= window) {
      // Every m >= start lands on k: keep the first W of them.
      rows = std::max(rows, start - 1 + window);
      out.truncated_.push_back(c->k);
    }
  } else {
    rows = std::max(rows, tail_reach(phi, window));
  }
  rows += 2;
  out.rows_ = rows;
  out.rows_data_.resize(rows);
  for (Nat m = 1; m <= rows; ++m) {
    const std::optional<Nat> n = image_of(phi, m);
    if (!n || *n > window || is_zero_at(op.u, m)) continue;
    TruncationMatrix::Entry& e = out.rows_data_[m - 1];
    e.column = *n;
    if (auto v = try_weight_at(op.u, m)) {
      e.value = *v;
    } else {
      // Scaling a row by a nonzero factor keeps the rank, and each row has a
      // single nonzero, so an irrational entry may stand in as 1.
      e.value = 1;
      e.exact = false;
      out.symbolic_ = true;
    }
  }
  return out;
}

std::uint64_t matrix_rank(const TruncationMatrix& m, const std::vector<Nat>& column_order) {
  std::vector<SparseRow> rows;
  for (Nat r = 1; r <= m.rows(); ++r) {
    const auto& e = m.row(r);
    if (e.column == 0) continue;
    rows.push_back({{e.column, e.value.get_num()}});  // row scaled by its denominator
  }
  std::vector<Nat> order = column_order;
  if (order.empty()) {
    order.resize(m.cols());
    std::iota(order.begin(), order.end(), Nat{1});
  }
  std::vector<bool> used(rows.size(), false);
  std::uint64_t rank = 0;
  for (Nat col : order) {
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!used[i] && rows[i].count(col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    used[pivot] = true;
    ++rank;
    const SparseRow& p = rows[pivot];
    const BigInt pv = p.at(col);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i]) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      const BigInt rv = it->second;
      SparseRow next;
      for (const auto& [c, v] : rows[i]) next[c] += pv * v;
      for (const auto& [c, v] : p) next[c] -= rv * v;
      for (auto jt = next.begin(); jt != next.end();) {
        jt = jt->second == 0 ? next.erase(jt) : std::next(jt);
      }
      reduce_content(next);
      rows[i] = std::move(next);
    }
  }
  return rank;
}

std::vector<Rational> matrix_apply(const TruncationMatrix& m, const SeqExpr& f) {
  if (m.has_symbolic_entries()) throw IrrationalValue("matrix has irrational entries");
  std::vector<Rational> out(m.rows() + 1, Rational(0));
  for (Nat r = 1; r <= m.rows(); ++r) {
    const auto& e = m.row(r);
    if (e.column != 0) out[r] = e.value * weight_at(f, e.column);
  }
  return out;
}

namespace {

struct RawCounts {
  std::uint64_t zero_columns = 0;
  std::uint64_t deficiency = 0;
  std::vector<std::uint64_t> sizes;
};

RawCounts raw_counts(const OperatorSpec& op, const TruncationMatrix& m) {
  RawCounts out;
  out.sizes.assign(m.cols() + 1, 0);
  for (Nat r = 1; r <= m.rows(); ++r) {
    if (Nat c = m.row(r).column) ++out.sizes[c];
  }
  for (Nat n = 1; n <= m.cols(); ++n) {
    const auto& truncated = m.truncated_columns();
    bool zero = out.sizes[n] == 0;
    if (zero && std::find(truncated.begin(), truncated.end(), n) != truncated.end()) {
      // The cut-off part of the fiber is every row past R.
      zero = restrict_from(support(op.u), m.rows() + 1).is_empty();
    }
    if (zero) ++out.zero_columns;
    if (out.sizes[n] > 1) out.deficiency += out.sizes[n] - 1;
  }
  return out;
}

std::string join_columns(const std::vector<Nat>& cols) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cols.size() && i < 12; ++i) os << (i ? "," : "") << cols[i];
  if (cols.size() > 12) os << ",...";
  return os.str();
}

WindowCounts measure(const OperatorSpec& op, Nat window, const NatSet& img, const NatSet& a,
                     std::vector<std::string>& notes) {
  const TruncationMatrix m = build_matrix(op, window);
  const RawCounts raw = raw_counts(op, m);
  WindowCounts w;
  w.window = window;
  w.rows = m.rows();
  w.zero_columns = raw.zero_columns;
  w.range_deficiency = raw.deficiency;
  w.column_fiber_sizes = raw.sizes;
  w.fiber_truncated = m.fiber_truncated();
  w.rank = matrix_rank(m);

  std::uint64_t nonzero_rows = 0;
  for (Nat n = 1; n <= window; ++n) nonzero_rows += raw.sizes[n];
  std::vector<Nat> shuffled(window);
  std::iota(shuffled.begin(), shuffled.end(), Nat{1});
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(window * 7919 + 17));
  w.rank_consistent = w.rank == nonzero_rows - raw.deficiency && matrix_rank(m, shuffled) == w.rank;
  if (!w.rank_consistent) notes.push_back("W=" + std::to_string(window) + ": rank inconsistent");

  // Closed form, restricted to the window.
  w.predicted_zero_columns = window - count_up_to(img, window);
  for (Nat n : a.elements()) {
    if (n > window) continue;
    w.predicted_range_deficiency += count_up_to(weighted_fiber(op, n), m.rows()) - 1;
  }

  std::vector<Nat> kernel_diff;
  std::vector<Nat> range_diff;
  for (Nat n = 1; n <= window; ++n) {
    const bool zero_oracle = raw.sizes[n] == 0;
    if (zero_oracle == member(img, n) && std::find(m.truncated_columns().begin(),
                                                   m.truncated_columns().end(),
                                                   n) == m.truncated_columns().end()) {
      kernel_diff.push_back(n);
    }
    const std::uint64_t oracle_excess = raw.sizes[n] > 1 ? raw.sizes[n] - 1 : 0;
    const std::uint64_t closed_excess =
        member(a, n) ? count_up_to(weighted_fiber(op, n), m.rows()) - 1 : 0;
    if (oracle_excess != closed_excess) range_diff.push_back(n);
  }
  if (!kernel_diff.empty()) {
    notes.push_back("W=" + std::to_string(window) + ": kernel columns disagree at " +
                    join_columns(kernel_diff));
  }
  if (!range_diff.empty()) {
    notes.push_back("W=" + std::to_string(window) + ": fiber sizes disagree at " +
                    join_columns(range_diff));
  }
  return w;
}

bool last_three_equal(const std::vector<WindowCounts>& ws, std::uint64_t WindowCounts::*field) {
  const std::size_t n = ws.size();
  return ws[n - 1].*field == ws[n - 2].*field && ws[n - 2].*field == ws[n - 3].*field;
}

}  // namespace

std::uint64_t windowed_kernel_count(const OperatorSpec& op, Nat window) {
  return raw_counts(op, build_matrix(op, window)).zero_columns;
}

std::uint64_t windowed_range_deficiency(const OperatorSpec& op, Nat window) {
  return raw_counts(op, build_matrix(op, window)).deficiency;
}

WindowReport stabilized_check(const OperatorSpec& op, OracleCheck check,
                              const std::vector<Nat>& windows, bool parallel) {
  if (windows.size() < 3) throw std::invalid_argument("stabilized_check needs >= 3 windows");
  for (std::size_t i = 1; i < windows.size(); ++i) {
    if (windows[i] <= windows[i - 1]) throw std::invalid_argument("windows must increase");
  }
  WindowReport report;
  report.check = check;
  report.kernel_prediction = kernel_dim(op, 1);
  report.range_prediction = range_codim_formula(op);
  const NatSet img = image(op.phi, support(op.u));
  const NatSet a = multi_fiber_set(op);

  std::vector<std::vector<std::string>> notes(windows.size());
  report.windows.resize(windows.size());
  if (parallel) {
    std::vector<std::future<WindowCounts>> jobs;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      jobs.push_back(std::async(std::launch::async, measure, std::cref(op), windows[i],
                                std::cref(img), std::cref(a), std::ref(notes[i])));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) report.windows[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      report.windows[i] = measure(op, windows[i], img, a, notes[i]);
    }
  }

  const bool want_kernel = check != OracleCheck::kRange;
  const bool want_range = check != OracleCheck::kKernel;
  const WindowCounts& last = report.windows.back();
  report.kernel_stabilized = last_three_equal(report.windows, &WindowCounts::zero_columns) &&
                             report.kernel_prediction == ExtNat::finite(last.zero_columns);
  report.range_stabilized =
      last_three_equal(report.windows, &WindowCounts::range_deficiency) &&
      report.range_prediction == ExtNat::finite(last.range_deficiency);
  report.stabilized = (!want_kernel || report.kernel_stabilized) &&
                      (!want_range || report.range_stabilized);

  for (std::size_t i = 0; i < windows.size(); ++i) {
    const WindowCounts& w = report.windows[i];
    for (const std::string& note : notes[i]) {
      const bool kernel_note = note.find("kernel") != std::string::npos;
      const bool range_note = note.find("fiber sizes") != std::string::npos;
      if ((kernel_note && !want_kernel) || (range_note && !want_range)) continue;
      report.mismatches.push_back(note);
    }
    if (want_kernel && w.zero_columns != w.predicted_zero_columns) {
      report.mismatches.push_back("W=" + std::to_string(w.window) + ": zero columns " +
                                  std::to_string(w.zero_columns) + ", closed form " +
                                  std::to_string(w.predicted_zero_columns));
    }
    if (want_range && w.range_deficiency != w.predicted_range_deficiency) {
      report.mismatches.push_back("W=" + std::to_string(w.window) + ": deficiency " +
                                  std::to_string(w.range_deficiency) + ", closed form " +
                                  std::to_string(w.predicted_range_deficiency));
    }
  }
  if (want_kernel && report.kernel_prediction.is_finite() && !report.kernel_stabilized) {
    report.mismatches.push_back("kernel count did not settle at " +
                                report.kernel_prediction.to_string());
  }
  if (want_range && report.range_prediction.is_finite() && !report.range_stabilized) {
    report.mismatches.push_back("range deficiency did not settle at " +
                                report.range_prediction.to_string());
  }
  report.agrees = report.mismatches.empty();
  return report;
}

}  // namespace wcop
