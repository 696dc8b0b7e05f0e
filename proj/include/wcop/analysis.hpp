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

// Structural analysis of the weighted composition operator
//     (u C_phi f)(m) = u(m) f(phi(m))
// on l^p. Everything is driven by the fiber sums
//     sigma^p(n) = sum_{m in phi^{-1}(n)} |u(m)|^p,
// since ||u C_phi f||_p^p = sum_n sigma^p(n) |f(n)|^p.

#ifndef WCOP_ANALYSIS_HPP
#define WCOP_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wcop/errors.hpp"
#include "wcop/natset.hpp"
#include "wcop/symbols.hpp"

namespace wcop {

struct OperatorSpec {
  Weight u;
  SelfMap phi;
  Rational p = 1;

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

/// Throws InvalidSymbol unless p >= 1.
void validate(const OperatorSpec& op);

/// An exact rational, a certified rational enclosure [lo, hi], or a
/// divergent quantity known to exceed `lo`.
struct NormValue {
  enum class Kind { kExact, kEnclosure, kDivergent };

  Kind kind = Kind::kExact;
  Rational lo = 0;
  Rational hi = 0;

  static NormValue exact(const Rational& v) { return {Kind::kExact, v, v}; }
  static NormValue enclosure(const Rational& lo, const Rational& hi);
  static NormValue divergent(const Rational& lower_bound) {
    return {Kind::kDivergent, lower_bound, lower_bound};
  }
  static NormValue from_interval(const Interval& i);

  bool is_exact() const { return kind == Kind::kExact; }
  bool is_divergent() const { return kind == Kind::kDivergent; }
  bool contains(const Rational& v) const;
  std::string to_string() const;

  friend bool operator==(const NormValue&, const NormValue&) = default;
};

struct AnalysisOptions {
  /// Target width of series enclosures, relative to the enclosed value and
  /// never coarser than this absolute amount.
  Rational enclosure_width = Rational(1, 1000000);
};

NormValue fiber_weight_sum(const OperatorSpec& op, Nat n, const AnalysisOptions& opt = {});

struct Boundedness {
  bool bounded = false;
  /// sup_n sigma^p(n).
  NormValue fiber_sum_sup;
  /// (sup_n sigma^p(n))^(1/p), present when bounded.
  std::optional<NormValue> norm;
};

Boundedness boundedness(const OperatorSpec& op, const AnalysisOptions& opt = {});

/// |N - phi_m(S(u))|. Powers m >= 2 require phi(S(u)) within S(u).
ExtNat kernel_dim(const OperatorSpec& op, Nat power = 1);
/// The first `limit` indices n whose chi_n span the kernel of the m-th power.
std::vector<Nat> kernel_basis(const OperatorSpec& op, Nat power, std::size_t limit);
/// |phi(S(u))|.
ExtNat kernel_codim(const OperatorSpec& op);

struct KernelSplit {
  SeqExpr g;  // in the kernel
  SeqExpr h;  // supported on phi(S(u))
};
KernelSplit kernel_split(const OperatorSpec& op, const SeqExpr& f);

bool kernel_stabilizes(const OperatorSpec& op);
/// dim N(T) finite iff dim N(T^m) finite for every m <= max_power.
bool kernel_finite_transfer_check(const OperatorSpec& op, Nat max_power);

/// phi^{-1}(n) intersected with S(u).
NatSet weighted_fiber(const OperatorSpec& op, Nat n);
/// { n : |phi^{-1}(n) intersected with S(u)| > 1 }.
NatSet multi_fiber_set(const OperatorSpec& op);
/// { n : phi^{-1}(n) meets S(u) } is infinite.
bool range_dim_is_infinite(const OperatorSpec& op);
bool range_membership(const OperatorSpec& op, const SeqExpr& f);
/// Requires both u C_phi and C_phi bounded.
ExtNat range_codim(const OperatorSpec& op);
/// sum over A of (|M_n| - 1), infinite when some M_n is; no hypothesis gate.
ExtNat range_codim_formula(const OperatorSpec& op);
bool closed_range(const OperatorSpec& op);
/// The index when u C_phi is Fredholm, nullopt otherwise. Requires a bounded
/// operator with closed range.
std::optional<std::int64_t> fredholm(const OperatorSpec& op);

SeqExpr apply(const OperatorSpec& op, const SeqExpr& f);
SeqExpr apply_power(const OperatorSpec& op, const SeqExpr& f, Nat m);

/// (u C_phi)^m f = w_m * (f o phi_m) with w_m = u (u o phi) ... (u o phi_{m-1}).
struct PowerSpec {
  OperatorSpec op;
  Nat m = 1;
  SelfMap phi_m;
  /// S(w_m).
  NatSet support;

  Rational weight_at(Nat n) const;
};
PowerSpec power_spec(const OperatorSpec& op, Nat m);

/// The weight u == 1, used for C_phi itself.
Weight unit_weight();

struct HypothesisCheck {
  Hypothesis which;
  bool holds = true;
  friend bool operator==(const HypothesisCheck&, const HypothesisCheck&) = default;
};

/// Name of the condition a Hypothesis flag checks ("bounded", ...).
std::string_view hypothesis_check_name(Hypothesis h);

struct AnalysisReport {
  bool bounded = false;
  NormValue fiber_sum_sup;
  std::optional<NormValue> norm;
  ExtNat kernel_dim = ExtNat::finite(0);
  ExtNat kernel_codim = ExtNat::finite(0);
  NatSet multi_fiber_set;
  ExtNat range_codim = ExtNat::finite(0);
  bool closed_range = false;
  std::optional<std::int64_t> fredholm_index;
  std::vector<HypothesisCheck> hypothesis_flags;

  bool holds(Hypothesis h) const;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

AnalysisReport analyze(const OperatorSpec& op, const AnalysisOptions& opt = {});

}  // namespace wcop

#endif  // WCOP_ANALYSIS_HPP
