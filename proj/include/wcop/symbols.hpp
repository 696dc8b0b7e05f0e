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

// Finite symbolic descriptions of sequences and self-maps of the naturals.
//
// A Sequence is a finite table of exceptional values followed by a tail
//     s(n) = sum_i c_i * n^(-alpha_i),   n >= tail_start,
// with rational c_i and distinct non-negative rational alpha_i. The weight u
// and every finitely supported test vector f are Sequences.
//
// A SelfMap is a complete table on [1, tail_start) followed by one of the
// tail rules n, k, a*n + b, n^e.

#ifndef WCOP_SYMBOLS_HPP
#define WCOP_SYMBOLS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcop/natset.hpp"
#include "wcop/numeric.hpp"

namespace wcop {

/// c * n^(-alpha).
struct PowerTerm {
  Rational coefficient;
  Rational exponent;
  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

class Sequence {
 public:
  Sequence() = default;

  /// Validates and canonicalizes: terms merged by exponent and sorted, zero
  /// coefficients and zero exceptions dropped, tail_start lowered while the
  /// table agrees with the tail.
  static Sequence make(std::map<Nat, Rational> exceptions, Nat tail_start,
                       std::vector<PowerTerm> tail);
  static Sequence zero() { return Sequence(); }
  /// Finitely supported sequence with the given values.
  static Sequence finite(std::map<Nat, Rational> values);
  /// The coordinate vector chi_n.
  static Sequence unit(Nat n);

  /// Nonzero exceptional values; keys are < tail_start.
  const std::map<Nat, Rational>& exceptions() const { return exceptions_; }
  Nat tail_start() const { return tail_start_; }
  /// Sorted by increasing exponent.
  const std::vector<PowerTerm>& tail() const { return tail_; }
  bool has_zero_tail() const { return tail_.empty(); }

  /// Least N >= tail_start with s(n) != 0 for all n >= N; nullopt for the
  /// zero tail.
  std::optional<Nat> tail_support_from() const { return tail_support_from_; }

  std::string to_string() const;

  friend bool operator==(const Sequence& a, const Sequence& b) {
    return a.exceptions_ == b.exceptions_ && a.tail_start_ == b.tail_start_ && a.tail_ == b.tail_;
  }

 private:
  std::map<Nat, Rational> exceptions_;
  Nat tail_start_ = 1;
  std::vector<PowerTerm> tail_;
  std::optional<Nat> tail_support_from_;
};

using Weight = Sequence;
using SeqExpr = Sequence;

/// Least B >= 1 such that for every real x >= B the first term of `terms`
/// (sorted by increasing exponent) strictly outweighs the sum of the others
/// in absolute value.
Nat dominance_bound(const std::vector<PowerTerm>& terms);

/// Value of the tail sum at n, or nullopt when it is irrational.
std::optional<Rational> tail_value(const std::vector<PowerTerm>& tail, Nat n);
/// Exact zero test of the tail sum at n (valid for irrational terms).
bool tail_is_zero_at(const std::vector<PowerTerm>& tail, Nat n);

/// Exact value; throws IrrationalValue.
Rational weight_at(const Sequence& s, Nat n);
/// Exact value when rational.
std::optional<Rational> try_weight_at(const Sequence& s, Nat n);
/// Outward-rounded enclosure of s(n).
Interval weight_enclosure_at(const Sequence& s, Nat n);
bool is_zero_at(const Sequence& s, Nat n);
/// S(s) = { n : s(n) != 0 }; Finite or UltimatelyPeriodic.
NatSet support(const Sequence& s);
/// inf_n |u(n)| > 0 over all of the naturals.
bool is_bounded_away_from_zero(const Weight& u);

struct IdentityTail {
  friend bool operator==(const IdentityTail&, const IdentityTail&) = default;
};
struct ConstTail {
  Nat k = 1;
  friend bool operator==(const ConstTail&, const ConstTail&) = default;
};
struct AffineTail {
  Nat a = 1;
  std::int64_t b = 0;
  friend bool operator==(const AffineTail&, const AffineTail&) = default;
};
struct PowerTail {
  Nat e = 2;
  friend bool operator==(const PowerTail&, const PowerTail&) = default;
};
using MapTail = std::variant<IdentityTail, ConstTail, AffineTail, PowerTail>;

class SelfMap {
 public:
  SelfMap() = default;

  /// exceptions must be defined on all of [1, tail_start) with values >= 1.
  static SelfMap make(std::map<Nat, Nat> exceptions, Nat tail_start, MapTail tail);
  static SelfMap identity() { return SelfMap(); }

  const std::map<Nat, Nat>& exceptions() const { return exceptions_; }
  Nat tail_start() const { return tail_start_; }
  const MapTail& tail() const { return tail_; }
  bool tail_is_const() const { return std::holds_alternative<ConstTail>(tail_); }

  std::string to_string() const;

  friend bool operator==(const SelfMap&, const SelfMap&) = default;

 private:
  std::map<Nat, Nat> exceptions_;
  Nat tail_start_ = 1;
  MapTail tail_ = IdentityTail{};
};

/// The tail rule at n (n need not be >= tail_start).
Nat tail_at(const MapTail& tail, Nat n);
Nat map_at(const SelfMap& phi, Nat n);
/// phi^{-1}(n); Finite or UltimatelyPeriodic.
NatSet fiber(const SelfMap& phi, Nat n);
NatSet image(const SelfMap& phi, const NatSet& s);
/// { m : phi(m) in s } for s Finite or UltimatelyPeriodic.
NatSet preimage(const SelfMap& phi, const NatSet& s);
/// phi composed with itself m times.
SelfMap iterate(const SelfMap& phi, Nat m);
/// phi(S(u)) is a subset of S(u).
bool check_support_invariant(const Weight& u, const SelfMap& phi);

Sequence seq_pointwise_mul(const Sequence& f, const Sequence& g);
/// f o phi; throws UnrepresentableComposition.
Sequence seq_compose(const Sequence& f, const SelfMap& phi);
Sequence seq_add(const Sequence& f, const Sequence& g);
Sequence seq_negate(const Sequence& f);
/// f * chi_s; throws UnsupportedSetForm when the tail cannot be cut by s.
Sequence seq_restrict(const Sequence& f, const NatSet& s);

}  // namespace wcop

#endif  // WCOP_SYMBOLS_HPP
