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

// Exact subsets of the positive integers.
//
// Three canonical forms are representable:
//   * Finite              a strictly increasing list of elements;
//   * UltimatelyPeriodic  n in S iff (n < T and n in exceptions) or
//                         (n >= T and n mod m in residues), always infinite;
//   * PowerImage          { b^e : b in base } united with a finite list of
//                         extras, base an infinite ultimately periodic set.
// Construction canonicalizes eagerly, so semantic equality is structural
// equality. PowerImage is second class: no complement, and binary operations
// only against Finite/UltimatelyPeriodic operands.

#ifndef WCOP_NATSET_HPP
#define WCOP_NATSET_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wcop/numeric.hpp"

namespace wcop {

/// A natural number or infinity. Doubles as the cardinality class of a set.
class ExtNat {
 public:
  static ExtNat finite(std::uint64_t k) { return ExtNat(k); }
  static ExtNat infinite() { return ExtNat(std::nullopt); }

  bool is_finite() const { return value_.has_value(); }
  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: is_finite().
  std::uint64_t value() const { return value_.value(); }

  friend bool operator==(const ExtNat&, const ExtNat&) = default;
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
    if (a.is_infinite() || b.is_infinite()) {
      return a.is_infinite() <=> b.is_infinite();
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const;

 private:
  explicit ExtNat(std::optional<std::uint64_t> v) : value_(v) {}
  std::optional<std::uint64_t> value_;
};

using CardinalityClass = ExtNat;

std::ostream& operator<<(std::ostream& os, const ExtNat& e);

class NatSet {
 public:
  struct Finite {
    std::vector<Nat> elements;
    friend bool operator==(const Finite&, const Finite&) = default;
  };
  struct UltimatelyPeriodic {
    Nat threshold = 1;
    Nat modulus = 1;
    std::vector<Nat> residues;
    std::vector<Nat> exceptions_below;
    friend bool operator==(const UltimatelyPeriodic&, const UltimatelyPeriodic&) = default;
  };
  struct PowerImage {
    Nat exponent = 2;
    UltimatelyPeriodic base;
    std::vector<Nat> extras;
    friend bool operator==(const PowerImage&, const PowerImage&) = default;
  };
  using Rep = std::variant<Finite, UltimatelyPeriodic, PowerImage>;

  NatSet() : rep_(Finite{}) {}

  static NatSet empty() { return NatSet(); }
  static NatSet all() { return from(1); }
  /// { n : n >= start }.
  static NatSet from(Nat start);
  static NatSet finite(std::vector<Nat> elements);
  /// Canonicalizes; the result is Finite when `residues` is empty.
  static NatSet ultimately_periodic(Nat threshold, Nat modulus, std::vector<Nat> residues,
                                    std::vector<Nat> exceptions_below);
  /// The set { n : pred(n) }, where pred must satisfy
  /// pred(n) == pred(n + modulus) for all n >= threshold.
  static NatSet from_predicate(Nat threshold, Nat modulus,
                               const std::function<bool(Nat)>& pred);
  /// { b^e : b in base } united with `extras`; base Finite or UltimatelyPeriodic.
  static NatSet power_image(Nat exponent, const NatSet& base, std::vector<Nat> extras = {});

  const Rep& rep() const { return rep_; }
  bool is_finite_form() const { return std::holds_alternative<Finite>(rep_); }
  bool is_periodic_form() const { return std::holds_alternative<UltimatelyPeriodic>(rep_); }
  bool is_power_image() const { return std::holds_alternative<PowerImage>(rep_); }

  /// Finite elements. Precondition: is_finite_form().
  const std::vector<Nat>& elements() const { return std::get<Finite>(rep_).elements; }

  bool is_empty() const { return is_finite_form() && elements().empty(); }

  std::string to_string() const;

  friend bool operator==(const NatSet&, const NatSet&) = default;

 private:
  explicit NatSet(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

std::ostream& operator<<(std::ostream& os, const NatSet& s);

bool member(const NatSet& s, Nat n);
NatSet complement(const NatSet& s);
NatSet intersect(const NatSet& a, const NatSet& b);
NatSet set_union(const NatSet& a, const NatSet& b);
NatSet difference(const NatSet& a, const NatSet& b);
CardinalityClass cardinality(const NatSet& s);
CardinalityClass cardinality_of_complement(const NatSet& s);
bool is_subset(const NatSet& a, const NatSet& b);
bool set_equal(const NatSet& a, const NatSet& b);
/// The first `limit` elements in increasing order.
std::vector<Nat> enumerate(const NatSet& s, std::size_t limit);
/// The first `limit` elements of the complement (defined for every form).
std::vector<Nat> enumerate_complement(const NatSet& s, std::size_t limit);
/// |s ∩ [1, window]|.
std::uint64_t count_up_to(const NatSet& s, Nat window);
/// s ∩ [start, ∞).
NatSet restrict_from(const NatSet& s, Nat start);
/// s ∩ [1, end).
std::vector<Nat> elements_below(const NatSet& s, Nat end);

}  // namespace wcop

#endif  // WCOP_NATSET_HPP
