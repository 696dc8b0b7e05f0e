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

// Exact integer/rational helpers and an outward-rounded double interval.

#ifndef WCOP_NUMERIC_HPP
#define WCOP_NUMERIC_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace wcop {

using Nat = std::uint64_t;
using BigInt = mpz_class;
using Rational = mpq_class;

// Checked natural arithmetic; throws OverflowError.
Nat checked_add(Nat a, Nat b);
Nat checked_mul(Nat a, Nat b);
Nat checked_pow(Nat base, Nat exponent);
/// base^exponent, or nullopt when it exceeds `cap`.
std::optional<Nat> pow_capped(Nat base, Nat exponent, Nat cap);

Nat gcd_nat(Nat a, Nat b);
Nat lcm_nat(Nat a, Nat b);

/// floor(n^(1/k)) for k >= 1.
Nat iroot_floor(Nat n, Nat k);
/// Smallest r with r^k >= n.
Nat iroot_ceil(Nat n, Nat k);
/// r with r^k == n, if one exists.
std::optional<Nat> exact_root(Nat n, Nat k);
/// Writes n = r^k with k maximal; returns (r, k). n = 1 gives (1, 1).
std::pair<Nat, Nat> perfect_power_decomposition(Nat n);

Nat powmod(Nat base, Nat exponent, Nat modulus);

/// Parses "a", "-a", "a/b"; throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
/// q^k for integer k (negative allowed when q != 0).
Rational rational_pow(const Rational& q, long k);
/// Exact k-th root of a non-negative rational, when rational.
std::optional<Rational> exact_rational_root(const Rational& q, unsigned long k);

/// A closed interval [lo, hi] of doubles, maintained with outward rounding so
/// that it always encloses the exact real it stands for.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  /// Encloses the rational q (conversion widened by one ulp on each side).
  static Interval from_rational(const Rational& q);

  double width() const { return hi - lo; }
  bool contains(double v) const { return lo <= v && v <= hi; }
  bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval abs(const Interval& a);
/// a^exponent for a >= 0 and rational exponent (widened for libm error).
Interval pow(const Interval& a, const Rational& exponent);
/// n^exponent for a natural n and rational exponent.
Interval nat_pow(Nat n, const Rational& exponent);

double round_down(double v);
double round_up(double v);

}  // namespace wcop

#endif  // WCOP_NUMERIC_HPP
