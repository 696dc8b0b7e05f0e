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

#include "wcop/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wcop/errors.hpp"

namespace wcop {

Nat checked_add(Nat a, Nat b) {
  Nat out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("natural addition overflow");
  }
  return out;
}

Nat checked_mul(Nat a, Nat b) {
  Nat out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("natural multiplication overflow");
  }
  return out;
}

Nat checked_pow(Nat base, Nat exponent) {
  auto v = pow_capped(base, exponent, std::numeric_limits<Nat>::max());
  if (!v) throw OverflowError("natural power overflow");
  return *v;
}

std::optional<Nat> pow_capped(Nat base, Nat exponent, Nat cap) {
  Nat result = 1;
  for (Nat i = 0; i < exponent; ++i) {
    if (base == 0) return 0;
    if (base == 1) return result <= cap ? std::optional<Nat>(result) : std::nullopt;
    Nat next;
    if (__builtin_mul_overflow(result, base, &next) || next > cap) {
      return std::nullopt;
    }
    result = next;
  }
  if (result > cap) return std::nullopt;
  return result;
}

Nat gcd_nat(Nat a, Nat b) { return std::gcd(a, b); }

Nat lcm_nat(Nat a, Nat b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd_nat(a, b), b);
}

Nat iroot_floor(Nat n, Nat k) {
  if (k == 0) throw std::invalid_argument("zeroth root");
  if (k == 1 || n < 2) return n;
  if (k >= 64) return 1;
  auto r = static_cast<Nat>(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(k)));
  // Fix up the floating estimate in both directions.
  while (r > 0 && !pow_capped(r, k, n)) --r;
  while (pow_capped(r + 1, k, n)) ++r;
  return r;
}

Nat iroot_ceil(Nat n, Nat k) {
  Nat r = iroot_floor(n, k);
  if (checked_pow(r, k) == n) return r;
  return r + 1;
}

std::optional<Nat> exact_root(Nat n, Nat k) {
  Nat r = iroot_floor(n, k);
  auto back = pow_capped(r, k, n);
  if (back && *back == n) return r;
  return std::nullopt;
}

std::pair<Nat, Nat> perfect_power_decomposition(Nat n) {
  if (n < 4) return {n, 1};
  for (Nat k = 63; k >= 2; --k) {
    if (auto r = exact_root(n, k); r && *r > 1) return {*r, k};
  }
  return {n, 1};
}

Nat powmod(Nat base, Nat exponent, Nat modulus) {
  if (modulus == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = base % modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = (result * b) % modulus;
    b = (b * b) % modulus;
    exponent >>= 1U;
  }
  return static_cast<Nat>(result);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto digits_ok = [&](std::size_t from, std::size_t to) {
    if (from >= to) return false;
    return std::all_of(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  if (slash == std::string::npos) {
    if (!digits_ok(start, s.size())) throw std::invalid_argument("bad rational '" + s + "'");
  } else if (!digits_ok(start, slash) || !digits_ok(slash + 1, s.size())) {
    throw std::invalid_argument("bad rational '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Rational rational_pow(const Rational& q, long k) {
  if (k < 0) {
    if (q == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / q;
    return rational_pow(inv, -k);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(k));
  mpz_pow_ui(den.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(k));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::optional<Rational> exact_rational_root(const Rational& q, unsigned long k) {
  if (q < 0) return std::nullopt;
  BigInt num;
  BigInt den;
  if (mpz_root(num.get_mpz_t(), q.get_num().get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den().get_mpz_t(), k) == 0) return std::nullopt;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

double round_down(double v) { return std::nextafter(v, -std::numeric_limits<double>::infinity()); }
double round_up(double v) { return std::nextafter(v, std::numeric_limits<double>::infinity()); }

Interval Interval::from_rational(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) == q) return point(d);
  return {round_down(d), round_up(d)};
}

Interval operator+(const Interval& a, const Interval& b) {
  return {round_down(a.lo + b.lo), round_up(a.hi + b.hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {round_down(a.lo - b.hi), round_up(a.hi - b.lo)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const double c[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {round_down(*std::min_element(std::begin(c), std::end(c))),
          round_up(*std::max_element(std::begin(c), std::end(c)))};
}

Interval abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return {-a.hi, -a.lo};
  return {0.0, std::max(-a.lo, a.hi)};
}

namespace {

// libm pow is not correctly rounded and the exponent itself is rounded to
// double; widen by a relative margin covering both.
Interval widened_pow(double lo, double hi, double exponent, double exponent_abs) {
  auto one = [&](double x, bool upward) {
    if (x == 0.0) return 0.0;
    double v = std::pow(x, exponent);
    double rel = 8.0 * std::numeric_limits<double>::epsilon() *
                 (1.0 + exponent_abs * std::fabs(std::log(x)));
    return upward ? round_up(v * (1.0 + rel)) : round_down(v * (1.0 - rel));
  };
  double low;
  double high;
  if (exponent < 0) {
    // The small endpoint maps to the large value.
    low = one(hi, false);
    high = lo == 0.0 ? std::numeric_limits<double>::infinity() : one(lo, true);
  } else {
    low = one(lo, false);
    high = one(hi, true);
  }
  return {std::max(0.0, low), high};
}

}  // namespace

Interval pow(const Interval& a, const Rational& exponent) {
  if (a.lo < 0) throw std::domain_error("interval pow of a possibly negative base");
  if (exponent == 0) return Interval::point(1.0);
  if (exponent == 1) return a;
  double e = exponent.get_d();
  return widened_pow(a.lo, a.hi, e, std::fabs(e));
}

Interval nat_pow(Nat n, const Rational& exponent) {
  double d = static_cast<double>(n);
  Interval base = static_cast<Nat>(d) == n ? Interval::point(d) : Interval{round_down(d), round_up(d)};
  return pow(base, exponent);
}

}  // namespace wcop
