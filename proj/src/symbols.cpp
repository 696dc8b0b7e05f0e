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

#include "wcop/symbols.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "wcop/errors.hpp"

namespace wcop {

namespace {

// Longest stretch of the tail scanned for isolated zeros.
constexpr Nat kMaxZeroScan = 2'000'000;

bool all_integer_exponents(const std::vector<PowerTerm>& tail) {
  return std::all_of(tail.begin(), tail.end(),
                     [](const PowerTerm& t) { return is_integer(t.exponent); });
}

Rational inverse_power(Nat n, const BigInt& exponent) {
  return rational_pow(Rational(BigInt(std::to_string(n))), -exponent.get_si());
}

// Splits sum c_i n^(-alpha_i) by the fractional part of k*alpha_i where
// n = r^k, r not a perfect power. The numbers r^(-f), f in [0, 1), are
// linearly independent over the rationals, so the sum is rational iff every
// group with f != 0 cancels, and zero iff every group cancels.
std::map<Rational, Rational> group_by_radical(const std::vector<PowerTerm>& tail, Nat n) {
  std::map<Rational, Rational> groups;
  if (n == 1) {
    for (const auto& t : tail) groups[Rational(0)] += t.coefficient;
    return groups;
  }
  const auto [r, k] = perfect_power_decomposition(n);
  for (const auto& t : tail) {
    Rational x = t.exponent * Rational(static_cast<unsigned long>(k));
    BigInt whole;
    mpz_fdiv_q(whole.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    Rational frac = x - Rational(whole);
    groups[frac] += t.coefficient * inverse_power(r, whole);
  }
  return groups;
}

Rational integer_tail_value(const std::vector<PowerTerm>& tail, Nat n) {
  Rational sum = 0;
  for (const auto& t : tail) sum += t.coefficient * inverse_power(n, t.exponent.get_num());
  return sum;
}

// Smallest B >= 1 with B^a * den > num.
Nat least_power_exceeding(const Rational& bound, unsigned long a) {
  auto exceeds = [&](Nat b) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), b, a);
    return Rational(p) > bound;
  };
  Nat hi = 1;
  while (!exceeds(hi)) {
    if (hi > (Nat{1} << 62)) throw OverflowError("tail dominance bound exceeds 64 bits");
    hi *= 2;
  }
  Nat lo = hi / 2;  // !exceeds(lo) unless lo == 0
  while (hi - lo > 1) {
    Nat mid = lo + (hi - lo) / 2;
    if (exceeds(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::optional<Nat> compute_tail_support_from(const std::vector<PowerTerm>& tail, Nat tail_start) {
  if (tail.empty()) return std::nullopt;
  if (tail.size() == 1) return tail_start;
  const Nat bound = std::max(tail_start, dominance_bound(tail));
  if (bound - tail_start > kMaxZeroScan) {
    throw OverflowError("tail zero scan beyond " + std::to_string(kMaxZeroScan) + " points");
  }
  for (Nat n = bound; n > tail_start; --n) {
    if (tail_is_zero_at(tail, n - 1)) return n;
  }
  return tail_start;
}

void append_rational_term(std::ostringstream& os, const PowerTerm& t, bool first) {
  Rational c = t.coefficient;
  if (!first) {
    os << (c < 0 ? " - " : " + ");
    c = abs(c);
  }
  os << c.get_str();
  if (t.exponent == 0) return;
  os << "/n";
  if (t.exponent == 1) return;
  if (is_integer(t.exponent)) {
    os << '^' << t.exponent.get_str();
  } else {
    os << "^(" << t.exponent.get_str() << ')';
  }
}

std::pair<Nat, Nat> shape_of(const NatSet& s) {
  if (s.is_finite_form()) return {s.elements().empty() ? 1 : s.elements().back() + 1, 1};
  if (const auto* p = std::get_if<NatSet::UltimatelyPeriodic>(&s.rep())) {
    return {p->threshold, p->modulus};
  }
  throw UnsupportedSetForm("operation needs a finite or periodic set");
}

Nat ceil_div_shift(Nat target, Nat a, std::int64_t b) {
  // Least n >= 1 with a*n + b >= target.
  __int128 need = static_cast<__int128>(target) - b;
  if (need <= static_cast<__int128>(a)) return 1;
  return static_cast<Nat>((need + a - 1) / a);
}

Rational exact_or_throw(const Sequence& s, Nat n, const char* what) {
  if (auto v = try_weight_at(s, n)) return *v;
  throw UnrepresentableComposition(std::string(what) + ": irrational value at " + std::to_string(n));
}

}  // namespace

Nat dominance_bound(const std::vector<PowerTerm>& terms) {
  if (terms.size() <= 1) return 1;
  const Rational lead = abs(terms[0].coefficient);
  Rational rest = 0;
  for (std::size_t i = 1; i < terms.size(); ++i) rest += abs(terms[i].coefficient);
  // x^(-a_i) <= x^(-a_0 - gap) for x >= 1, so x^gap > rest/lead suffices.
  const Rational gap = terms[1].exponent - terms[0].exponent;
  const Rational ratio_pow =
      rational_pow(rest / lead, static_cast<long>(gap.get_den().get_ui()));
  return least_power_exceeding(ratio_pow, gap.get_num().get_ui());
}

Sequence Sequence::make(std::map<Nat, Rational> exceptions, Nat tail_start,
                        std::vector<PowerTerm> tail) {
  if (tail_start == 0) throw InvalidSymbol("tail start must be >= 1");
  std::map<Rational, Rational> merged;
  for (const auto& t : tail) {
    if (t.exponent < 0) throw InvalidSymbol("tail exponents must be non-negative");
    merged[t.exponent] += t.coefficient;
  }
  Sequence s;
  for (const auto& [alpha, c] : merged) {
    if (c != 0) s.tail_.push_back({c, alpha});
  }
  for (const auto& [n, v] : exceptions) {
    if (n == 0 || n >= tail_start) {
      throw InvalidSymbol("exception key " + std::to_string(n) + " outside [1, " +
                          std::to_string(tail_start) + ")");
    }
    if (v != 0) s.exceptions_.emplace(n, v);
  }
  if (s.tail_.empty()) {
    tail_start = s.exceptions_.empty() ? 1 : s.exceptions_.rbegin()->first + 1;
  } else {
    while (tail_start > 1) {
      const Nat n = tail_start - 1;
      auto it = s.exceptions_.find(n);
      const Rational here = it == s.exceptions_.end() ? Rational(0) : it->second;
      auto tail_here = tail_value(s.tail_, n);
      if (!tail_here || *tail_here != here) break;
      if (it != s.exceptions_.end()) s.exceptions_.erase(it);
      tail_start = n;
    }
  }
  s.tail_start_ = tail_start;
  s.tail_support_from_ = compute_tail_support_from(s.tail_, tail_start);
  return s;
}

Sequence Sequence::finite(std::map<Nat, Rational> values) {
  Nat end = values.empty() ? 1 : values.rbegin()->first + 1;
  return make(std::move(values), end, {});
}

Sequence Sequence::unit(Nat n) { return finite({{n, Rational(1)}}); }

std::string Sequence::to_string() const {
  std::ostringstream os;
  for (const auto& [n, v] : exceptions_) os << "except " << n << " = " << v.get_str() << "; ";
  if (tail_.empty()) {
    os << "tail zero";
  } else {
    os << "tail from " << tail_start_ << " : ";
    for (std::size_t i = 0; i < tail_.size(); ++i) append_rational_term(os, tail_[i], i == 0);
  }
  return os.str();
}

std::optional<Rational> tail_value(const std::vector<PowerTerm>& tail, Nat n) {
  if (all_integer_exponents(tail)) return integer_tail_value(tail, n);
  Rational value = 0;
  for (const auto& [frac, c] : group_by_radical(tail, n)) {
    if (frac == 0) {
      value = c;
    } else if (c != 0) {
      return std::nullopt;
    }
  }
  return value;
}

bool tail_is_zero_at(const std::vector<PowerTerm>& tail, Nat n) {
  if (all_integer_exponents(tail)) return integer_tail_value(tail, n) == 0;
  for (const auto& [frac, c] : group_by_radical(tail, n)) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<Rational> try_weight_at(const Sequence& s, Nat n) {
  if (n == 0) throw std::invalid_argument("sequence index must be >= 1");
  if (n < s.tail_start()) {
    auto it = s.exceptions().find(n);
    return it == s.exceptions().end() ? Rational(0) : it->second;
  }
  return tail_value(s.tail(), n);
}

Rational weight_at(const Sequence& s, Nat n) {
  if (auto v = try_weight_at(s, n)) return *v;
  throw IrrationalValue("value at " + std::to_string(n) + " is irrational");
}

Interval weight_enclosure_at(const Sequence& s, Nat n) {
  if (auto v = try_weight_at(s, n)) return Interval::from_rational(*v);
  Interval sum = Interval::point(0.0);
  for (const auto& t : s.tail()) {
    sum = sum + Interval::from_rational(t.coefficient) * nat_pow(n, -t.exponent);
  }
  return sum;
}

bool is_zero_at(const Sequence& s, Nat n) {
  if (n < s.tail_start()) return !s.exceptions().count(n);
  return tail_is_zero_at(s.tail(), n);
}

NatSet support(const Sequence& s) {
  std::vector<Nat> points;
  for (const auto& [n, v] : s.exceptions()) points.push_back(n);
  const auto from = s.tail_support_from();
  if (!from) return NatSet::finite(std::move(points));
  for (Nat n = s.tail_start(); n < *from; ++n) {
    if (!tail_is_zero_at(s.tail(), n)) points.push_back(n);
  }
  return set_union(NatSet::finite(std::move(points)), NatSet::from(*from));
}

bool is_bounded_away_from_zero(const Weight& u) {
  return !u.tail().empty() && u.tail().front().exponent == 0 && support(u) == NatSet::all();
}

SelfMap SelfMap::make(std::map<Nat, Nat> exceptions, Nat tail_start, MapTail tail) {
  if (tail_start == 0) throw InvalidSymbol("tail start must be >= 1");
  if (exceptions.size() != tail_start - 1 ||
      (!exceptions.empty() &&
       (exceptions.begin()->first != 1 || exceptions.rbegin()->first != tail_start - 1))) {
    throw InvalidSymbol("map exceptions must define every n in [1, " +
                        std::to_string(tail_start) + ")");
  }
  for (const auto& [n, v] : exceptions) {
    if (v == 0) throw InvalidSymbol("map values must be >= 1");
  }
  if (auto* a = std::get_if<AffineTail>(&tail)) {
    if (a->a == 0) throw InvalidSymbol("affine slope must be >= 1");
    __int128 first = static_cast<__int128>(a->a) * tail_start + a->b;
    if (first < 1) throw InvalidSymbol("affine tail leaves the naturals at its start");
    if (a->a == 1 && a->b == 0) tail = IdentityTail{};
  } else if (const auto* c = std::get_if<ConstTail>(&tail)) {
    if (c->k == 0) throw InvalidSymbol("constant tail value must be >= 1");
  } else if (const auto* p = std::get_if<PowerTail>(&tail)) {
    if (p->e < 2) throw InvalidSymbol("power tail exponent must be >= 2");
  }
  SelfMap phi;
  phi.tail_ = tail;
  while (tail_start > 1) {
    const Nat n = tail_start - 1;
    const Nat v = exceptions.at(n);
    if (const auto* a = std::get_if<AffineTail>(&tail)) {
      if (static_cast<__int128>(a->a) * n + a->b != static_cast<__int128>(v)) break;
    } else {
      auto t = std::visit(
          [n](const auto& r) -> std::optional<Nat> {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, PowerTail>) {
              return pow_capped(n, r.e, std::numeric_limits<Nat>::max());
            } else {
              return tail_at(MapTail(r), n);
            }
          },
          tail);
      if (!t || *t != v) break;
    }
    exceptions.erase(n);
    tail_start = n;
  }
  phi.exceptions_ = std::move(exceptions);
  phi.tail_start_ = tail_start;
  return phi;
}

std::string SelfMap::to_string() const {
  std::ostringstream os;
  for (const auto& [n, v] : exceptions_) os << "except " << n << " = " << v << "; ";
  os << "tail from " << tail_start_ << " : ";
  std::visit(
      [&os](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          os << "identity";
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          os << "const " << r.k;
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          if (r.a != 1) os << r.a << '*';
          os << 'n';
          if (r.b > 0) os << " + " << r.b;
          if (r.b < 0) os << " - " << static_cast<Nat>(-(r.b + 1)) + 1;
        } else {
          os << "n^" << r.e;
        }
      },
      tail_);
  return os.str();
}

Nat tail_at(const MapTail& tail, Nat n) {
  return std::visit(
      [n](const auto& r) -> Nat {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          return n;
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          return r.k;
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          __int128 v = static_cast<__int128>(r.a) * n + r.b;
          if (v < 1) throw InvalidSymbol("affine tail below 1 at " + std::to_string(n));
          if (v > static_cast<__int128>(std::numeric_limits<Nat>::max())) {
            throw OverflowError("affine tail overflow");
          }
          return static_cast<Nat>(v);
        } else {
          return checked_pow(n, r.e);
        }
      },
      tail);
}

Nat map_at(const SelfMap& phi, Nat n) {
  if (n == 0) throw std::invalid_argument("map argument must be >= 1");
  if (n < phi.tail_start()) return phi.exceptions().at(n);
  return tail_at(phi.tail(), n);
}

NatSet fiber(const SelfMap& phi, Nat n) {
  std::vector<Nat> points;
  for (const auto& [m, v] : phi.exceptions()) {
    if (v == n) points.push_back(m);
  }
  const Nat start = phi.tail_start();
  std::optional<Nat> single;
  bool cofinite = false;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          if (n >= start) single = n;
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          cofinite = n == r.k;
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          __int128 shifted = static_cast<__int128>(n) - r.b;
          if (shifted > 0 && shifted % r.a == 0) {
            Nat m = static_cast<Nat>(shifted / r.a);
            if (m >= start) single = m;
          }
        } else {
          if (auto root = exact_root(n, r.e); root && *root >= start) single = *root;
        }
      },
      phi.tail());
  if (single) points.push_back(*single);
  NatSet out = NatSet::finite(std::move(points));
  return cofinite ? set_union(out, NatSet::from(start)) : out;
}

NatSet image(const SelfMap& phi, const NatSet& s) {
  const Nat start = phi.tail_start();
  std::vector<Nat> points;
  for (Nat m : elements_below(s, start)) points.push_back(phi.exceptions().at(m));
  NatSet head = NatSet::finite(std::move(points));
  NatSet rest = restrict_from(s, start);
  if (rest.is_empty()) return head;
  if (rest.is_finite_form()) {
    std::vector<Nat> mapped;
    for (Nat m : rest.elements()) mapped.push_back(tail_at(phi.tail(), m));
    return set_union(head, NatSet::finite(std::move(mapped)));
  }
  return std::visit(
      [&](const auto& r) -> NatSet {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          return set_union(rest, head);
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          return set_union(head, NatSet::finite({r.k}));
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          if (rest.is_power_image()) {
            throw UnsupportedSetForm("affine image of a power image");
          }
          const auto [t, period] = shape_of(rest);
          const Nat threshold = tail_at(phi.tail(), std::max(t, start));
          const Nat modulus = checked_mul(r.a, period);
          NatSet tail_image = NatSet::from_predicate(threshold, modulus, [&](Nat y) {
            __int128 shifted = static_cast<__int128>(y) - r.b;
            if (shifted <= 0 || shifted % r.a != 0) return false;
            return member(rest, static_cast<Nat>(shifted / r.a));
          });
          return set_union(head, tail_image);
        } else {
          return set_union(NatSet::power_image(r.e, rest), head);
        }
      },
      phi.tail());
}

NatSet preimage(const SelfMap& phi, const NatSet& s) {
  const auto [t, period] = shape_of(s);
  const Nat start = phi.tail_start();
  Nat threshold = start;
  Nat modulus = period;
  std::optional<Nat> power_root;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          threshold = std::max(start, t);
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          modulus = 1;
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          threshold = std::max(start, ceil_div_shift(t, r.a, r.b));
        } else {
          power_root = iroot_ceil(t, r.e);
          threshold = std::max(start, *power_root);
        }
      },
      phi.tail());
  const auto* periodic = std::get_if<NatSet::UltimatelyPeriodic>(&s.rep());
  return NatSet::from_predicate(threshold, modulus, [&](Nat m) {
    if (m >= start && power_root && m >= *power_root && periodic) {
      const Nat e = std::get<PowerTail>(phi.tail()).e;
      return std::binary_search(periodic->residues.begin(), periodic->residues.end(),
                                powmod(m, e, periodic->modulus));
    }
    if (m >= start && power_root && m >= *power_root) return false;  // beyond a finite set
    return member(s, map_at(phi, m));
  });
}

SelfMap iterate(const SelfMap& phi, Nat m) {
  if (m == 0) throw std::invalid_argument("iterate count must be >= 1");
  if (m == 1) return phi;
  const Nat start = phi.tail_start();
  auto orbit = [&](Nat n) {
    for (Nat i = 0; i < m; ++i) n = map_at(phi, n);
    return n;
  };
  Nat threshold = start;
  MapTail composite = phi.tail();
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstTail>) {
          Nat v = r.k;
          for (Nat i = 1; i < m; ++i) v = map_at(phi, v);
          composite = ConstTail{v};
        } else {
          // Past T_m every one of the m steps stays in the tail region.
          for (Nat i = 1; i < m; ++i) {
            Nat least = threshold;
            if constexpr (std::is_same_v<T, AffineTail>) {
              least = ceil_div_shift(threshold, r.a, r.b);
            } else if constexpr (std::is_same_v<T, PowerTail>) {
              least = iroot_ceil(threshold, r.e);
            }
            threshold = std::max(start, least);
          }
          if constexpr (std::is_same_v<T, AffineTail>) {
            __int128 a = 1;
            __int128 b = 0;
            for (Nat i = 0; i < m; ++i) {
              b = static_cast<__int128>(r.a) * b + r.b;
              a *= r.a;
              if (a > static_cast<__int128>(std::numeric_limits<Nat>::max()) ||
                  b > std::numeric_limits<std::int64_t>::max() ||
                  b < std::numeric_limits<std::int64_t>::min()) {
                throw OverflowError("iterated affine tail overflow");
              }
            }
            composite = AffineTail{static_cast<Nat>(a), static_cast<std::int64_t>(b)};
          } else if constexpr (std::is_same_v<T, PowerTail>) {
            composite = PowerTail{checked_pow(r.e, m)};
          }
        }
      },
      phi.tail());
  std::map<Nat, Nat> exceptions;
  for (Nat n = 1; n < threshold; ++n) exceptions[n] = orbit(n);
  return SelfMap::make(std::move(exceptions), threshold, composite);
}

bool check_support_invariant(const Weight& u, const SelfMap& phi) {
  const NatSet s = support(u);
  return is_subset(image(phi, s), s);
}

Sequence seq_pointwise_mul(const Sequence& f, const Sequence& g) {
  const Nat start = std::max(f.tail_start(), g.tail_start());
  std::map<Nat, Rational> values;
  auto visit = [&](Nat n) {
    if (is_zero_at(f, n) || is_zero_at(g, n)) return;
    values[n] = exact_or_throw(f, n, "product") * exact_or_throw(g, n, "product");
  };
  // A finitely supported factor bounds the candidates to its own keys.
  if (f.has_zero_tail() || g.has_zero_tail()) {
    const Sequence& sparse = f.has_zero_tail() ? f : g;
    for (const auto& entry : sparse.exceptions()) visit(entry.first);
  } else {
    for (Nat n = 1; n < start; ++n) visit(n);
  }
  std::vector<PowerTerm> tail;
  for (const auto& a : f.tail()) {
    for (const auto& b : g.tail()) {
      tail.push_back({a.coefficient * b.coefficient, a.exponent + b.exponent});
    }
  }
  return Sequence::make(std::move(values), start, std::move(tail));
}

Sequence seq_add(const Sequence& f, const Sequence& g) {
  const Nat start = std::max(f.tail_start(), g.tail_start());
  std::map<Nat, Rational> values;
  auto visit = [&](Nat n) {
    if (is_zero_at(f, n) && is_zero_at(g, n)) return;
    values[n] = exact_or_throw(f, n, "sum") + exact_or_throw(g, n, "sum");
  };
  if (f.has_zero_tail() && g.has_zero_tail()) {
    for (const auto& entry : f.exceptions()) visit(entry.first);
    for (const auto& entry : g.exceptions()) visit(entry.first);
  } else {
    for (Nat n = 1; n < start; ++n) visit(n);
  }
  std::vector<PowerTerm> tail = f.tail();
  tail.insert(tail.end(), g.tail().begin(), g.tail().end());
  return Sequence::make(std::move(values), start, std::move(tail));
}

Sequence seq_negate(const Sequence& f) {
  std::map<Nat, Rational> values;
  for (const auto& [n, v] : f.exceptions()) values[n] = -v;
  std::vector<PowerTerm> tail;
  for (const auto& t : f.tail()) tail.push_back({-t.coefficient, t.exponent});
  return Sequence::make(std::move(values), f.tail_start(), std::move(tail));
}

Sequence seq_compose(const Sequence& f, const SelfMap& phi) {
  const Nat start = phi.tail_start();
  Nat threshold = start;
  std::vector<PowerTerm> tail;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, IdentityTail>) {
          threshold = std::max(start, f.tail_start());
          tail = f.tail();
        } else if constexpr (std::is_same_v<T, ConstTail>) {
          if (!is_zero_at(f, r.k)) tail.push_back({exact_or_throw(f, r.k, "composition"), 0});
        } else if constexpr (std::is_same_v<T, AffineTail>) {
          if (!f.has_zero_tail()) {
            throw UnrepresentableComposition("power-sum tail composed with an affine tail " +
                                             phi.to_string());
          }
          threshold = std::max(start, ceil_div_shift(f.tail_start(), r.a, r.b));
        } else {
          threshold = std::max(start, iroot_ceil(f.tail_start(), r.e));
          for (const auto& t : f.tail()) {
            tail.push_back({t.coefficient, t.exponent * Rational(static_cast<unsigned long>(r.e))});
          }
        }
      },
      phi.tail());
  std::map<Nat, Rational> values;
  for (Nat n = 1; n < threshold; ++n) {
    const Nat target = map_at(phi, n);
    if (is_zero_at(f, target)) continue;
    values[n] = exact_or_throw(f, target, "composition");
  }
  return Sequence::make(std::move(values), threshold, std::move(tail));
}

Sequence seq_restrict(const Sequence& f, const NatSet& s) {
  std::map<Nat, Rational> values;
  auto keep_point = [&](Nat n) {
    if (!is_zero_at(f, n)) values[n] = exact_or_throw(f, n, "restriction");
  };
  if (f.has_zero_tail()) {
    for (const auto& [n, v] : f.exceptions()) {
      if (member(s, n)) values[n] = v;
    }
    return Sequence::finite(std::move(values));
  }
  if (s.is_finite_form()) {
    for (Nat n : s.elements()) keep_point(n);
    return Sequence::finite(std::move(values));
  }
  const auto* p = std::get_if<NatSet::UltimatelyPeriodic>(&s.rep());
  if (p == nullptr || p->modulus != 1) {
    throw UnsupportedSetForm("a power-sum tail can only be cut by a cofinite set");
  }
  const Nat start = std::max(f.tail_start(), p->threshold);
  for (Nat n = 1; n < start; ++n) {
    if (member(s, n)) keep_point(n);
  }
  return Sequence::make(std::move(values), start, f.tail());
}

}  // namespace wcop
