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

#include "wcop/natset.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>

#include "wcop/errors.hpp"

namespace wcop {

std::string ExtNat::to_string() const {
  return is_finite() ? std::to_string(value()) : std::string("infinite");
}

std::ostream& operator<<(std::ostream& os, const ExtNat& e) { return os << e.to_string(); }

namespace {

using Finite = NatSet::Finite;
using Periodic = NatSet::UltimatelyPeriodic;
using PowerImage = NatSet::PowerImage;

void sort_unique(std::vector<Nat>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains_sorted(const std::vector<Nat>& v, Nat n) {
  return std::binary_search(v.begin(), v.end(), n);
}

bool member_periodic(const Periodic& p, Nat n) {
  if (n < p.threshold) return contains_sorted(p.exceptions_below, n);
  return contains_sorted(p.residues, n % p.modulus);
}

// Threshold/modulus such that membership is periodic beyond the threshold.
// A finite set is periodic (with an empty pattern) beyond its maximum.
std::pair<Nat, Nat> periodic_shape(const NatSet& s) {
  return std::visit(
      [](const auto& r) -> std::pair<Nat, Nat> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return {r.elements.empty() ? 1 : r.elements.back() + 1, 1};
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return {r.threshold, r.modulus};
        } else {
          throw UnsupportedSetForm("power image has no periodic shape");
        }
      },
      s.rep());
}

// Canonical form: minimal period first, then minimal threshold for it.
NatSet::Rep canonicalize(Nat threshold, Nat modulus, std::vector<bool> pattern,
                         std::vector<Nat> exceptions) {
  sort_unique(exceptions);
  if (std::none_of(pattern.begin(), pattern.end(), [](bool b) { return b; })) {
    return Finite{std::move(exceptions)};
  }
  for (Nat d = 1; d <= modulus; ++d) {
    if (modulus % d != 0) continue;
    bool ok = true;
    for (Nat r = 0; r < modulus && ok; ++r) ok = pattern[r] == pattern[r % d];
    if (ok) {
      pattern.resize(d);
      modulus = d;
      break;
    }
  }
  while (threshold > 1) {
    Nat n = threshold - 1;
    bool in_exceptions = !exceptions.empty() && exceptions.back() == n;
    if (pattern[n % modulus] != in_exceptions) break;
    if (in_exceptions) exceptions.pop_back();
    threshold = n;
  }
  Periodic p;
  p.threshold = threshold;
  p.modulus = modulus;
  for (Nat r = 0; r < modulus; ++r) {
    if (pattern[r]) p.residues.push_back(r);
  }
  p.exceptions_below = std::move(exceptions);
  return p;
}

// Whether b^e lies in the periodic set p, without overflowing: beyond the
// smallest root of the threshold only the residue of b^e matters.
bool power_member(const Periodic& p, Nat b, Nat e, Nat root_of_threshold) {
  if (b >= root_of_threshold) return contains_sorted(p.residues, powmod(b, e, p.modulus));
  return member_periodic(p, checked_pow(b, e));
}

const Periodic& as_periodic(const NatSet& s) { return std::get<Periodic>(s.rep()); }

NatSet base_set(const Periodic& p) {
  return NatSet::ultimately_periodic(p.threshold, p.modulus, p.residues, p.exceptions_below);
}

NatSet intersect_power_periodic(const PowerImage& pi, const NatSet& x) {
  if (x.is_finite_form()) {
    const NatSet whole = NatSet::power_image(pi.exponent, base_set(pi.base), pi.extras);
    std::vector<Nat> kept;
    for (Nat n : x.elements()) {
      if (member(whole, n)) kept.push_back(n);
    }
    return NatSet::finite(std::move(kept));
  }
  const Periodic& xp = as_periodic(x);
  const Nat e = pi.exponent;
  const Nat root = iroot_ceil(xp.threshold, e);
  const Nat threshold = std::max(pi.base.threshold, root);
  const Nat modulus = lcm_nat(pi.base.modulus, xp.modulus);
  NatSet base = NatSet::from_predicate(threshold, modulus, [&](Nat b) {
    return member_periodic(pi.base, b) && power_member(xp, b, e, root);
  });
  std::vector<Nat> extras;
  for (Nat v : pi.extras) {
    if (member_periodic(xp, v)) extras.push_back(v);
  }
  return NatSet::power_image(e, base, std::move(extras));
}

template <class Op>
NatSet combine_periodic(const NatSet& a, const NatSet& b, Op op) {
  auto [ta, ma] = periodic_shape(a);
  auto [tb, mb] = periodic_shape(b);
  return NatSet::from_predicate(std::max(ta, tb), lcm_nat(ma, mb),
                                [&](Nat n) { return op(member(a, n), member(b, n)); });
}

std::vector<Nat> filter(const std::vector<Nat>& v, const std::function<bool(Nat)>& keep) {
  std::vector<Nat> out;
  std::copy_if(v.begin(), v.end(), std::back_inserter(out), keep);
  return out;
}

}  // namespace

NatSet NatSet::from(Nat start) {
  if (start == 0) start = 1;
  return NatSet(canonicalize(start, 1, {true}, {}));
}

NatSet NatSet::finite(std::vector<Nat> elements) {
  sort_unique(elements);
  if (!elements.empty() && elements.front() == 0) {
    throw InvalidSymbol("natural sets contain positive integers only");
  }
  return NatSet(Finite{std::move(elements)});
}

NatSet NatSet::ultimately_periodic(Nat threshold, Nat modulus, std::vector<Nat> residues,
                                   std::vector<Nat> exceptions_below) {
  if (threshold == 0 || modulus == 0) throw InvalidSymbol("threshold and modulus must be >= 1");
  std::vector<bool> pattern(modulus, false);
  for (Nat r : residues) {
    if (r >= modulus) throw InvalidSymbol("residue out of range");
    pattern[r] = true;
  }
  for (Nat n : exceptions_below) {
    if (n == 0 || n >= threshold) throw InvalidSymbol("exception outside [1, threshold)");
  }
  return NatSet(canonicalize(threshold, modulus, std::move(pattern), std::move(exceptions_below)));
}

NatSet NatSet::from_predicate(Nat threshold, Nat modulus, const std::function<bool(Nat)>& pred) {
  if (threshold == 0) threshold = 1;
  if (modulus == 0) throw InvalidSymbol("modulus must be >= 1");
  std::vector<Nat> exceptions;
  for (Nat n = 1; n < threshold; ++n) {
    if (pred(n)) exceptions.push_back(n);
  }
  std::vector<bool> pattern(modulus, false);
  for (Nat i = 0; i < modulus; ++i) {
    Nat n = threshold + i;
    pattern[n % modulus] = pred(n);
  }
  return NatSet(canonicalize(threshold, modulus, std::move(pattern), std::move(exceptions)));
}

NatSet NatSet::power_image(Nat exponent, const NatSet& base, std::vector<Nat> extras) {
  if (exponent == 0) throw InvalidSymbol("power image exponent must be >= 1");
  sort_unique(extras);
  if (exponent == 1) return set_union(base, NatSet::finite(std::move(extras)));
  if (const auto* inner = std::get_if<PowerImage>(&base.rep())) {
    // (b^a)^e folds to b^(a e).
    const Nat folded = checked_mul(inner->exponent, exponent);
    for (Nat x : inner->extras) extras.push_back(checked_pow(x, exponent));
    NatSet inner_base = base_set(inner->base);
    return power_image(folded, inner_base, std::move(extras));
  }
  if (base.is_finite_form()) {
    for (Nat b : base.elements()) extras.push_back(checked_pow(b, exponent));
    return NatSet::finite(std::move(extras));
  }
  // Fold perfect powers among the extras into the base.
  std::vector<Nat> roots;
  std::vector<Nat> kept;
  for (Nat x : extras) {
    if (x == 0) throw InvalidSymbol("natural sets contain positive integers only");
    if (auto r = exact_root(x, exponent)) {
      roots.push_back(*r);
    } else {
      kept.push_back(x);
    }
  }
  NatSet full_base = roots.empty() ? base : set_union(base, NatSet::finite(roots));
  PowerImage pi;
  pi.exponent = exponent;
  pi.base = as_periodic(full_base);
  pi.extras = std::move(kept);
  return NatSet(std::move(pi));
}

std::string NatSet::to_string() const {
  std::ostringstream os;
  auto list = [&](const std::vector<Nat>& v) {
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << '}';
  };
  auto periodic = [&](const Periodic& p) {
    if (!p.exceptions_below.empty()) {
      list(p.exceptions_below);
      os << " U ";
    }
    if (p.modulus == 1) {
      os << "{n >= " << p.threshold << '}';
    } else {
      os << "{n >= " << p.threshold << " : n mod " << p.modulus << " in ";
      list(p.residues);
      os << '}';
    }
  };
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Finite>) {
          list(r.elements);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          periodic(r);
        } else {
          os << "{b^" << r.exponent << " : b in ";
          periodic(r.base);
          os << '}';
          if (!r.extras.empty()) {
            os << " U ";
            list(r.extras);
          }
        }
      },
      rep_);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const NatSet& s) { return os << s.to_string(); }

bool member(const NatSet& s, Nat n) {
  if (n == 0) return false;
  return std::visit(
      [n](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return contains_sorted(r.elements, n);
        } else if constexpr (std::is_same_v<T, Periodic>) {
          return member_periodic(r, n);
        } else {
          if (contains_sorted(r.extras, n)) return true;
          auto root = exact_root(n, r.exponent);
          return root && member_periodic(r.base, *root);
        }
      },
      s.rep());
}

NatSet complement(const NatSet& s) {
  if (s.is_power_image()) {
    throw UnsupportedSetForm("the complement of a power image is not representable");
  }
  auto [t, m] = periodic_shape(s);
  return NatSet::from_predicate(t, m, [&](Nat n) { return !member(s, n); });
}

NatSet intersect(const NatSet& a, const NatSet& b) {
  if (a.is_power_image() && b.is_power_image()) {
    throw UnsupportedSetForm("intersection of two power images");
  }
  if (a.is_power_image()) return intersect_power_periodic(std::get<PowerImage>(a.rep()), b);
  if (b.is_power_image()) return intersect_power_periodic(std::get<PowerImage>(b.rep()), a);
  if (a.is_finite_form()) return NatSet::finite(filter(a.elements(), [&](Nat n) { return member(b, n); }));
  if (b.is_finite_form()) return NatSet::finite(filter(b.elements(), [&](Nat n) { return member(a, n); }));
  return combine_periodic(a, b, [](bool x, bool y) { return x && y; });
}

NatSet set_union(const NatSet& a, const NatSet& b) {
  if (a.is_power_image() || b.is_power_image()) {
    const NatSet& pi_set = a.is_power_image() ? a : b;
    const NatSet& other = a.is_power_image() ? b : a;
    if (!other.is_finite_form()) {
      throw UnsupportedSetForm("union of a power image with an infinite non-power set");
    }
    const auto& pi = std::get<PowerImage>(pi_set.rep());
    std::vector<Nat> extras = pi.extras;
    extras.insert(extras.end(), other.elements().begin(), other.elements().end());
    return NatSet::power_image(pi.exponent,
                               base_set(pi.base),
                               std::move(extras));
  }
  if (a.is_finite_form() && b.is_finite_form()) {
    std::vector<Nat> all = a.elements();
    all.insert(all.end(), b.elements().begin(), b.elements().end());
    return NatSet::finite(std::move(all));
  }
  return combine_periodic(a, b, [](bool x, bool y) { return x || y; });
}

NatSet difference(const NatSet& a, const NatSet& b) {
  if (a.is_power_image() && b.is_power_image()) {
    throw UnsupportedSetForm("difference of two power images");
  }
  if (a.is_finite_form()) return NatSet::finite(filter(a.elements(), [&](Nat n) { return !member(b, n); }));
  if (a.is_power_image()) {
    const auto& pi = std::get<PowerImage>(a.rep());
    if (b.is_finite_form()) {
      // Drop the removed extras and the roots of removed powers.
      std::vector<Nat> extras = filter(pi.extras, [&](Nat n) { return !member(b, n); });
      std::vector<Nat> removed_roots;
      for (Nat n : b.elements()) {
        if (auto r = exact_root(n, pi.exponent)) removed_roots.push_back(*r);
      }
      NatSet base = difference(base_set(pi.base),
                               NatSet::finite(std::move(removed_roots)));
      return NatSet::power_image(pi.exponent, base, std::move(extras));
    }
    return intersect_power_periodic(pi, complement(b));
  }
  if (b.is_power_image()) {
    throw UnsupportedSetForm("an infinite periodic set minus a power image is not representable");
  }
  if (b.is_finite_form()) {
    auto [t, m] = periodic_shape(a);
    Nat threshold = std::max(t, b.elements().empty() ? Nat{1} : b.elements().back() + 1);
    return NatSet::from_predicate(threshold, m, [&](Nat n) { return member(a, n) && !member(b, n); });
  }
  return combine_periodic(a, b, [](bool x, bool y) { return x && !y; });
}

CardinalityClass cardinality(const NatSet& s) {
  if (s.is_finite_form()) return ExtNat::finite(s.elements().size());
  return ExtNat::infinite();
}

CardinalityClass cardinality_of_complement(const NatSet& s) {
  if (const auto* p = std::get_if<Periodic>(&s.rep())) {
    if (p->modulus == 1) {
      return ExtNat::finite(p->threshold - 1 - p->exceptions_below.size());
    }
  }
  // Finite sets have cofinite complements; a power image skips infinitely
  // many naturals between consecutive powers.
  return ExtNat::infinite();
}

bool is_subset(const NatSet& a, const NatSet& b) {
  if (a.is_finite_form()) {
    return std::all_of(a.elements().begin(), a.elements().end(), [&](Nat n) { return member(b, n); });
  }
  if (b.is_finite_form()) return false;
  if (a.is_periodic_form()) {
    // An infinite periodic set has positive density, a power image has none.
    if (b.is_power_image()) return false;
    return difference(a, b).is_empty();
  }
  const auto& pa = std::get<PowerImage>(a.rep());
  if (b.is_periodic_form()) return difference(a, b).is_empty();
  const auto& pb = std::get<PowerImage>(b.rep());
  for (Nat x : pa.extras) {
    if (!member(b, x)) return false;
  }
  if (pa.exponent < pb.exponent) return false;
  if (pa.exponent % pb.exponent != 0) {
    throw UnsupportedSetForm("power images with non-dividing exponents");
  }
  // Canonical extras of b are not pb.exponent-th powers, so only b's base
  // can absorb the powers of a's base.
  NatSet base_a = base_set(pa.base);
  NatSet base_b = base_set(pb.base);
  const Nat k = pa.exponent / pb.exponent;
  if (k == 1) return is_subset(base_a, base_b);
  return difference(NatSet::power_image(k, base_a), base_b).is_empty();
}

bool set_equal(const NatSet& a, const NatSet& b) { return a == b; }

std::vector<Nat> enumerate(const NatSet& s, std::size_t limit) {
  std::vector<Nat> out;
  if (limit == 0) return out;
  if (s.is_finite_form()) {
    const auto& e = s.elements();
    out.assign(e.begin(), e.begin() + static_cast<long>(std::min(limit, e.size())));
    return out;
  }
  if (const auto* p = std::get_if<Periodic>(&s.rep())) {
    for (Nat n = 1; out.size() < limit; ++n) {
      if (member_periodic(*p, n)) out.push_back(n);
    }
    return out;
  }
  const auto& pi = std::get<PowerImage>(s.rep());
  // Merge the increasing sequence of base powers with the extras.
  std::size_t xi = 0;
  Nat b = 1;
  auto next_power = [&]() -> std::optional<Nat> {
    for (;; ++b) {
      if (member_periodic(pi.base, b)) {
        auto v = pow_capped(b, pi.exponent, std::numeric_limits<Nat>::max());
        ++b;
        return v;
      }
    }
  };
  std::optional<Nat> pending = next_power();
  while (out.size() < limit) {
    const bool take_extra =
        xi < pi.extras.size() && (!pending || pi.extras[xi] < *pending);
    if (take_extra) {
      out.push_back(pi.extras[xi++]);
    } else if (pending) {
      out.push_back(*pending);
      pending = next_power();
    } else {
      throw OverflowError("power image enumeration exceeds 64 bits");
    }
  }
  return out;
}

std::vector<Nat> enumerate_complement(const NatSet& s, std::size_t limit) {
  std::vector<Nat> out;
  const CardinalityClass size = cardinality_of_complement(s);
  const std::size_t wanted =
      size.is_finite() ? std::min<std::size_t>(limit, size.value()) : limit;
  for (Nat n = 1; out.size() < wanted; ++n) {
    if (!member(s, n)) out.push_back(n);
  }
  return out;
}

std::uint64_t count_up_to(const NatSet& s, Nat window) {
  if (s.is_finite_form()) {
    const auto& e = s.elements();
    return static_cast<std::uint64_t>(std::upper_bound(e.begin(), e.end(), window) - e.begin());
  }
  std::uint64_t count = 0;
  for (Nat n = 1; n <= window; ++n) count += member(s, n) ? 1 : 0;
  return count;
}

NatSet restrict_from(const NatSet& s, Nat start) {
  if (start <= 1) return s;
  return intersect(s, NatSet::from(start));
}

std::vector<Nat> elements_below(const NatSet& s, Nat end) {
  std::vector<Nat> out;
  if (s.is_finite_form()) {
    for (Nat n : s.elements()) {
      if (n >= end) break;
      out.push_back(n);
    }
    return out;
  }
  for (Nat n = 1; n < end; ++n) {
    if (member(s, n)) out.push_back(n);
  }
  return out;
}

}  // namespace wcop
