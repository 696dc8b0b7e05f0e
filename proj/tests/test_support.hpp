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

// Random generators and brute-force helpers shared by the test binaries.

#ifndef WCOP_TESTS_TEST_SUPPORT_HPP
#define WCOP_TESTS_TEST_SUPPORT_HPP

#include <algorithm>
#include <bitset>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "wcop/analysis.hpp"
#include "wcop/natset.hpp"
#include "wcop/symbols.hpp"

namespace wcop::testing {

constexpr Nat kWindow = 512;
using Bits = std::bitset<kWindow + 1>;

inline Bits to_bits(const NatSet& s) {
  Bits b;
  for (Nat n = 1; n <= kWindow; ++n) b[n] = member(s, n);
  return b;
}

// Finite or ultimately periodic, built directly from random fields so that
// canonicalization gets exercised on non-canonical input.
inline NatSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<Nat> small(1, 40);
  if (kind(rng) == 0) {
    std::vector<Nat> elems;
    int count = static_cast<int>(small(rng) % 12);
    for (int i = 0; i < count; ++i) elems.push_back(small(rng) * (1 + small(rng) % 3));
    return NatSet::finite(elems);
  }
  const Nat threshold = small(rng);
  const Nat modulus = 1 + small(rng) % 12;
  std::vector<Nat> residues;
  for (Nat r = 0; r < modulus; ++r) {
    if (rng() % 2) residues.push_back(r);
  }
  std::vector<Nat> exceptions;
  for (Nat n = 1; n < threshold; ++n) {
    if (rng() % 3 == 0) exceptions.push_back(n);
  }
  return NatSet::ultimately_periodic(threshold, modulus, residues, exceptions);
}

inline Rational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

struct MapOptions {
  bool allow_const = true;
  bool allow_power = true;
  Nat max_start = 10;
  Nat max_value = 12;
};

inline SelfMap random_map(std::mt19937_64& rng, const MapOptions& opt = {}) {
  std::uniform_int_distribution<Nat> start_dist(1, opt.max_start);
  std::uniform_int_distribution<Nat> value(1, opt.max_value);
  const Nat start = start_dist(rng);
  std::map<Nat, Nat> exceptions;
  for (Nat n = 1; n < start; ++n) exceptions[n] = value(rng);
  MapTail tail = IdentityTail{};
  for (;;) {
    switch (rng() % 4) {
      case 0:
        tail = IdentityTail{};
        break;
      case 1:
        if (!opt.allow_const) continue;
        tail = ConstTail{value(rng)};
        break;
      case 2: {
        Nat a = 1 + rng() % 3;
        auto b = static_cast<std::int64_t>(rng() % 7) - 3;
        if (static_cast<std::int64_t>(a * start) + b < 1) continue;
        tail = AffineTail{a, b};
        break;
      }
      default:
        if (!opt.allow_power) continue;
        tail = PowerTail{2 + rng() % 2};
        break;
    }
    break;
  }
  return SelfMap::make(std::move(exceptions), start, tail);
}

struct WeightOptions {
  Nat max_start = 10;
  int max_terms = 3;
  int max_alpha = 3;
  int zero_percent = 30;
};

inline Weight random_weight(std::mt19937_64& rng, const WeightOptions& opt = {}) {
  std::uniform_int_distribution<Nat> start_dist(1, opt.max_start);
  const Nat start = start_dist(rng);
  std::map<Nat, Rational> exceptions;
  for (Nat n = 1; n < start; ++n) {
    if (static_cast<int>(rng() % 100) >= opt.zero_percent) {
      exceptions[n] = random_rational(rng, 5, 4);
    }
  }
  std::vector<PowerTerm> tail;
  const int terms = static_cast<int>(rng() % static_cast<unsigned>(opt.max_terms + 1));
  for (int i = 0; i < terms; ++i) {
    tail.push_back({random_rational(rng, 5, 4),
                    Rational(static_cast<int>(rng() % static_cast<unsigned>(opt.max_alpha + 1)))});
  }
  return Weight::make(std::move(exceptions), start, std::move(tail));
}

inline OperatorSpec random_op(std::mt19937_64& rng, const MapOptions& mo = {},
                              const WeightOptions& wo = {}) {
  OperatorSpec op;
  op.u = random_weight(rng, wo);
  op.phi = random_map(rng, mo);
  op.p = Rational(static_cast<int>(1 + rng() % 3));
  return op;
}

// Draws until the predicate accepts; the generators above accept often
// enough that the cap is never reached in practice.
template <class Pred>
OperatorSpec random_op_where(std::mt19937_64& rng, Pred pred, const MapOptions& mo = {},
                             const WeightOptions& wo = {}) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    OperatorSpec op = random_op(rng, mo, wo);
    if (pred(op)) return op;
  }
  throw std::runtime_error("random_op_where: predicate too selective");
}

/// Support invariant under phi, with phi_1..phi_m representable in 64 bits.
inline bool invariant_with_iterates(const OperatorSpec& op, Nat m) {
  if (!check_support_invariant(op.u, op.phi)) return false;
  try {
    iterate(op.phi, m);
  } catch (const OverflowError&) {
    return false;
  }
  return true;
}

/// Up to max_support entries in [1, max_index], values rational in [-5, 5].
inline SeqExpr random_sparse_vector(std::mt19937_64& rng, std::size_t max_support,
                                    Nat max_index, const std::vector<Nat>& avoid = {}) {
  std::map<Nat, Rational> values;
  const std::size_t count = 1 + rng() % max_support;
  std::uniform_int_distribution<Nat> index(1, max_index);
  for (std::size_t i = 0; i < count; ++i) {
    Nat n = index(rng);
    if (std::find(avoid.begin(), avoid.end(), n) != avoid.end()) continue;
    Rational q = random_rational(rng, 20, 4);
    if (abs(q) > 5) q = q / 4;
    values[n] = q;
  }
  return SeqExpr::finite(std::move(values));
}

/// Largest m whose image can be n for some n <= bound, for maps without a
/// constant tail: every non-constant tail satisfies t(m) >= m - 3 in the
/// generator above.
inline Nat preimage_bound(const SelfMap& phi, Nat bound) { return bound + phi.tail_start() + 3; }

}  // namespace wcop::testing

#endif  // WCOP_TESTS_TEST_SUPPORT_HPP
