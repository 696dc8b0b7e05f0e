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

// Acceptance run: one PASS/FAIL line per criterion. Exit 0 when all pass,
// 3 when the oracle criterion fails, 1 otherwise.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "wcop/analysis.hpp"
#include "wcop/cli.hpp"
#include "wcop/fixtures.hpp"
#include "wcop/oracle.hpp"

namespace wcop {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

OperatorSpec op_of(std::string_view name) { return load_fixture(name).op; }

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome fredholm_indices() {
  const auto start = Clock::now();
  const std::optional<std::int64_t> a = fredholm(op_of("index_three"));
  const std::optional<std::int64_t> b = fredholm(op_of("index_zero"));
  const std::optional<std::int64_t> c = fredholm(op_of("index_minus_one"));
  const double ms = millis_since(start);
  std::ostringstream os;
  auto show = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "none"; };
  os << "indices " << show(a) << ", " << show(b) << ", " << show(c) << " in " << ms << " ms";
  const bool ok = a == 3 && b == 0 && c == -1 && ms < 1000;
  return {ok, os.str()};
}

Outcome range_codim_one() {
  const OperatorSpec op = op_of("range_codim_one");
  const ExtNat codim = range_codim(op);
  const WindowReport r = stabilized_check(op, OracleCheck::kRange, {16, 32, 64});
  std::ostringstream os;
  os << "range codim " << codim << ", deficiencies";
  for (const auto& w : r.windows) os << ' ' << w.range_deficiency;
  bool ok = codim == ExtNat::finite(1) && r.stabilized && r.agrees;
  for (const auto& w : r.windows) ok = ok && w.range_deficiency == 1;
  return {ok, os.str()};
}

Outcome kernel_codims() {
  const ExtNat one = kernel_codim(op_of("constant_map"));
  const ExtNat inf = kernel_codim(op_of("square_map_cokernel"));
  std::ostringstream os;
  os << "constant map " << one << ", square map variant " << inf;
  return {one == ExtNat::finite(1) && inf == ExtNat::infinite(), os.str()};
}

Outcome identity_discrepancy() {
  const OperatorSpec op = op_of("identity_kernel");
  const ExtNat formula = kernel_dim(op);
  const WindowReport r = stabilized_check(op, OracleCheck::kKernel, {16, 32, 64});
  const std::uint64_t oracle = r.windows.back().zero_columns;
  bool reported = false;
  for (const auto& row : cli::run_suite()) {
    if (row.fixture == "identity_kernel" && row.status == "KNOWN-DISCREPANCY" &&
        row.expected == "3" && row.actual == "2") {
      reported = true;
    }
  }
  std::ostringstream os;
  os << "formula " << formula << ", oracle " << oracle << (r.stabilized ? " (settled)" : "")
     << ", published 3 " << (reported ? "reported" : "NOT reported") << " as KNOWN-DISCREPANCY";
  return {formula == ExtNat::finite(2) && oracle == 2 && r.stabilized && reported, os.str()};
}

Rational abs_pow(const Rational& q, const Rational& p) {
  return rational_pow(Rational(abs(q)), p.get_num().get_si());
}

Outcome norm_identity() {
  const auto start = Clock::now();
  std::mt19937_64 rng(0xac5);
  int failures = 0;
  int cases = 0;
  while (cases < 200) {
    const OperatorSpec op =
        testing::random_op_where(rng, [](const OperatorSpec& o) { return boundedness(o).bounded; });
    // An index hit by an infinite fiber has an irrational fiber sum in general;
    // keep f off it so both sides are finite rational sums.
    std::vector<Nat> avoid;
    if (const auto* c = std::get_if<ConstTail>(&op.phi.tail())) avoid.push_back(c->k);
    const SeqExpr f = testing::random_sparse_vector(rng, 12, 24, avoid);
    if (f.exceptions().empty()) continue;
    const Nat window = f.exceptions().rbegin()->first;
    const TruncationMatrix m = build_matrix(op, window);
    const std::vector<Rational> mf = matrix_apply(m, f);
    Rational lhs = 0;
    for (Nat r = 1; r <= m.rows(); ++r) lhs += abs_pow(mf[r], op.p);
    Rational rhs = 0;
    bool exact = true;
    for (const auto& [n, v] : f.exceptions()) {
      const NormValue s = fiber_weight_sum(op, n);
      exact = exact && s.is_exact();
      rhs += s.lo * abs_pow(v, op.p);
    }
    if (!exact || lhs != rhs) ++failures;
    ++cases;
  }
  const double ms = millis_since(start);
  std::ostringstream os;
  os << cases << " fixtures, " << failures << " failures, " << ms / 1000 << " s";
  return {failures == 0 && ms < 30000, os.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(0xac6);
  int cases = 0;
  int mismatches = 0;
  std::string first;
  while (cases < 100) {
    const OperatorSpec op = testing::random_op(rng);
    if (!kernel_dim(op).is_finite() || !range_codim_formula(op).is_finite()) continue;
    const WindowReport r = stabilized_check(op, OracleCheck::kAll, {16, 32, 64});
    const bool ok = r.stabilized && r.agrees &&
                    ExtNat::finite(r.windows.back().zero_columns) == kernel_dim(op) &&
                    ExtNat::finite(r.windows.back().range_deficiency) == range_codim_formula(op);
    if (!ok) {
      ++mismatches;
      if (first.empty()) first = print_spec({"", op});
    }
    ++cases;
  }
  std::ostringstream os;
  os << cases << " fixtures with finite predictions, " << mismatches << " mismatches";
  if (!first.empty()) os << "; first:\n" << first;
  return {mismatches == 0, os.str()};
}

// Sum of 1/n^2 for n <= N, bracketed with integer arithmetic at scale 2^k.
std::pair<Rational, Rational> partial_sum_bracket(Nat terms, unsigned long bits) {
  BigInt scale = 1;
  scale <<= bits;
  BigInt lo = 0;
  BigInt hi = 0;
  BigInt q;
  for (Nat n = 1; n <= terms; ++n) {
    BigInt sq = BigInt(n) * BigInt(n);
    mpz_fdiv_q(q.get_mpz_t(), scale.get_mpz_t(), sq.get_mpz_t());
    lo += q;
    mpz_cdiv_q(q.get_mpz_t(), scale.get_mpz_t(), sq.get_mpz_t());
    hi += q;
  }
  return {Rational(lo, scale), Rational(hi, scale)};
}

Outcome boundedness_enclosure() {
  const Boundedness divergent = boundedness(op_of("divergent_constant"));
  const Boundedness convergent = boundedness(op_of("convergent_constant"));
  if (divergent.bounded) return fail("divergent fixture reported bounded");
  if (!convergent.bounded) return fail("convergent fixture reported unbounded");
  const NormValue& s = convergent.fiber_sum_sup;
  const Rational width = s.hi - s.lo;
  // Independent bracket: 10^6 exact-rounded terms plus the integral-test tail
  // sum_{n > N} 1/n^2 in [1/(N+1), 1/N].
  constexpr Nat kTerms = 1000000;
  auto [lo, hi] = partial_sum_bracket(kTerms, 96);
  lo += Rational(1, kTerms + 1);
  hi += Rational(1, kTerms);
  lo.canonicalize();
  hi.canonicalize();
  const bool contains = s.lo <= lo && hi <= s.hi;
  std::ostringstream os;
  os.precision(12);
  os << "divergent: unbounded; convergent: [" << s.lo.get_d() << ", " << s.hi.get_d()
     << "] width " << width.get_d() << ", independent [" << lo.get_d() << ", " << hi.get_d()
     << "] " << (contains ? "inside" : "NOT inside");
  return {width <= Rational(1, 1000000) && contains, os.str()};
}

Outcome set_algebra() {
  std::mt19937_64 rng(0xac8);
  int failures = 0;
  for (int pair = 0; pair < 500; ++pair) {
    const NatSet a = testing::random_set(rng);
    const NatSet b = testing::random_set(rng);
    const testing::Bits ba = testing::to_bits(a);
    const testing::Bits bb = testing::to_bits(b);
    testing::Bits window;
    for (Nat n = 1; n <= testing::kWindow; ++n) window[n] = true;
    const NatSet i = intersect(a, b);
    const NatSet u = set_union(a, b);
    const NatSet d = difference(a, b);
    const NatSet c = complement(a);
    bool ok = testing::to_bits(i) == (ba & bb) && testing::to_bits(u) == (ba | bb) &&
              testing::to_bits(d) == (ba & ~bb & window) &&
              testing::to_bits(c) == (~ba & window);
    // Canonical forms: equal sets are structurally equal, whichever way built.
    ok = ok && set_equal(u, set_union(b, a)) && set_equal(i, intersect(b, a)) &&
         set_equal(complement(c), a) && set_equal(set_union(d, i), a);
    ok = ok && (set_equal(a, b) == (ba == bb)) && (a == b) == set_equal(a, b);
    if (!ok) ++failures;
  }
  return {failures == 0, "500 pairs on [1..512], " + std::to_string(failures) + " failures"};
}

Outcome monotone_chain() {
  std::mt19937_64 rng(0xac9);
  int failures = 0;
  int vectors = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const OperatorSpec op = testing::random_op_where(
        rng, [](const OperatorSpec& o) { return testing::invariant_with_iterates(o, 4); });
    ExtNat previous = ExtNat::finite(0);
    for (Nat m = 1; m <= 4; ++m) {
      const ExtNat d = kernel_dim(op, m);
      if (d < previous) ++failures;
      previous = d;
      for (Nat n : kernel_basis(op, m, 16)) {
        ++vectors;
        if (!(apply_power(op, SeqExpr::unit(n), m) == SeqExpr::zero())) ++failures;
      }
    }
  }
  return {failures == 0, "50 invariant fixtures, " + std::to_string(vectors) +
                             " basis vectors, " + std::to_string(failures) + " failures"};
}

}  // namespace
}  // namespace wcop

int main() {
  using wcop::Outcome;
  struct Criterion {
    const char* id;
    const char* title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "Fredholm indices", wcop::fredholm_indices},
      {"AC2", "range co-dimension", wcop::range_codim_one},
      {"AC3", "kernel co-dimension", wcop::kernel_codims},
      {"AC4", "known discrepancy pinned", wcop::identity_discrepancy},
      {"AC5", "norm identity", wcop::norm_identity},
      {"AC6", "oracle equivalence", wcop::oracle_equivalence},
      {"AC7", "boundedness and enclosure", wcop::boundedness_enclosure},
      {"AC8", "set algebra", wcop::set_algebra},
      {"AC9", "monotone kernel chain", wcop::monotone_chain},
  };
  int code = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << "  " << c.title << ": " << o.detail
              << std::endl;
    if (!o.pass) code = std::string(c.id) == "AC6" ? 3 : (code == 3 ? 3 : 1);
  }
  return code;
}
