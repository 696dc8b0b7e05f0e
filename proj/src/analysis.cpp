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

#include "wcop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace wcop {

namespace {

constexpr Nat kMaxMonotoneScan = 2'000'000;
constexpr Nat kMaxSeriesTerms = Nat{1} << 22;

std::optional<Rational> exact_abs_pow(const Rational& v, const Rational& p) {
  Rational w = rational_pow(abs(v), p.get_num().get_si());
  return exact_rational_root(w, p.get_den().get_ui());
}

// |v|^p for a single rational, exact when possible.
NormValue abs_pow(const Rational& v, const Rational& p) {
  if (auto e = exact_abs_pow(v, p)) return NormValue::exact(*e);
  return NormValue::from_interval(pow(Interval::from_rational(abs(v)), p));
}

NormValue abs_pow_at(const Weight& u, Nat m, const Rational& p) {
  if (auto v = try_weight_at(u, m)) return abs_pow(*v, p);
  return NormValue::from_interval(pow(abs(weight_enclosure_at(u, m)), p));
}

NormValue add(const NormValue& a, const NormValue& b) {
  if (a.is_divergent() || b.is_divergent()) return NormValue::divergent(a.lo + b.lo);
  if (a.is_exact() && b.is_exact()) return NormValue::exact(a.lo + b.lo);
  return NormValue::enclosure(a.lo + b.lo, a.hi + b.hi);
}

NormValue max_of(const NormValue& a, const NormValue& b) {
  if (a.is_divergent()) return a;
  if (b.is_divergent()) return b;
  if (a.lo >= b.hi) return a;
  if (b.lo >= a.hi) return b;
  return NormValue::enclosure(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

// v^e for v >= 0 applied to each endpoint.
NormValue raise(const NormValue& v, const Rational& e) {
  if (v.is_divergent()) return v;
  auto one = [&](const Rational& x) -> std::pair<Rational, Rational> {
    if (auto exact = exact_abs_pow(x, e)) return {*exact, *exact};
    Interval i = pow(Interval::from_rational(x), e);
    return {Rational(i.lo), Rational(i.hi)};
  };
  auto [lo_lo, lo_hi] = one(v.lo);
  if (v.is_exact()) {
    return lo_lo == lo_hi ? NormValue::exact(lo_lo) : NormValue::enclosure(lo_lo, lo_hi);
  }
  auto [hi_lo, hi_hi] = one(v.hi);
  return NormValue::enclosure(lo_lo, hi_hi);
}

std::set<Nat> exceptional_values(const SelfMap& phi) {
  std::set<Nat> values;
  for (const auto& [m, v] : phi.exceptions()) values.insert(v);
  return values;
}

// Values n whose fiber can differ from the generic (at most one point) fiber.
std::set<Nat> special_points(const SelfMap& phi) {
  std::set<Nat> points = exceptional_values(phi);
  if (const auto* c = std::get_if<ConstTail>(&phi.tail())) points.insert(c->k);
  return points;
}

Interval tail_enclosure(const std::vector<Interval>& coefficients,
                        const std::vector<PowerTerm>& tail, Nat m) {
  Interval sum = Interval::point(0.0);
  for (std::size_t i = 0; i < tail.size(); ++i) {
    sum = sum + coefficients[i] * nat_pow(m, -tail[i].exponent);
  }
  return sum;
}

// sum_{m >= start} |u(m)|^p.
NormValue series_from(const Weight& u, Nat start, const Rational& p, const AnalysisOptions& opt) {
  NormValue head = NormValue::exact(0);
  for (Nat m = start; m < u.tail_start(); ++m) head = add(head, abs_pow_at(u, m, p));
  if (u.has_zero_tail()) return head;
  const PowerTerm& lead = u.tail().front();
  const Rational s = lead.exponent * p;
  if (s <= 1) return NormValue::divergent(head.lo);

  std::vector<Interval> coefficients;
  for (const auto& t : u.tail()) coefficients.push_back(Interval::from_rational(t.coefficient));
  const Interval lead_p = pow(Interval::from_rational(abs(lead.coefficient)), p);
  const Interval inv_s1 = Interval::from_rational(1 / (s - 1));
  const double target = opt.enclosure_width.get_d();

  const Nat first = std::max(start, u.tail_start());
  Nat k = std::max({first, dominance_bound(u.tail()), Nat{64}});
  Interval partial = Interval::point(0.0);
  Nat next = first;
  for (;;) {
    for (; next < k; ++next) {
      partial = partial + pow(abs(tail_enclosure(coefficients, u.tail(), next)), p);
    }
    // For m >= k the lead term dominates: |u(m)| = |c0| m^(-a0) (1 +- delta).
    Interval delta = Interval::point(0.0);
    for (std::size_t i = 1; i < u.tail().size(); ++i) {
      delta = delta + Interval::from_rational(abs(u.tail()[i].coefficient / lead.coefficient)) *
                          nat_pow(k, lead.exponent - u.tail()[i].exponent);
    }
    const Interval below = Interval::point(1.0) - delta;
    if (below.lo > 0.0) {
      const double low_factor = pow(Interval::point(below.lo), p).lo;
      const double high_factor = pow(Interval::point(1.0) + delta, p).hi;
      const Interval lower =
          lead_p * Interval::point(low_factor) * nat_pow(k, 1 - s) * inv_s1;
      const Interval upper =
          lead_p * Interval::point(high_factor) * nat_pow(k - 1, 1 - s) * inv_s1;
      const Interval total = partial + Interval{lower.lo, upper.hi};
      NormValue out = add(head, NormValue::from_interval(total));
      const double width = out.hi.get_d() - out.lo.get_d();
      if (width <= target * std::min(1.0, out.hi.get_d()) || k >= kMaxSeriesTerms) return out;
    }
    k *= 2;
  }
}

// sup_{m >= from} |u(m)|. A limit that is approached but never reached is
// reported as a degenerate enclosure rather than as an exact value.
NormValue abs_sup_from(const Weight& u, Nat from) {
  NormValue best = NormValue::exact(0);
  for (Nat m = from; m < u.tail_start(); ++m) {
    best = max_of(best, NormValue::exact(abs(weight_at(u, m))));
  }
  if (u.has_zero_tail()) return best;
  const auto& tail = u.tail();
  std::vector<PowerTerm> derivative;
  for (const auto& t : tail) {
    if (t.exponent != 0) derivative.push_back({-t.exponent * t.coefficient, t.exponent + 1});
  }
  // Beyond `bound` both the tail and its derivative keep a fixed sign, so
  // |tail| is monotone there.
  const Nat first = std::max(from, u.tail_start());
  const Nat bound = std::max({first, dominance_bound(tail), dominance_bound(derivative)});
  if (bound - first > kMaxMonotoneScan) {
    throw OverflowError("tail monotonicity bound beyond " + std::to_string(kMaxMonotoneScan));
  }
  for (Nat m = first; m <= bound; ++m) {
    if (auto v = tail_value(tail, m)) {
      best = max_of(best, NormValue::exact(abs(*v)));
    } else {
      best = max_of(best, NormValue::from_interval(abs(weight_enclosure_at(u, m))));
    }
  }
  if (tail.front().exponent == 0) {
    const Rational limit = abs(tail.front().coefficient);
    best = max_of(best, NormValue::enclosure(limit, limit));
  }
  return best;
}

void require_support_invariant(const OperatorSpec& op) {
  if (!check_support_invariant(op.u, op.phi)) {
    throw HypothesisViolated(Hypothesis::kSupportNotInvariant);
  }
}

NatSet support_image(const OperatorSpec& op, Nat power) {
  const SelfMap phi = power == 1 ? op.phi : iterate(op.phi, power);
  return image(phi, support(op.u));
}

bool closed_range_unchecked(const OperatorSpec& op) {
  return op.phi.tail_is_const() || op.u.has_zero_tail() || op.u.tail().front().exponent == 0;
}

Rational exact_ratio(const SeqExpr& f, const Weight& u, Nat m) {
  return weight_at(f, m) / weight_at(u, m);
}

}  // namespace

void validate(const OperatorSpec& op) {
  if (op.p < 1) throw InvalidSymbol("exponent p must be >= 1");
}

NormValue NormValue::enclosure(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw std::invalid_argument("enclosure with lo > hi");
  return {Kind::kEnclosure, lo, hi};
}

NormValue NormValue::from_interval(const Interval& i) {
  return enclosure(Rational(i.lo), Rational(i.hi));
}

bool NormValue::contains(const Rational& v) const {
  if (is_divergent()) return false;
  return lo <= v && v <= hi;
}

std::string NormValue::to_string() const {
  switch (kind) {
    case Kind::kExact:
      return lo.get_str();
    case Kind::kEnclosure: {
      std::ostringstream os;
      os.precision(12);
      os << '[' << lo.get_d() << ", " << hi.get_d() << ']';
      return os.str();
    }
    case Kind::kDivergent:
      return "divergent";
  }
  return "";
}

NormValue fiber_weight_sum(const OperatorSpec& op, Nat n, const AnalysisOptions& opt) {
  validate(op);
  const NatSet f = fiber(op.phi, n);
  NormValue sum = NormValue::exact(0);
  if (f.is_finite_form()) {
    for (Nat m : f.elements()) sum = add(sum, abs_pow_at(op.u, m, op.p));
    return sum;
  }
  const Nat start = op.phi.tail_start();
  for (Nat m : elements_below(f, start)) sum = add(sum, abs_pow_at(op.u, m, op.p));
  return add(sum, series_from(op.u, start, op.p, opt));
}

Boundedness boundedness(const OperatorSpec& op, const AnalysisOptions& opt) {
  validate(op);
  NormValue sup = NormValue::exact(0);
  for (Nat n : special_points(op.phi)) sup = max_of(sup, fiber_weight_sum(op, n, opt));
  if (!op.phi.tail_is_const()) {
    // Generic fibers are single tail points m >= tail start.
    sup = max_of(sup, raise(abs_sup_from(op.u, op.phi.tail_start()), op.p));
  }
  Boundedness out;
  out.fiber_sum_sup = sup;
  out.bounded = !sup.is_divergent();
  if (out.bounded) out.norm = raise(sup, 1 / op.p);
  return out;
}

ExtNat kernel_dim(const OperatorSpec& op, Nat power) {
  if (power == 0) throw std::invalid_argument("power must be >= 1");
  if (power > 1) require_support_invariant(op);
  return cardinality_of_complement(support_image(op, power));
}

std::vector<Nat> kernel_basis(const OperatorSpec& op, Nat power, std::size_t limit) {
  if (power == 0) throw std::invalid_argument("power must be >= 1");
  if (power > 1) require_support_invariant(op);
  return enumerate_complement(support_image(op, power), limit);
}

ExtNat kernel_codim(const OperatorSpec& op) { return cardinality(support_image(op, 1)); }

KernelSplit kernel_split(const OperatorSpec& op, const SeqExpr& f) {
  KernelSplit out;
  out.h = seq_restrict(f, support_image(op, 1));
  out.g = seq_add(f, seq_negate(out.h));
  return out;
}

bool kernel_stabilizes(const OperatorSpec& op) {
  require_support_invariant(op);
  return set_equal(support_image(op, 2), support_image(op, 1));
}

bool kernel_finite_transfer_check(const OperatorSpec& op, Nat max_power) {
  if (!is_bounded_away_from_zero(op.u)) {
    throw HypothesisViolated(Hypothesis::kNotBoundedAwayFromZero);
  }
  const bool first = kernel_dim(op, 1).is_finite();
  for (Nat m = 2; m <= max_power; ++m) {
    if (kernel_dim(op, m).is_finite() != first) return false;
  }
  return true;
}

NatSet weighted_fiber(const OperatorSpec& op, Nat n) {
  return intersect(fiber(op.phi, n), support(op.u));
}

NatSet multi_fiber_set(const OperatorSpec& op) {
  std::vector<Nat> out;
  for (Nat n : special_points(op.phi)) {
    if (cardinality(weighted_fiber(op, n)) > ExtNat::finite(1)) out.push_back(n);
  }
  return NatSet::finite(std::move(out));
}

bool range_dim_is_infinite(const OperatorSpec& op) {
  return cardinality(support_image(op, 1)).is_infinite();
}

bool range_membership(const OperatorSpec& op, const SeqExpr& f) {
  // The characterization f = u * (g o phi) needs no support invariance; only
  // the boundedness of uC_phi is used.
  if (!boundedness(op).bounded) throw HypothesisViolated(Hypothesis::kUnbounded);
  if (!is_subset(support(f), support(op.u))) return false;
  for (Nat n : special_points(op.phi)) {
    const NatSet m = weighted_fiber(op, n);
    if (m.is_empty()) continue;
    if (m.is_finite_form()) {
      const Rational c = exact_ratio(f, op.u, m.elements().front());
      for (Nat x : m.elements()) {
        if (exact_ratio(f, op.u, x) != c) return false;
      }
      continue;
    }
    // Infinite fiber: f must be a constant multiple of u along all of it.
    const Rational c = exact_ratio(f, op.u, enumerate(m, 1).front());
    const Sequence scaled = seq_pointwise_mul(op.u, Sequence::make({}, 1, {{c, 0}}));
    const Sequence diff = seq_add(f, seq_negate(scaled));
    if (!diff.has_zero_tail()) return false;  // m is cofinite
    for (const auto& [x, v] : diff.exceptions()) {
      if (member(m, x)) return false;
    }
  }
  if (!op.phi.tail_is_const() && !f.has_zero_tail()) {
    // Generic fibers are singletons; g(phi(m)) = (f/u)(m) must be p-summable.
    const Rational decay = f.tail().front().exponent - op.u.tail().front().exponent;
    if (decay * op.p <= 1) return false;
  }
  return true;
}

ExtNat range_codim_formula(const OperatorSpec& op) {
  std::uint64_t total = 0;
  const NatSet a = multi_fiber_set(op);
  for (Nat n : a.elements()) {
    const ExtNat size = cardinality(weighted_fiber(op, n));
    if (size.is_infinite()) return ExtNat::infinite();
    total += size.value() - 1;
  }
  return ExtNat::finite(total);
}

ExtNat range_codim(const OperatorSpec& op) {
  if (!boundedness(op).bounded) throw HypothesisViolated(Hypothesis::kUnbounded);
  if (!boundedness({unit_weight(), op.phi, op.p}).bounded) {
    throw HypothesisViolated(Hypothesis::kCompositionUnbounded);
  }
  return range_codim_formula(op);
}

bool closed_range(const OperatorSpec& op) {
  if (!boundedness(op).bounded) throw HypothesisViolated(Hypothesis::kUnbounded);
  return closed_range_unchecked(op);
}

std::optional<std::int64_t> fredholm(const OperatorSpec& op) {
  if (!closed_range(op)) throw HypothesisViolated(Hypothesis::kRangeNotClosed);
  const ExtNat kernel = kernel_dim(op, 1);
  const ExtNat range = range_codim_formula(op);
  if (kernel.is_infinite() || range.is_infinite()) return std::nullopt;
  return static_cast<std::int64_t>(kernel.value()) - static_cast<std::int64_t>(range.value());
}

SeqExpr apply(const OperatorSpec& op, const SeqExpr& f) {
  return seq_pointwise_mul(op.u, seq_compose(f, op.phi));
}

SeqExpr apply_power(const OperatorSpec& op, const SeqExpr& f, Nat m) {
  SeqExpr out = f;
  for (Nat i = 0; i < m; ++i) out = apply(op, out);
  return out;
}

Rational PowerSpec::weight_at(Nat n) const {
  Rational product = 1;
  for (Nat j = 0; j < m; ++j) {
    product *= wcop::weight_at(op.u, n);
    if (product == 0) return product;
    n = map_at(op.phi, n);
  }
  return product;
}

PowerSpec power_spec(const OperatorSpec& op, Nat m) {
  if (m == 0) throw std::invalid_argument("power must be >= 1");
  PowerSpec out;
  out.op = op;
  out.m = m;
  out.phi_m = iterate(op.phi, m);
  const NatSet su = support(op.u);
  out.support = su;
  for (Nat j = 1; j < m; ++j) out.support = intersect(out.support, preimage(iterate(op.phi, j), su));
  return out;
}

Weight unit_weight() { return Weight::make({}, 1, {{Rational(1), Rational(0)}}); }

std::string_view hypothesis_check_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::kSupportNotInvariant:
      return "support_invariant";
    case Hypothesis::kUnbounded:
      return "bounded";
    case Hypothesis::kCompositionUnbounded:
      return "composition_bounded";
    case Hypothesis::kRangeNotClosed:
      return "range_closed";
    case Hypothesis::kNotBoundedAwayFromZero:
      return "bounded_away_from_zero";
  }
  return "unknown";
}

bool AnalysisReport::holds(Hypothesis h) const {
  for (const auto& c : hypothesis_flags) {
    if (c.which == h) return c.holds;
  }
  return false;
}

AnalysisReport analyze(const OperatorSpec& op, const AnalysisOptions& opt) {
  validate(op);
  AnalysisReport r;
  const Boundedness b = boundedness(op, opt);
  r.bounded = b.bounded;
  r.fiber_sum_sup = b.fiber_sum_sup;
  r.norm = b.norm;
  r.kernel_dim = kernel_dim(op, 1);
  r.kernel_codim = kernel_codim(op);
  r.multi_fiber_set = multi_fiber_set(op);
  r.range_codim = range_codim_formula(op);
  r.closed_range = r.bounded && closed_range_unchecked(op);
  if (r.closed_range && r.kernel_dim.is_finite() && r.range_codim.is_finite()) {
    r.fredholm_index = static_cast<std::int64_t>(r.kernel_dim.value()) -
                       static_cast<std::int64_t>(r.range_codim.value());
  }
  const bool composition_bounded = boundedness({unit_weight(), op.phi, op.p}, opt).bounded;
  r.hypothesis_flags = {
      {Hypothesis::kSupportNotInvariant, check_support_invariant(op.u, op.phi)},
      {Hypothesis::kUnbounded, r.bounded},
      {Hypothesis::kCompositionUnbounded, composition_bounded},
      {Hypothesis::kRangeNotClosed, r.closed_range},
      {Hypothesis::kNotBoundedAwayFromZero, is_bounded_away_from_zero(op.u)},
  };
  return r;
}

}  // namespace wcop
