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

// Published quantities for the built-in fixtures, recomputed. Two published
// values disagree with their own data; those rows assert the consistent value
// and carry the published one as KNOWN-DISCREPANCY.

#include <sstream>

#include "wcop/cli.hpp"
#include "wcop/fixtures.hpp"
#include "wcop/oracle.hpp"

namespace wcop::cli {

namespace {

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

class Table {
 public:
  void check(std::string fixture, std::string quantity, std::string expected, std::string actual,
             std::string note = "") {
    const std::string status = expected == actual ? "PASS" : "FAIL";
    rows_.push_back({std::move(fixture), std::move(quantity), std::move(expected),
                     std::move(actual), status, std::move(note)});
  }

  /// The consistent value must hold; the published one is reported beside it.
  void discrepancy(std::string fixture, std::string quantity, std::string published,
                   std::string consistent, std::string actual, std::string note) {
    const std::string status = actual == consistent ? "KNOWN-DISCREPANCY" : "FAIL";
    rows_.push_back({std::move(fixture), std::move(quantity), std::move(published),
                     std::move(actual), status, std::move(note)});
  }

  std::vector<SuiteRow> take() { return std::move(rows_); }

 private:
  std::vector<SuiteRow> rows_;
};

std::string index_string(const std::optional<std::int64_t>& i) {
  return i ? std::to_string(*i) : "none";
}

std::string settled(const WindowReport& r, std::uint64_t WindowCounts::*field) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.windows.size(); ++i) {
    os << (i ? "/" : "") << r.windows[i].*field;
  }
  os << (r.stabilized ? " settled" : " unsettled");
  return os.str();
}

}  // namespace

std::vector<SuiteRow> run_suite() {
  Table t;
  const std::vector<Nat> windows = {16, 32, 64};
  auto op = [](std::string_view name) { return load_fixture(name).op; };

  t.check("index_three", "fredholm index", "3", index_string(fredholm(op("index_three"))));
  t.check("index_zero", "fredholm index", "0", index_string(fredholm(op("index_zero"))));
  t.check("index_minus_one", "fredholm index", "-1",
          index_string(fredholm(op("index_minus_one"))));
  t.check("index_three", "kernel dim", "4", str(kernel_dim(op("index_three"))));
  t.check("index_three", "range codim", "1", str(range_codim(op("index_three"))));
  t.check("index_zero", "range codim", "2", str(range_codim(op("index_zero"))));
  t.check("index_minus_one", "range codim", "2", str(range_codim(op("index_minus_one"))));
  {
    const WindowReport r = stabilized_check(op("index_three"), OracleCheck::kKernel, windows);
    t.check("index_three", "oracle zero columns", "4/4/4 settled",
            settled(r, &WindowCounts::zero_columns));
  }
  t.check("range_codim_one", "multi-fiber set", "{1}",
          str(multi_fiber_set(op("range_codim_one"))));
  t.check("range_codim_one", "range codim", "1", str(range_codim(op("range_codim_one"))));
  {
    const WindowReport r = stabilized_check(op("range_codim_one"), OracleCheck::kRange, windows);
    t.check("range_codim_one", "oracle deficiency", "1/1/1 settled",
            settled(r, &WindowCounts::range_deficiency));
  }
  t.check("constant_map", "kernel codim", "1", str(kernel_codim(op("constant_map"))));
  t.check("square_map_cokernel", "kernel codim", "infinite",
          str(kernel_codim(op("square_map_cokernel"))));
  t.check("square_map_kernel", "kernel dim", "infinite",
          str(kernel_dim(op("square_map_kernel"))));
  {
    const OperatorSpec id = op("identity_kernel");
    const WindowReport r = stabilized_check(id, OracleCheck::kKernel, windows);
    const std::string formula = str(kernel_dim(id));
    const std::string oracle = r.stabilized ? std::to_string(r.windows.back().zero_columns) : "?";
    t.check("identity_kernel", "kernel dim (formula, oracle)", "2, 2", formula + ", " + oracle);
    t.discrepancy("identity_kernel", "kernel dim (published)", "3", "2", formula,
                  "phi is the identity, so phi(S(u)) = S(u) = {n >= 3}");
  }
  {
    const Boundedness b = boundedness(op("index_three"));
    t.check("index_three", "fiber sum sup", "1201/400", b.fiber_sum_sup.to_string());
    // Published form: the norm equals the sup itself. The norm identity gives
    // its p-th root, so the two differ whenever the sup is not 0 or 1.
    const std::string norm = b.norm ? b.norm->to_string() : "none";
    const bool root =
        b.norm && b.norm->lo * b.norm->lo <= Rational(1201, 400) &&
        Rational(1201, 400) <= b.norm->hi * b.norm->hi;
    t.discrepancy("index_three", "norm (published: sup)", "1201/400",
                  root ? norm : "sqrt(1201/400)", norm, "norm is the p-th root of the sup");
  }
  {
    const Boundedness d = boundedness(op("divergent_constant"));
    t.check("divergent_constant", "bounded", "no", d.bounded ? "yes" : "no");
  }
  std::size_t agree = 0;
  for (const Fixture& f : fixtures()) {
    if (stabilized_check(parse_spec(f.text).op, OracleCheck::kAll, windows).agrees) ++agree;
  }
  t.check("all fixtures", "oracle agreement", std::to_string(fixtures().size()),
          std::to_string(agree));
  return t.take();
}

}  // namespace wcop::cli
