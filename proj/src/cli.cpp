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

#include "wcop/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wcop/fixtures.hpp"
#include "wcop/oracle.hpp"
#include "wcop/report.hpp"
#include "wcop/spec_file.hpp"

namespace wcop::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string format = "text";
  std::string enclosure_width = "1/1000000";
  std::string spec_path;
  Nat power = 1;
  std::size_t basis = 0;
  std::string member;
  std::string vector;
  std::string windows = "16,32,64";
  std::string check = "all";
  bool with_oracle = false;
};

struct Loaded {
  SpecFile spec;
  Provenance provenance;
};

Loaded load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  return {parse_spec(text), make_provenance(path, text)};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<Nat>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

std::vector<Nat> parse_windows(const std::string& text) {
  std::vector<Nat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long w = std::stoull(item, &used);
      if (used != item.size() || w == 0) throw std::invalid_argument(item);
      out.push_back(w);
    } catch (const std::logic_error&) {
      throw ParseError(1, 1, "bad window list: " + text);
    }
  }
  return out;
}

OracleCheck parse_check(const std::string& s) {
  if (s == "kernel") return OracleCheck::kKernel;
  if (s == "range") return OracleCheck::kRange;
  return OracleCheck::kAll;
}

void print_flags(const AnalysisReport& r, std::ostream& out) {
  out << "hypotheses:\n";
  for (const auto& c : r.hypothesis_flags) {
    out << "  " << std::left << std::setw(24) << hypothesis_check_name(c.which)
        << (c.holds ? "holds" : "FAILS") << '\n';
  }
}

void print_report(const ReportDocument& doc, std::ostream& out) {
  const AnalysisReport& r = doc.report;
  out << "operator: " << (doc.label.empty() ? doc.provenance.path : doc.label)
      << " (p = " << to_string(doc.p) << ")\n";
  out << "bounded: " << yes_no(r.bounded) << '\n';
  out << "fiber sum sup: " << r.fiber_sum_sup.to_string() << '\n';
  out << "norm: " << (r.norm ? r.norm->to_string() : "none") << '\n';
  out << "kernel dim: " << r.kernel_dim << '\n';
  out << "kernel codim: " << r.kernel_codim << '\n';
  out << "multi-fiber set: " << r.multi_fiber_set << '\n';
  out << "range codim: " << r.range_codim << '\n';
  out << "closed range: " << yes_no(r.closed_range) << '\n';
  out << "fredholm index: "
      << (r.fredholm_index ? std::to_string(*r.fredholm_index) : "none") << '\n';
  print_flags(r, out);
}

void print_oracle(const WindowReport& w, std::ostream& out) {
  out << "window  rows  zero-cols  deficiency  rank  predicted-zero  predicted-def\n";
  for (const auto& c : w.windows) {
    out << std::right << std::setw(6) << c.window << std::setw(6) << c.rows << std::setw(11)
        << c.zero_columns << std::setw(12) << c.range_deficiency << std::setw(6) << c.rank
        << std::setw(16) << c.predicted_zero_columns << std::setw(15)
        << c.predicted_range_deficiency << (c.fiber_truncated ? "  (fiber truncated)" : "")
        << '\n';
  }
  out << "closed form: kernel dim " << w.kernel_prediction << ", range codim "
      << w.range_prediction << '\n';
  out << "stabilized: " << yes_no(w.stabilized) << '\n';
  out << "agrees: " << yes_no(w.agrees) << '\n';
  for (const auto& m : w.mismatches) out << "  mismatch: " << m << '\n';
}

ReportDocument make_document(const Loaded& in, const AnalysisOptions& opt) {
  ReportDocument doc;
  doc.label = in.spec.label;
  doc.p = in.spec.op.p;
  doc.report = analyze(in.spec.op, opt);
  doc.provenance = in.provenance;
  return doc;
}

json provenance_json(const Provenance& p) {
  return {{"path", p.path}, {"sha256", p.sha256}, {"tool_version", p.tool_version}};
}

int cmd_analyze(const Options& o, const AnalysisOptions& opt, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  ReportDocument doc = make_document(in, opt);
  int code = kOk;
  std::optional<WindowReport> w;
  if (o.with_oracle) {
    w = stabilized_check(in.spec.op, parse_check(o.check), parse_windows(o.windows));
    doc.oracle = summarize(*w);
    if (!w->agrees) code = kOracleMismatch;
  }
  if (o.format == "json") {
    out << to_json(doc).dump(2) << '\n';
  } else {
    print_report(doc, out);
    if (w) print_oracle(*w, out);
  }
  return code;
}

int cmd_kernel(const Options& o, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  const OperatorSpec& op = in.spec.op;
  const ExtNat dim = kernel_dim(op, o.power);
  const ExtNat codim = kernel_codim(op);
  std::vector<Nat> basis;
  if (o.basis > 0) basis = kernel_basis(op, o.power, o.basis);
  if (o.format == "json") {
    json j = {{"power", o.power}, {"kernel_dim", to_json(dim)}, {"kernel_codim", to_json(codim)}};
    if (o.basis > 0) j["basis"] = basis;
    j["provenance"] = provenance_json(in.provenance);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "kernel dim (power " << o.power << "): " << dim << '\n';
  out << "kernel codim: " << codim << '\n';
  if (o.basis > 0) out << "basis indices: " << join(basis) << '\n';
  return kOk;
}

int cmd_range(const Options& o, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  const OperatorSpec& op = in.spec.op;
  const NatSet a = multi_fiber_set(op);
  const ExtNat codim = range_codim(op);
  std::optional<bool> member;
  if (!o.member.empty()) member = range_membership(op, parse_vector(o.member));
  if (o.format == "json") {
    json j = {{"multi_fiber_set", a.elements()},
              {"range_codim", to_json(codim)},
              {"range_dim_infinite", range_dim_is_infinite(op)}};
    if (member) j["member"] = *member;
    j["provenance"] = provenance_json(in.provenance);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "multi-fiber set: " << a << '\n';
  out << "range codim: " << codim << '\n';
  out << "range dim: " << (range_dim_is_infinite(op) ? "infinite" : "finite") << '\n';
  if (member) out << "member: " << yes_no(*member) << '\n';
  return kOk;
}

int cmd_fredholm(const Options& o, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  const std::optional<std::int64_t> index = fredholm(in.spec.op);
  if (o.format == "json") {
    json j = {{"fredholm_index", index ? json(*index) : json(nullptr)},
              {"provenance", provenance_json(in.provenance)}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  if (index) {
    out << "fredholm index: " << *index << '\n';
  } else {
    out << "fredholm index: none (kernel or cokernel is infinite-dimensional)\n";
  }
  return kOk;
}

int cmd_apply(const Options& o, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  const SeqExpr result = apply(in.spec.op, parse_vector(o.vector));
  if (o.format == "json") {
    json entries = json::object();
    for (const auto& [n, v] : result.exceptions()) entries[std::to_string(n)] = to_string(v);
    json j = {{"result", entries}, {"provenance", provenance_json(in.provenance)}};
    if (!result.has_zero_tail()) j["tail"] = format_vector(result);
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << format_vector(result) << '\n';
  return kOk;
}

int cmd_oracle(const Options& o, const AnalysisOptions& opt, std::ostream& out) {
  const Loaded in = load(o.spec_path);
  const WindowReport w =
      stabilized_check(in.spec.op, parse_check(o.check), parse_windows(o.windows));
  if (o.format == "json") {
    ReportDocument doc = make_document(in, opt);
    doc.oracle = summarize(w);
    out << to_json(doc).dump(2) << '\n';
  } else {
    print_oracle(w, out);
  }
  return w.agrees ? kOk : kOracleMismatch;
}

int cmd_suite(const Options& o, std::ostream& out) {
  const std::vector<SuiteRow> rows = run_suite();
  bool failed = false;
  for (const auto& r : rows) failed = failed || r.status == "FAIL";
  if (o.format == "json") {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"fixture", r.fixture},
                   {"quantity", r.quantity},
                   {"expected", r.expected},
                   {"actual", r.actual},
                   {"status", r.status},
                   {"note", r.note}});
    }
    out << j.dump(2) << '\n';
  } else {
    out << std::left << std::setw(22) << "fixture" << std::setw(30) << "quantity"
        << std::setw(14) << "expected" << std::setw(34) << "actual" << "status\n";
    for (const auto& r : rows) {
      out << std::left << std::setw(22) << r.fixture << std::setw(30) << r.quantity
          << std::setw(14) << r.expected << std::setw(34) << r.actual << r.status;
      if (!r.note.empty()) out << "  (" << r.note << ')';
      out << '\n';
    }
  }
  return failed ? kOracleMismatch : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"wco: weighted composition operators on sequence spaces"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--enclosure-width", o.enclosure_width,
                 "Target width of series enclosures (rational)")
      ->capture_default_str();

  auto spec_arg = [&o](CLI::App* sub) {
    sub->add_option("spec", o.spec_path, ".wco operator file")->required();
    sub->fallthrough();
  };
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Full report");
  spec_arg(analyze_cmd);
  analyze_cmd->add_flag("--oracle", o.with_oracle, "Attach a window oracle check");
  analyze_cmd->add_option("--windows", o.windows, "Oracle windows");
  analyze_cmd->add_option("--check", o.check, "kernel|range|all")
      ->check(CLI::IsMember({"kernel", "range", "all"}));

  CLI::App* kernel_cmd = app.add_subcommand("kernel", "Kernel dimension and basis");
  spec_arg(kernel_cmd);
  kernel_cmd->add_option("--power", o.power, "Power m of the operator")
      ->check(CLI::PositiveNumber);
  kernel_cmd->add_option("--basis", o.basis, "List the first L basis indices");

  CLI::App* range_cmd = app.add_subcommand("range", "Range co-dimension and membership");
  spec_arg(range_cmd);
  range_cmd->add_option("--member", o.member, "Coordinates i:q,... to test");

  CLI::App* fredholm_cmd = app.add_subcommand("fredholm", "Fredholm index");
  spec_arg(fredholm_cmd);

  CLI::App* apply_cmd = app.add_subcommand("apply", "Apply to a finitely supported vector");
  spec_arg(apply_cmd);
  apply_cmd->add_option("--vector", o.vector, "Coordinates i:q,...")->required();

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Truncation-matrix cross-check");
  spec_arg(oracle_cmd);
  oracle_cmd->add_option("--windows", o.windows, "Increasing window sizes")->capture_default_str();
  oracle_cmd->add_option("--check", o.check, "kernel|range|all")
      ->check(CLI::IsMember({"kernel", "range", "all"}))
      ->capture_default_str();

  CLI::App* suite_cmd = app.add_subcommand("paper-suite", "Regression table over the built-in fixtures");
  suite_cmd->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    AnalysisOptions opt;
    opt.enclosure_width = parse_rational(o.enclosure_width);
    if (opt.enclosure_width <= 0) throw ParseError(1, 1, "--enclosure-width must be positive");
    if (*analyze_cmd) return cmd_analyze(o, opt, out);
    if (*kernel_cmd) return cmd_kernel(o, out);
    if (*range_cmd) return cmd_range(o, out);
    if (*fredholm_cmd) return cmd_fredholm(o, out);
    if (*apply_cmd) return cmd_apply(o, out);
    if (*oracle_cmd) return cmd_oracle(o, opt, out);
    if (*suite_cmd) return cmd_suite(o, out);
  } catch (const ParseError& e) {
    err << (o.spec_path.empty() ? "" : o.spec_path + ":") << e.what() << '\n';
    return kParseError;
  } catch (const HypothesisViolated& e) {
    err << e.what() << '\n';
    if (!o.spec_path.empty()) {
      try {
        const Loaded in = load(o.spec_path);
        print_flags(analyze(in.spec.op), err);
      } catch (const Error&) {
      }
    }
    return kHypothesisViolated;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  return kOk;
}

}  // namespace wcop::cli
