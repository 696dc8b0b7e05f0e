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

#include "wcop/spec_file.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace wcop {

namespace {

enum class Tok { kNumber, kIdent, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  int column = 0;
};

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const int col = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      break;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Tok::kNumber, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() &&
             (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::kIdent, std::string(line.substr(i, j - i)), col});
      i = j;
    } else if (c == '.' && i + 1 < line.size() && line[i + 1] == '.') {
      out.push_back({Tok::kPunct, "..", col});
      i += 2;
    } else if (std::string_view("={}:+-*/^(),").find(c) != std::string_view::npos) {
      out.push_back({Tok::kPunct, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(line_no, col, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, "", static_cast<int>(line.size()) + 1});
  return out;
}

// Cursor over the tokens of one line.
class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line) : tokens_(std::move(tokens)), line_(line) {}

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, peek().column, message);
  }
  [[noreturn]] void expected(const std::string& what) const {
    const Token& t = peek();
    fail("expected " + what + ", found " + (t.kind == Tok::kEnd ? "end of line" : "'" + t.text + "'"));
  }

  bool accept_punct(std::string_view p) {
    if (peek().kind == Tok::kPunct && peek().text == p) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) expected("'" + std::string(p) + "'");
  }
  bool accept_word(std::string_view w) {
    if (peek().kind == Tok::kIdent && peek().text == w) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) expected("'" + std::string(w) + "'");
  }
  void expect_end() {
    if (!at_end()) expected("end of line");
  }

  Nat natural(const std::string& what) {
    if (peek().kind != Tok::kNumber) expected(what);
    const Token& t = peek();
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(t.text, &used);
      ++pos_;
      return v;
    } catch (const std::out_of_range&) {
      fail(what + " out of range");
    }
  }
  Nat positive(const std::string& what) {
    const int col = peek().column;
    Nat v = natural(what);
    if (v == 0) throw ParseError(line_, col, what + " must be positive");
    return v;
  }

  /// [-] a [/ b]; a following "/n" is left for the caller.
  Rational rational(const std::string& what, bool allow_sign = true) {
    bool negative = false;
    if (allow_sign && accept_punct("-")) negative = true;
    if (peek().kind != Tok::kNumber) expected(what);
    BigInt num(peek().text);
    ++pos_;
    BigInt den = 1;
    if (peek().kind == Tok::kPunct && peek().text == "/" && peek(1).kind == Tok::kNumber) {
      ++pos_;
      den = BigInt(peek().text);
      if (den == 0) fail("zero denominator");
      ++pos_;
    }
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

struct Located {
  int line = 0;
  int column = 0;
};

// Parses the body of a `tail from N :` weight line.
std::vector<PowerTerm> parse_terms(LineParser& lp) {
  std::vector<PowerTerm> terms;
  bool negative = lp.accept_punct("-");
  for (;;) {
    PowerTerm t;
    if (lp.peek().kind == Tok::kIdent && lp.peek().text == "n") {
      lp.fail("write powers of n as c/n^a");
    }
    t.coefficient = lp.rational("coefficient", false);
    if (negative) t.coefficient = -t.coefficient;
    t.exponent = 0;
    if (lp.accept_punct("/")) {
      lp.expect_word("n");
      t.exponent = 1;
      if (lp.accept_punct("^")) {
        const bool paren = lp.accept_punct("(");
        t.exponent = lp.rational("exponent", false);
        if (paren) lp.expect_punct(")");
      }
    }
    terms.push_back(t);
    if (lp.accept_punct("+")) {
      negative = false;
    } else if (lp.accept_punct("-")) {
      negative = true;
    } else {
      break;
    }
  }
  lp.expect_end();
  return terms;
}

MapTail parse_map_tail(LineParser& lp, Nat start) {
  const int col = lp.peek().column;
  if (lp.accept_word("identity")) {
    lp.expect_end();
    return IdentityTail{};
  }
  if (lp.accept_word("const")) {
    Nat k = lp.positive("constant value");
    lp.expect_end();
    return ConstTail{k};
  }
  if (lp.peek().kind == Tok::kIdent && lp.peek().text == "prime") {
    lp.fail("prime enumeration is not a supported tail; use a power tail such as n^2");
  }
  Nat a = 1;
  if (lp.peek().kind == Tok::kNumber) {
    a = lp.positive("slope");
    lp.expect_punct("*");
  }
  lp.expect_word("n");
  if (lp.accept_punct("^")) {
    if (a != 1) lp.fail("a power tail takes no coefficient");
    const int ecol = lp.peek().column;
    Nat e = lp.natural("exponent");
    if (e < 2) throw ParseError(lp.line(), ecol, "power tail exponent must be >= 2");
    lp.expect_end();
    return PowerTail{e};
  }
  std::int64_t b = 0;
  const bool plus = lp.accept_punct("+");
  const bool minus = !plus && lp.accept_punct("-");
  if (plus || minus) {
    Nat mag = lp.natural("offset");
    if (mag > static_cast<Nat>(std::numeric_limits<std::int64_t>::max())) lp.fail("offset out of range");
    b = minus ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
  }
  lp.expect_end();
  if (static_cast<__int128>(a) * start + b < 1) {
    throw ParseError(lp.line(), col, "affine tail leaves the naturals at n = " + std::to_string(start));
  }
  return AffineTail{a, b};
}

template <class V>
void add_exception(std::map<Nat, std::pair<V, Located>>& table, Nat lo, Nat hi, const V& v,
                   Located where) {
  if (hi < lo) throw ParseError(where.line, where.column, "empty range");
  if (hi - lo > 1'000'000) throw ParseError(where.line, where.column, "range too long");
  for (Nat n = lo; n <= hi; ++n) {
    if (!table.emplace(n, std::make_pair(v, where)).second) {
      throw ParseError(where.line, where.column, "duplicate exception for " + std::to_string(n));
    }
  }
}

// `except a = v` or `except a..b = v`; returns the key range.
std::pair<Nat, Nat> parse_except_keys(LineParser& lp) {
  Nat lo = lp.positive("index");
  Nat hi = lo;
  if (lp.accept_punct("..")) hi = lp.positive("index");
  lp.expect_punct("=");
  return {lo, hi};
}

}  // namespace

SpecFile parse_spec(std::string_view text) {
  SpecFile out;
  std::optional<Rational> p;
  enum class Block { kNone, kWeight, kMap } block = Block::kNone;
  bool seen_weight = false;
  bool seen_map = false;

  std::map<Nat, std::pair<Rational, Located>> weight_table;
  std::optional<Nat> weight_start;
  std::vector<PowerTerm> weight_terms;
  bool weight_tail_seen = false;
  Located weight_tail_at;

  std::map<Nat, std::pair<Nat, Located>> map_table;
  std::optional<Nat> map_start;
  MapTail map_tail;
  Located map_tail_at;
  Located block_at;

  int line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    LineParser lp(tokenize(line, line_no), line_no);
    if (lp.at_end()) continue;
    const Located here{line_no, lp.peek().column};

    if (block == Block::kNone) {
      if (lp.accept_word("label")) {
        lp.expect_punct("=");
        std::string rest(line.substr(static_cast<std::size_t>(lp.peek().column - 1)));
        if (auto hash = rest.find('#'); hash != std::string::npos) rest.erase(hash);
        while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.pop_back();
        out.label = rest;
      } else if (lp.accept_word("p")) {
        if (p) lp.fail("duplicate p");
        lp.expect_punct("=");
        const int col = lp.peek().column;
        p = lp.rational("rational exponent p");
        lp.expect_end();
        if (*p < 1) throw ParseError(line_no, col, "p must be >= 1");
      } else if (lp.accept_word("weight")) {
        if (seen_weight) lp.fail("duplicate weight block");
        lp.expect_punct("{");
        lp.expect_end();
        block = Block::kWeight;
        seen_weight = true;
        block_at = here;
      } else if (lp.accept_word("map")) {
        if (seen_map) lp.fail("duplicate map block");
        lp.expect_punct("{");
        lp.expect_end();
        block = Block::kMap;
        seen_map = true;
        block_at = here;
      } else {
        lp.expected("'p', 'label', 'weight' or 'map'");
      }
      continue;
    }

    if (lp.accept_punct("}")) {
      lp.expect_end();
      if (block == Block::kWeight && !weight_tail_seen) {
        throw ParseError(line_no, here.column, "weight block has no tail line");
      }
      if (block == Block::kMap && !map_start) {
        throw ParseError(line_no, here.column, "map block has no tail line");
      }
      block = Block::kNone;
      continue;
    }
    if (lp.accept_word("except")) {
      auto [lo, hi] = parse_except_keys(lp);
      if (block == Block::kWeight) {
        Rational v = lp.rational("rational value");
        lp.expect_end();
        add_exception(weight_table, lo, hi, v, here);
      } else {
        Nat v = lp.positive("map value");
        lp.expect_end();
        add_exception(map_table, lo, hi, v, here);
      }
      continue;
    }
    if (lp.accept_word("tail")) {
      if ((block == Block::kWeight && weight_tail_seen) || (block == Block::kMap && map_start)) {
        lp.fail("duplicate tail line");
      }
      if (block == Block::kWeight && lp.accept_word("zero")) {
        lp.expect_end();
        weight_tail_seen = true;
        weight_tail_at = here;
        continue;
      }
      lp.expect_word("from");
      Nat start = lp.positive("tail start");
      lp.expect_punct(":");
      if (block == Block::kWeight) {
        weight_terms = parse_terms(lp);
        weight_start = start;
        weight_tail_seen = true;
        weight_tail_at = here;
      } else {
        map_tail = parse_map_tail(lp, start);
        map_start = start;
        map_tail_at = here;
      }
      continue;
    }
    lp.expected("'except', 'tail' or '}'");
  }
  if (block != Block::kNone) throw ParseError(block_at.line, block_at.column, "unclosed block");
  if (!p) throw ParseError(line_no, 1, "missing 'p = ...'");
  if (!seen_weight) throw ParseError(line_no, 1, "missing weight block");
  if (!seen_map) throw ParseError(line_no, 1, "missing map block");

  std::map<Nat, Rational> weight_values;
  Nat wstart = weight_start.value_or(weight_table.empty() ? 1 : weight_table.rbegin()->first + 1);
  for (const auto& [n, entry] : weight_table) {
    if (n >= wstart) {
      throw ParseError(entry.second.line, entry.second.column,
                       "exception " + std::to_string(n) + " is not below the tail start " +
                           std::to_string(wstart));
    }
    weight_values[n] = entry.first;
  }
  std::map<Nat, Nat> map_values;
  for (const auto& [n, entry] : map_table) {
    if (n >= *map_start) {
      throw ParseError(entry.second.line, entry.second.column,
                       "exception " + std::to_string(n) + " is not below the tail start " +
                           std::to_string(*map_start));
    }
    map_values[n] = entry.first;
  }
  for (Nat n = 1; n < *map_start; ++n) {
    if (!map_values.count(n)) {
      throw ParseError(map_tail_at.line, map_tail_at.column,
                       "map value at " + std::to_string(n) + " is not defined");
    }
  }
  try {
    out.op.u = Weight::make(std::move(weight_values), wstart, std::move(weight_terms));
    out.op.phi = SelfMap::make(std::move(map_values), *map_start, map_tail);
  } catch (const InvalidSymbol& e) {
    throw ParseError(weight_tail_at.line, weight_tail_at.column, e.what());
  } catch (const OverflowError& e) {
    throw ParseError(weight_tail_at.line, weight_tail_at.column, e.what());
  }
  out.op.p = *p;
  return out;
}

namespace {

template <class V, class Fmt>
void print_runs(std::ostringstream& os, const std::map<Nat, V>& table, Fmt fmt) {
  auto it = table.begin();
  while (it != table.end()) {
    auto run_end = it;
    auto next = std::next(it);
    while (next != table.end() && next->first == run_end->first + 1 && next->second == it->second) {
      run_end = next;
      ++next;
    }
    os << "  except " << it->first;
    if (run_end != it) os << ".." << run_end->first;
    os << " = " << fmt(it->second) << '\n';
    it = next;
  }
}

std::string format_terms(const std::vector<PowerTerm>& tail) {
  std::ostringstream os;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    Rational c = tail[i].coefficient;
    if (i == 0) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    os << Rational(abs(c)).get_str();
    const Rational& a = tail[i].exponent;
    if (a == 0) continue;
    os << "/n";
    if (a == 1) continue;
    if (is_integer(a)) {
      os << '^' << a.get_str();
    } else {
      os << "^(" << a.get_str() << ')';
    }
  }
  return os.str();
}

}  // namespace

std::string print_spec(const SpecFile& spec) {
  std::ostringstream os;
  if (!spec.label.empty()) os << "label = " << spec.label << '\n';
  os << "p = " << spec.op.p.get_str() << "\n";
  const Weight& u = spec.op.u;
  os << "weight {\n";
  print_runs(os, u.exceptions(), [](const Rational& q) { return q.get_str(); });
  if (u.has_zero_tail()) {
    os << "  tail zero\n";
  } else {
    os << "  tail from " << u.tail_start() << " : " << format_terms(u.tail()) << '\n';
  }
  os << "}\n";
  const SelfMap& phi = spec.op.phi;
  os << "map {\n";
  print_runs(os, phi.exceptions(), [](Nat v) { return std::to_string(v); });
  os << "  tail from " << phi.tail_start() << " : ";
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
      phi.tail());
  os << "\n}\n";
  return os.str();
}

SeqExpr parse_vector(std::string_view text) {
  LineParser lp(tokenize(text, 1), 1);
  std::map<Nat, Rational> values;
  if (lp.at_end()) return SeqExpr::zero();
  for (;;) {
    const int col = lp.peek().column;
    Nat index = lp.positive("index");
    lp.expect_punct(":");
    Rational v = lp.rational("rational value");
    if (!values.emplace(index, v).second) {
      throw ParseError(1, col, "duplicate index " + std::to_string(index));
    }
    if (lp.at_end()) break;
    lp.expect_punct(",");
  }
  return SeqExpr::finite(std::move(values));
}

std::string format_vector(const SeqExpr& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, v] : f.exceptions()) {
    os << (first ? "" : ", ") << n << ':' << v.get_str();
    first = false;
  }
  if (!f.has_zero_tail()) {
    os << (first ? "" : ", ") << "n>=" << f.tail_start() << ": " << format_terms(f.tail());
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace wcop
