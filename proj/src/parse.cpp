#include "shtuka/parse.hpp"

#include "shtuka/errors.hpp"

#include <cctype>
#include <map>

namespace shtuka {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  bool accept(const std::string& word) {
    skip();
    if (s_.compare(i_, word.size(), word) != 0) return false;
    i_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip();
    std::size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == digits) fail("expected an integer");
    try {
      return std::stoll(s_.substr(start, i_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }
  bool at_digit() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }
  // Text up to the matching close bracket at depth zero.
  std::string until_close(char open, char close) {
    std::size_t start = i_;
    int depth = 0;
    while (i_ < s_.size()) {
      if (s_[i_] == open) ++depth;
      else if (s_[i_] == close) {
        if (depth == 0) return s_.substr(start, i_ - start);
        --depth;
      }
      ++i_;
    }
    fail(std::string("missing '") + close + "'");
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
};

using Poly = std::vector<int>;

void poly_add(Poly& a, const Poly& b, int sign) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += sign * b[i];
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::int64_t exponent(Cursor& c) { return c.accept('^') ? c.integer() : 1; }

// Polynomial in t with integer coefficients: sums of products of integers and t^k.
Poly t_poly(Cursor& c);

Poly t_factor(Cursor& c) {
  if (c.accept('(')) {
    Poly p = t_poly(c);
    c.expect(')');
    return p;
  }
  if (c.accept('t')) {
    std::int64_t k = exponent(c);
    if (k < 0 || k > 64) c.fail("bad exponent of t");
    Poly p(static_cast<std::size_t>(k) + 1, 0);
    p.back() = 1;
    return p;
  }
  if (c.at_digit()) return {static_cast<int>(c.integer())};
  c.fail("expected a coefficient");
}

Poly t_term(Cursor& c) {
  Poly p = t_factor(c);
  while (c.accept('*')) p = poly_mul(p, t_factor(c));
  return p;
}

Poly t_poly(Cursor& c) {
  int sign = c.accept('-') ? -1 : 1;
  Poly acc;
  poly_add(acc, t_term(c), sign);
  for (;;) {
    if (c.accept('+')) sign = 1;
    else if (c.peek() == '-') {
      c.accept('-');
      sign = -1;
    } else break;
    poly_add(acc, t_term(c), sign);
  }
  return acc;
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else cur += ch;
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\n\r"), b = s.find_last_not_of(" \t\n\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

template <class T, class F>
std::vector<T> bracket_list(const std::string& s, F item) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseError("expected a bracketed list: \"" + s + "\"");
  std::string body = trim(t.substr(1, t.size() - 2));
  std::vector<T> out;
  if (body.empty()) return out;
  for (const auto& part : split_top(body, ',')) out.push_back(item(trim(part)));
  return out;
}

std::int64_t whole_integer(const std::string& s) {
  Cursor c(s);
  std::int64_t v = c.integer();
  if (!c.done()) c.fail("trailing characters");
  return v;
}

}  // namespace

const FiniteField& parse_field(const std::string& s) {
  std::map<std::string, std::string> kv;
  for (const auto& part : split_top(s, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("field spec entries are key=value: \"" + s + "\"");
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  if (!kv.count("p")) throw ParseError("field spec needs p: \"" + s + "\"");
  for (const auto& [k, v] : kv)
    if (k != "p" && k != "e" && k != "m" && k != "mod") throw ParseError("unknown field spec key " + k);
  auto num = [&](const char* key) { return kv.count(key) ? whole_integer(kv[key]) : 1; };
  std::int64_t p = num("p"), e = num("e"), m = num("m");
  Poly mod;
  if (kv.count("mod")) {
    Cursor c(kv["mod"]);
    mod = t_poly(c);
    if (!c.done()) c.fail("trailing characters");
  }
  try {
    return FiniteField::get(static_cast<int>(p), static_cast<int>(e), static_cast<int>(m), mod);
  } catch (const PreconditionError& err) {
    throw ParseError(std::string("invalid field: ") + err.what());
  }
}

Coweight parse_coweight(const std::string& s) { return bracket_list<std::int64_t>(s, whole_integer); }

RationalCoweight parse_rational_coweight(const std::string& s) {
  return bracket_list<Rational>(s, [](const std::string& item) {
    auto slash = item.find('/');
    if (slash == std::string::npos) return Rational(whole_integer(item));
    std::int64_t den = whole_integer(item.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in \"" + item + "\"");
    return Rational(whole_integer(item.substr(0, slash)), den);
  });
}

Perm parse_perm(const std::string& s, int n) {
  std::string t = trim(s);
  if (!t.empty() && t.front() == '[') {
    Coweight img = parse_coweight(t);
    if (static_cast<int>(img.size()) != n) throw ParseError("permutation has the wrong size: \"" + s + "\"");
    Perm w(n);
    std::vector<bool> hit(n, false);
    for (int i = 0; i < n; ++i) {
      if (img[i] < 1 || img[i] > n || hit[img[i] - 1]) throw ParseError("not a permutation: \"" + s + "\"");
      hit[img[i] - 1] = true;
      w[i] = static_cast<int>(img[i] - 1);
    }
    return w;
  }
  std::vector<std::vector<int>> cycles;
  Cursor c(t);
  while (!c.done()) {
    c.expect('(');
    std::vector<int> cyc;
    while (!c.accept(')')) {
      cyc.push_back(static_cast<int>(c.integer()));
      c.accept(',');
    }
    if (!cyc.empty()) cycles.push_back(cyc);
  }
  return perm_from_cycles(n, cycles);
}

AffineWeyl parse_affine_weyl(const std::string& s) {
  std::string t = trim(s);
  auto wpos = t.find("w:"), tpos = t.find("t:");
  if (wpos != 0 || tpos == std::string::npos) throw ParseError("element literal is w:<perm> t:<coweight>: \"" + s + "\"");
  Coweight tr = parse_coweight(t.substr(tpos + 2));
  Perm w = parse_perm(t.substr(2, tpos - 2), static_cast<int>(tr.size()));
  return AffineWeyl(w, tr);
}

Series parse_series(const std::string& s, const FiniteField& F) {
  Cursor c(s);
  std::map<std::int64_t, Poly> terms;
  std::int64_t prec = kExact;
  bool first = true;
  for (;;) {
    int sign = 1;
    if (c.accept('-')) sign = -1;
    else if (!first && !c.accept('+')) break;
    else if (first) c.accept('+');
    if (c.done()) {
      if (first) c.fail("empty series");
      c.fail("dangling sign");
    }
    first = false;
    if (c.accept("O(")) {
      c.expect('z');
      std::int64_t k = exponent(c);
      c.expect(')');
      prec = std::min(prec, k);
      continue;
    }
    // product of t-coefficients and at most a z-power
    Poly coef{1};
    std::int64_t k = 0;
    bool any = false;
    do {
      if (c.accept('z')) {
        k += exponent(c);
        any = true;
      } else {
        coef = poly_mul(coef, t_factor(c));
        any = true;
      }
    } while (c.accept('*'));
    if (!any) c.fail("expected a term");
    if (F.degree() == 1 && coef.size() > 1) {
      for (std::size_t i = 1; i < coef.size(); ++i)
        if (coef[i] % F.p() != 0) c.fail("t is not defined over the prime field");
    }
    Poly& slot = terms[k];
    poly_add(slot, coef, sign);
  }
  if (!c.done()) c.fail("unexpected character");
  Series out = Series::zero(F, prec);
  for (const auto& [k, coef] : terms) {
    if (k >= prec) continue;
    Elem v = F.from_poly(coef);
    if (v) out = out + Series::monomial(F, v, k);
  }
  return out.truncate(prec);
}

Matrix parse_matrix(const std::string& s, const FiniteField& F) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') throw ParseError("matrix literal must be bracketed: \"" + s + "\"");
  std::string body = trim(t.substr(1, t.size() - 2));
  std::vector<std::vector<std::string>> rows;
  if (!body.empty() && body.front() == '[') {
    for (const auto& r : split_top(body, ',')) {
      std::string rt = trim(r);
      if (rt.size() < 2 || rt.front() != '[' || rt.back() != ']') throw ParseError("bad matrix row: \"" + r + "\"");
      rows.push_back(split_top(rt.substr(1, rt.size() - 2), ','));
    }
  } else {
    for (const auto& r : split_top(body, ';')) rows.push_back(split_top(r, ','));
  }
  if (rows.empty() || rows[0].empty()) throw ParseError("empty matrix");
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(rows[0].size());
  Matrix m(F, nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc) throw ParseError("ragged matrix literal: \"" + s + "\"");
    for (int j = 0; j < nc; ++j) m(i, j) = parse_series(rows[i][j], F);
  }
  return m;
}

ParabolicSpec parse_parabolic(const std::string& s, int n) {
  std::string t = trim(s);
  if (t.rfind("blocks=", 0) != 0) throw ParseError("parabolic literal is blocks=<sizes> [w=<perm>]: \"" + s + "\"");
  auto wpos = t.find("w=");
  std::string bl = trim(t.substr(7, wpos == std::string::npos ? std::string::npos : wpos - 7));
  std::vector<int> blocks;
  int sum = 0;
  for (const auto& part : split_top(bl, ',')) {
    std::int64_t b = whole_integer(trim(part));
    if (b <= 0) throw ParseError("block sizes must be positive");
    blocks.push_back(static_cast<int>(b));
    sum += static_cast<int>(b);
  }
  if (sum != n) throw ParseError("block sizes do not sum to " + std::to_string(n));
  Perm w = wpos == std::string::npos ? identity_perm(n) : parse_perm(t.substr(wpos + 2), n);
  return ParabolicSpec(blocks, w);
}

}  // namespace shtuka
