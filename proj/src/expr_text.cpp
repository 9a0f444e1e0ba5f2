#include "fockmrf/expr_text.hpp"

#include <cctype>

#include "fockmrf/errors.hpp"

namespace fockmrf {

std::string render_expr(const OperatorExpr& expr) {
  if (expr.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& m : expr.terms()) {
    Rational coeff = m.coeff;
    if (first) {
      if (coeff < 0) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += coeff < 0 ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    out += to_string(coeff);
    for (const auto& f : m.factors) {
      out += f.kind == FactorKind::Create ? " * A'[" : " * A[";
      out += std::to_string(f.site.node) + "," + std::to_string(f.site.bin) + "]";
      if (f.power != 1) out += "^" + std::to_string(f.power);
    }
  }
  return out;
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (!s_.empty() && std::isspace(static_cast<unsigned char>(s_.front()))) s_.remove_prefix(1);
  }
  bool done() {
    skip_ws();
    return s_.empty();
  }
  char peek() {
    skip_ws();
    return s_.empty() ? '\0' : s_.front();
  }
  bool accept(char c) {
    if (peek() != c) return false;
    s_.remove_prefix(1);
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int read_int() {
    skip_ws();
    std::size_t i = 0;
    while (i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i]))) ++i;
    if (i == 0) fail("expected an integer");
    int v = std::stoi(std::string(s_.substr(0, i)));
    s_.remove_prefix(i);
    return v;
  }
  Rational read_rational() {
    skip_ws();
    std::size_t i = 0;
    while (i < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i])) || s_[i] == '.')) ++i;
    if (i == 0) fail("expected a number");
    std::size_t end = i;
    // optional "/den"
    if (end < s_.size() && s_[end] == '/') {
      std::size_t j = end + 1;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j > end + 1) end = j;
    }
    Rational r = parse_rational(s_.substr(0, end));
    s_.remove_prefix(end);
    return r;
  }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("operator expression: " + why + " near '" +
                     std::string(s_.substr(0, std::min<std::size_t>(s_.size(), 16))) + "'");
  }

 private:
  std::string_view s_;
};

OperatorFactor parse_factor(Scanner& sc) {
  OperatorFactor f;
  sc.expect('A');
  f.kind = sc.accept('\'') ? FactorKind::Create : FactorKind::Annihilate;
  sc.expect('[');
  f.site.node = sc.read_int();
  sc.expect(',');
  f.site.bin = sc.read_int();
  sc.expect(']');
  f.power = sc.accept('^') ? sc.read_int() : 1;
  if (f.power < 1) sc.fail("factor power must be >= 1");
  return f;
}

OperatorMonomial parse_term(Scanner& sc, bool negated) {
  OperatorMonomial m;
  bool have_coeff = false;
  char c = sc.peek();
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
    m.coeff = sc.read_rational();
    have_coeff = true;
    sc.accept('*');
  }
  while (sc.peek() == 'A') {
    m.factors.push_back(parse_factor(sc));
    sc.accept('*');
  }
  if (!have_coeff && m.factors.empty()) sc.fail("empty term");
  if (negated) m.coeff = -m.coeff;
  return m;
}

}  // namespace

OperatorExpr parse_expr(std::string_view text) {
  Scanner sc(text);
  if (sc.done()) throw ParseError("operator expression: empty input");
  std::vector<OperatorMonomial> terms;
  bool negated = sc.accept('-');
  if (!negated) sc.accept('+');
  terms.push_back(parse_term(sc, negated));
  while (!sc.done()) {
    if (sc.accept('+'))
      negated = false;
    else if (sc.accept('-'))
      negated = true;
    else
      sc.fail("expected '+' or '-' between terms");
    terms.push_back(parse_term(sc, negated));
  }
  OperatorExpr expr(std::move(terms));
  // "0" parses as a single zero-coefficient term, i.e. the zero expression.
  return expr;
}

}  // namespace fockmrf
