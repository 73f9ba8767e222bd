#include "certkit/poly.hpp"

#include <cctype>
#include <sstream>

namespace certkit {

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  explicit Lexer(const std::string& t) : text(t) { skip_ws(); }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char take() {
    char c = text[pos++];
    skip_ws();
    return c;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("syntax error at position " + std::to_string(pos) + ": " + what);
  }

  std::string take_number() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.' || text[pos] == '/'))
      ++pos;
    if (pos == start) fail("expected number");
    std::string out = text.substr(start, pos - start);
    skip_ws();
    return out;
  }

  std::string take_ident() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected identifier");
    std::string out = text.substr(start, pos - start);
    skip_ws();
    return out;
  }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  int n = static_cast<int>(vars.size());
  Lexer lex(text);
  if (lex.done()) lex.fail("empty expression");

  Poly result(n);
  bool first = true;
  while (!lex.done()) {
    int sign = 1;
    if (lex.peek() == '+' || lex.peek() == '-') {
      if (lex.take() == '-') sign = -1;
      while (lex.peek() == '+' || lex.peek() == '-')
        if (lex.take() == '-') sign = -sign;
    } else if (!first) {
      lex.fail("expected '+' or '-'");
    }
    first = false;

    Scalar coeff(sign);
    Exponents exps(n, 0);
    bool any_factor = false;
    while (true) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= Scalar(rat_from_string(lex.take_number()));
        any_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t ident_pos = lex.pos;
        std::string name = lex.take_ident();
        if (name == "sqrt") {
          if (lex.peek() != '(') lex.fail("expected '(' after sqrt");
          lex.take();
          Rat s = rat_from_string(lex.take_number());
          if (lex.peek() != ')') lex.fail("expected ')'");
          lex.take();
          coeff *= Scalar::sqrt_of(s);
        } else {
          auto it = std::find(vars.begin(), vars.end(), name);
          if (it == vars.end())
            throw std::invalid_argument("unknown variable '" + name + "' at position " +
                                        std::to_string(ident_pos));
          int idx = static_cast<int>(it - vars.begin());
          int k = 1;
          if (lex.peek() == '^') {
            lex.take();
            std::string knum = lex.take_number();
            k = std::stoi(knum);
            if (k < 0) lex.fail("negative exponent");
          }
          exps[idx] += k;
        }
        any_factor = true;
      } else {
        lex.fail("expected coefficient or variable");
      }
      if (lex.peek() == '*') {
        lex.take();
        continue;
      }
      break;
    }
    if (!any_factor) lex.fail("empty term");
    result.add_term(std::move(exps), coeff);
  }
  return result;
}

std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars) {
  if (static_cast<int>(vars.size()) != p.nvars()) throw std::invalid_argument("var name count mismatch");
  if (p.is_zero()) return "0";

  auto mono_str = [&](const Exponents& e) {
    std::string out;
    for (int i = 0; i < p.nvars(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += vars[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  };

  // Descending grlex; a coefficient a + b*sqrt(s) prints as two terms.
  std::string out;
  auto emit = [&](const Scalar& c, const std::string& mono) {
    if (c.is_zero()) return;
    bool negative = c.sign() < 0;
    Scalar mag = negative ? -c : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string cs = mag.str();
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else {
      out += cs + "*" + mono;
    }
  };

  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono = mono_str(e);
    emit(Scalar(c.rational_part()), mono);
    emit(Scalar(Rat(0), c.radical_part(), c.radicand()), mono);
  }
  return out;
}

DPoly to_double_poly(const Poly& p) {
  DPoly out(p.nvars());
  for (const auto& [e, c] : p.terms()) out.add_term(e, c.to_double());
  return out;
}

Scalar weighted_norm_squared(const Poly& g, int d) {
  if (d < g.degree() || d < 1) throw std::invalid_argument("weighted_norm: d must satisfy d >= max(deg g, 1)");
  Int d_fact = 1;
  for (int i = 2; i <= d; ++i) d_fact *= i;
  Scalar total(0);
  for (const auto& [e, c] : g.terms()) {
    Int w = 1;
    int used = 0;
    for (int exp : e) {
      for (int i = 2; i <= exp; ++i) w *= i;
      used += exp;
    }
    for (int i = 2; i <= d - used; ++i) w *= i;
    total += c * c * Scalar(Rat(w, d_fact));
  }
  return total;
}

double weighted_norm(const Poly& g, int d) { return std::sqrt(weighted_norm_squared(g, d).to_double()); }

std::vector<std::string> slot_var_names(int k) {
  std::vector<std::string> names;
  for (int i = 1; i <= k; ++i) names.push_back("y" + std::to_string(i));
  for (int i = 1; i <= k; ++i) names.push_back("z" + std::to_string(i));
  names.push_back("u");
  return names;
}

std::vector<std::string> x_var_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace certkit
