#include "certkit/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace certkit {

namespace {

// Exact square root of a nonnegative integer, if it is a perfect square.
std::optional<Int> int_sqrt_exact(const Int& v) {
  if (v < 0) return std::nullopt;
  Int r = boost::multiprecision::sqrt(v);
  if (r * r == v) return r;
  return std::nullopt;
}

// sqrt(s) for rational s, when s is a perfect square of a rational.
std::optional<Rat> rat_sqrt_exact(const Rat& s) {
  auto num = int_sqrt_exact(numerator(s));
  if (!num) return std::nullopt;
  auto den = int_sqrt_exact(denominator(s));
  if (!den) return std::nullopt;
  return Rat(*num, *den);
}

}  // namespace

Scalar::Scalar(Rat a, Rat b, Rat s) : a_(std::move(a)), b_(std::move(b)), s_(std::move(s)) {
  if (s_ < 0) throw std::invalid_argument("negative radicand");
  if (b_ == 0 || s_ == 0) {
    if (s_ == 0) b_ = 0;  // b*sqrt(0) == 0
    if (b_ == 0) s_ = 0;
    return;
  }
  if (auto root = rat_sqrt_exact(s_)) {  // fold perfect squares into the rational part
    a_ += b_ * *root;
    b_ = 0;
    s_ = 0;
  }
}

Rat Scalar::common_radicand(const Scalar& o) const {
  if (b_ == 0) return o.s_;
  if (o.b_ == 0) return s_;
  if (s_ != o.s_) throw std::invalid_argument("mixed radicands: sqrt(" + rat_to_string(s_) +
                                              ") vs sqrt(" + rat_to_string(o.s_) + ")");
  return s_;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  Rat s = common_radicand(o);
  *this = Scalar(a_ + o.a_, b_ + o.b_, s);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  Rat s = common_radicand(o);
  *this = Scalar(a_ - o.a_, b_ - o.b_, s);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rat s = common_radicand(o);
  // (a + b sqrt(s)) (c + d sqrt(s)) = (ac + bds) + (ad + bc) sqrt(s)
  *this = Scalar(a_ * o.a_ + b_ * o.b_ * s, a_ * o.b_ + b_ * o.a_, s);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  Rat s = common_radicand(o);
  // conjugate trick: 1/(c + d sqrt(s)) = (c - d sqrt(s)) / (c^2 - d^2 s)
  Rat denom = o.a_ * o.a_ - o.b_ * o.b_ * s;
  if (denom == 0) throw std::domain_error("division by zero norm");  // impossible for irrational sqrt(s)
  Scalar conj(o.a_ / denom, -o.b_ / denom, s);
  return *this *= conj;
}

int Scalar::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // a and b*sqrt(s) have opposite signs; compare a^2 with b^2 s.
  Rat lhs = a_ * a_;
  Rat rhs = b_ * b_ * s_;
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sa : sb;
}

double Scalar::to_double() const {
  return static_cast<double>(a_) + static_cast<double>(b_) * std::sqrt(static_cast<double>(s_));
}

std::string Scalar::str() const {
  if (b_ == 0) return rat_to_string(a_);
  std::string rad = "sqrt(" + rat_to_string(s_) + ")";
  std::string bs;
  if (b_ == 1) {
    bs = rad;
  } else if (b_ == -1) {
    bs = "-" + rad;
  } else {
    bs = rat_to_string(b_) + "*" + rad;
  }
  if (a_ == 0) return bs;
  if (b_ > 0) return rat_to_string(a_) + "+" + bs;
  return rat_to_string(a_) + bs;  // bs already starts with '-'
}

std::string rat_to_string(const Rat& v) {
  std::string out = numerator(v).str();
  if (denominator(v) != 1) out += "/" + denominator(v).str();
  return out;
}

namespace {

// Decimal integer parse; avoids cpp_int's octal reading of leading zeros.
Int int_from_decimal(const std::string& text) {
  std::string t = text;
  bool neg = false;
  size_t pos = 0;
  if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) neg = t[pos++] == '-';
  if (pos >= t.size()) throw std::invalid_argument("empty number");
  Int v = 0;
  for (; pos < t.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(t[pos])))
      throw std::invalid_argument("bad digit in '" + text + "'");
    v = v * 10 + (t[pos] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string t = text;
  if (t.empty()) throw std::invalid_argument("empty number");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Int num = int_from_decimal(t.substr(0, slash));
    Int den = int_from_decimal(t.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in " + text);
    return Rat(num, den);
  }
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    Int den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rat(int_from_decimal(digits), den);
  }
  return Rat(int_from_decimal(t));
}

Scalar scalar_from_string(const std::string& text) {
  // Split on top-level + / - (none of the accepted factors nest signs except a leading one).
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty scalar");

  Scalar total(0);
  size_t pos = 0;
  while (pos < t.size()) {
    int sgn = 1;
    while (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
      if (t[pos] == '-') sgn = -sgn;
      ++pos;
    }
    size_t end = pos;
    int depth = 0;
    while (end < t.size()) {
      char c = t[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-') && end != pos) break;
      ++end;
    }
    std::string term = t.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw std::invalid_argument("bad scalar: " + text);

    // term = factor (* factor)*; factors are rational literals or sqrt(s)
    Scalar val(1);
    size_t fpos = 0;
    while (fpos < term.size()) {
      size_t fend = term.find('*', fpos);
      // do not split inside sqrt(...)
      size_t paren = term.find('(', fpos);
      if (paren != std::string::npos && fend != std::string::npos && paren < fend) {
        size_t close = term.find(')', paren);
        if (close == std::string::npos) throw std::invalid_argument("unbalanced parens: " + text);
        fend = term.find('*', close);
      }
      std::string factor = term.substr(fpos, fend == std::string::npos ? std::string::npos : fend - fpos);
      if (factor.rfind("sqrt(", 0) == 0 && factor.back() == ')') {
        Rat s = rat_from_string(factor.substr(5, factor.size() - 6));
        val *= Scalar::sqrt_of(s);
      } else {
        val *= Scalar(rat_from_string(factor));
      }
      if (fend == std::string::npos) break;
      fpos = fend + 1;
    }
    if (sgn < 0) val = -val;
    total += val;
  }
  return total;
}

std::optional<Rat> rat_approx(double v, double tol, const Int& max_den) {
  if (!std::isfinite(v) || tol <= 0) return std::nullopt;
  // Work on a nonnegative interval [lo, hi]; undo the shift at the end.
  double lo = v - tol, hi = v + tol;
  Int shift = 0;
  if (lo < 0) {
    shift = Int(std::ceil(-lo)) + 1;
    lo += static_cast<double>(shift);
    hi += static_cast<double>(shift);
  }
  // Stern-Brocot walk with galloping: runs of same-direction mediant steps
  // are taken in one shot.
  Int pl = 0, ql = 1, pr = 1, qr = 0;
  auto value = [](const Int& p, const Int& q) { return static_cast<double>(p) / static_cast<double>(q); };
  for (int iter = 0; iter < 10000; ++iter) {
    Int pm = pl + pr, qm = ql + qr;
    if (qm > max_den) return std::nullopt;
    double mid = value(pm, qm);
    if (mid >= lo && mid <= hi) return Rat(pm, qm) - shift;
    if (mid < lo) {
      // Largest k with (pl + k*pr)/(ql + k*qr) < lo, then step k times.
      double denom = static_cast<double>(pr) - lo * static_cast<double>(qr);  // > 0
      Int k = 1;
      if (denom > 0) {
        double est = (lo * static_cast<double>(ql) - static_cast<double>(pl)) / denom;
        if (est > 1) k = Int(est);
      }
      while (k > 1 && value(pl + k * pr, ql + k * qr) >= lo) k /= 2;
      pl += k * pr;
      ql += k * qr;
    } else {
      // Largest k with (pr + k*pl)/(qr + k*ql) > hi.
      double num = static_cast<double>(pr) - hi * static_cast<double>(qr);    // > 0
      double denom = hi * static_cast<double>(ql) - static_cast<double>(pl);  // > 0
      Int k = 1;
      if (denom > 0) {
        double est = num / denom;
        if (est > 1) k = Int(est);
      }
      while (k > 1 && value(pr + k * pl, qr + k * ql) <= hi) k /= 2;
      pr += k * pl;
      qr += k * ql;
    }
  }
  return std::nullopt;
}

}  // namespace certkit
