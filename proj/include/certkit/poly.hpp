#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "certkit/scalar.hpp"

namespace certkit {

/// One entry per variable; total degree is the entry sum.
using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order: compare total degree first, then lex.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Scalar> {
  static bool is_zero(const Scalar& c) { return c.is_zero(); }
  static Scalar zero() { return Scalar(0); }
  static Scalar one() { return Scalar(1); }
};

template <>
struct CoeffTraits<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
};

/// Sparse multivariate polynomial over coefficient type C (exact Scalar or
/// double), canonically ordered by grlex. Zero coefficients are never stored.
template <class C>
class BasicPoly {
 public:
  using Terms = std::map<Exponents, C, GrlexLess>;

  BasicPoly() : nvars_(0) {}
  explicit BasicPoly(int nvars) : nvars_(nvars) {}

  static BasicPoly constant(int nvars, C value) {
    BasicPoly p(nvars);
    p.add_term(Exponents(nvars, 0), std::move(value));
    return p;
  }

  static BasicPoly variable(int nvars, int index, C coeff = CoeffTraits<C>::one()) {
    BasicPoly p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(std::move(e), std::move(coeff));
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  int degree() const {  // degree of the zero polynomial is 0 here
    return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
  }

  C coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? CoeffTraits<C>::zero() : it->second;
  }

  void add_term(Exponents e, C coeff) {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!CoeffTraits<C>::is_zero(coeff)) terms_.emplace(std::move(e), std::move(coeff));
      return;
    }
    it->second += coeff;
    if (CoeffTraits<C>::is_zero(it->second)) terms_.erase(it);
  }

  BasicPoly operator-() const {
    BasicPoly out(nvars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }

  BasicPoly& operator+=(const BasicPoly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend BasicPoly operator+(BasicPoly l, const BasicPoly& r) { return l += r; }
  friend BasicPoly operator-(BasicPoly l, const BasicPoly& r) { return l -= r; }

  friend BasicPoly operator*(const BasicPoly& l, const BasicPoly& r) {
    l.check_ring(r);
    BasicPoly out(l.nvars_);
    for (const auto& [ea, ca] : l.terms_)
      for (const auto& [eb, cb] : r.terms_) {
        Exponents e(l.nvars_);
        for (int i = 0; i < l.nvars_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(std::move(e), ca * cb);
      }
    return out;
  }

  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  BasicPoly scaled(const C& k) const {
    BasicPoly out(nvars_);
    if (CoeffTraits<C>::is_zero(k)) return out;
    for (const auto& [e, c] : terms_) out.add_term(e, c * k);
    return out;
  }

  friend bool operator==(const BasicPoly& l, const BasicPoly& r) {
    return l.nvars_ == r.nvars_ && l.terms_ == r.terms_;
  }

  BasicPoly pow(int k) const {
    BasicPoly out = constant(nvars_, CoeffTraits<C>::one());
    BasicPoly base = *this;
    for (; k > 0; k >>= 1) {
      if (k & 1) out *= base;
      if (k > 1) base *= base;
    }
    return out;
  }

  /// p(args[0], ..., args[nvars-1]) fully expanded; every arg shares one ring.
  BasicPoly substitute(const std::vector<BasicPoly>& args) const {
    if (static_cast<int>(args.size()) != nvars_) throw std::invalid_argument("substitute: arity mismatch");
    int target_n = args.empty() ? 0 : args.front().nvars();
    for (const auto& a : args)
      if (a.nvars() != target_n) throw std::invalid_argument("substitute: argument ring mismatch");
    // cache powers of each argument
    std::vector<std::vector<BasicPoly>> powers(nvars_);
    BasicPoly out(target_n);
    for (const auto& [e, c] : terms_) {
      BasicPoly term = constant(target_n, c);
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(target_n, CoeffTraits<C>::one()));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * args[i]);
        term *= pw[e[i]];
      }
      out += term;
    }
    return out;
  }

  template <class V>
  V evaluate(const std::vector<V>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("evaluate: arity mismatch");
    V total = V(0);
    for (const auto& [e, c] : terms_) {
      V term = coeff_as<V>(c);
      for (int i = 0; i < nvars_; ++i)
        for (int k = 0; k < e[i]; ++k) term = term * point[i];
      total = total + term;
    }
    return total;
  }

  /// Support: variable indices that occur with positive exponent.
  std::vector<int> support() const {
    std::vector<bool> seen(nvars_, false);
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i)
        if (e[i] > 0) seen[i] = true;
    std::vector<int> out;
    for (int i = 0; i < nvars_; ++i)
      if (seen[i]) out.push_back(i);
    return out;
  }

 private:
  void check_ring(const BasicPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable-count mismatch");
  }

  template <class V>
  static V coeff_as(const C& c) {
    if constexpr (std::is_same_v<C, Scalar> && std::is_same_v<V, double>)
      return c.to_double();
    else
      return V(c);
  }

  int nvars_;
  Terms terms_;
};

using Poly = BasicPoly<Scalar>;
using DPoly = BasicPoly<double>;

/// Grammar: terms joined by +/-; a term is a '*'-joined product of rational or
/// decimal literals, sqrt(s) literals, and variables with optional ^k.
/// Unknown variable names and syntax errors throw with a position message.
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

std::string poly_to_string(const Poly& p, const std::vector<std::string>& vars);

DPoly to_double_poly(const Poly& p);

/// sqrt( sum_a [a_1!...a_n!(d - |a|)! / d!] * g_a^2 ), the weight used by the
/// ball bound. Requires d >= max(deg g, 1).
double weighted_norm(const Poly& g, int d);

/// Exact square of the weighted norm (stays in the coefficient field).
Scalar weighted_norm_squared(const Poly& g, int d);

/// Conventional slot variable names y1..yk, z1..zk, u for a (2k+1)-ary slot.
std::vector<std::string> slot_var_names(int k);

/// x1..xn.
std::vector<std::string> x_var_names(int n);

}  // namespace certkit
