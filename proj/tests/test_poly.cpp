#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certkit/poly.hpp"

using namespace certkit;

namespace {
const std::vector<std::string> xy = {"x", "y"};
}

TEST_CASE("parse, arithmetic, print round trip") {
  Poly p = parse_poly("x^2 - 2*x*y + y^2", xy);
  Poly q = parse_poly("x - y", xy);
  CHECK(p == q * q);
  CHECK(p.degree() == 2);
  CHECK(p.term_count() == 3);

  Poly r = parse_poly(poly_to_string(p, xy), xy);
  CHECK(r == p);

  Poly s = parse_poly("1/2 + sqrt(2)*x", xy);
  CHECK(parse_poly(poly_to_string(s, xy), xy) == s);
  CHECK((s - s).is_zero());
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_poly("x + w", xy), doctest::Contains("unknown variable 'w'"),
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("x + ", xy), std::invalid_argument);
  CHECK_THROWS_AS(parse_poly("", xy), std::invalid_argument);
}

TEST_CASE("substitute expands exactly") {
  // (a+b)^2 via substitution into t^2
  Poly t2 = parse_poly("t^2", {"t"});
  Poly ab = parse_poly("x + y", xy);
  CHECK(t2.substitute({ab}) == parse_poly("x^2 + 2*x*y + y^2", xy));

  // composition with radical coefficients
  Poly lin = parse_poly("sqrt(2)*x", xy);
  CHECK(t2.substitute({lin}) == parse_poly("2*x^2", xy));
}

TEST_CASE("evaluate in doubles") {
  Poly p = parse_poly("x^2*y - 3*y + 1/2", xy);
  double v = p.evaluate<double>({2.0, 3.0});
  CHECK(v == doctest::Approx(12.0 - 9.0 + 0.5));
}

TEST_CASE("support and degree") {
  Poly p = parse_poly("x^3 + 2", xy);
  CHECK(p.support() == std::vector<int>{0});
  CHECK(p.degree() == 3);
  CHECK(Poly(2).degree() == 0);
}

TEST_CASE("weighted norm") {
  // g = x1 on R^2, d = 1: weight of x1 is 1!0!0!/1! = 1, norm 1.
  Poly g = parse_poly("x", xy);
  CHECK(weighted_norm_squared(g, 1) == Scalar(1));
  // g = x^2 with d = 2: weight 2!0!0!/2! = 1.
  CHECK(weighted_norm_squared(parse_poly("x^2", xy), 2) == Scalar(1));
  // g = x*y with d = 2: weight 1!1!0!/2! = 1/2.
  CHECK(weighted_norm_squared(parse_poly("x*y", xy), 2) == Scalar(Rat(1, 2)));
  // constants pick up the (d-0)!/d! = 1 weight
  CHECK(weighted_norm_squared(parse_poly("3", xy), 1) == Scalar(9));
  CHECK_THROWS(weighted_norm_squared(parse_poly("x^2", xy), 1));
}

TEST_CASE("slot variable names") {
  auto names = slot_var_names(2);
  CHECK(names == std::vector<std::string>{"y1", "y2", "z1", "z2", "u"});
  CHECK(x_var_names(3) == std::vector<std::string>{"x1", "x2", "x3"});
}
