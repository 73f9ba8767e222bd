#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "certkit/cones.hpp"

using namespace certkit;

namespace {
const std::vector<std::string> x12 = {"x1", "x2"};
}

TEST_CASE("soms_check accepts and rejects correctly") {
  auto w = soms_check(parse_poly("1/4 + 1/2*x2^2 + 1/4*x1^2*x2^2", x12));
  REQUIRE(w.has_value());
  CHECK(verify_witness(parse_poly("1/4 + 1/2*x2^2 + 1/4*x1^2*x2^2", x12), *w).ok);

  CHECK(!soms_check(parse_poly("x1", x12)).has_value());
  CHECK(!soms_check(parse_poly("-x1^2", x12)).has_value());
  CHECK(soms_check(Poly(2)).has_value());  // zero polynomial
}

TEST_CASE("perturbed soms witness is rejected with the right residual") {
  Poly p = parse_poly("x1^2 + x2^4", x12);
  auto w = soms_check(p);
  REQUIRE(w.has_value());
  w->terms[0].second += Scalar(1);
  auto rep = verify_witness(p, *w);
  CHECK(!rep.ok);
  CHECK(rep.residual.term_count() == 1);
  CHECK(rep.residual.terms().begin()->second == Scalar(1));
}

TEST_CASE("dsos accepts a perfect square over (x1, x2)") {
  Poly p = parse_poly("x1^2 + 2*x1*x2 + x2^2", x12);
  std::vector<Exponents> basis = {{1, 0}, {0, 1}};
  auto res = dsos_decide(p, basis);
  REQUIRE(res.status == DecideStatus::Found);
  CHECK(res.gram->Q[0][0] == Scalar(1));
  CHECK(res.gram->Q[0][1] == Scalar(1));
  CHECK(verify_witness(p, *res.gram).ok);
}

TEST_CASE("forced Gram of (2 - x1 - x2)^2 is neither DD nor SDD") {
  // Over basis (1, x1, x2) coefficient matching forces
  // Q = [[4,-2,-2],[-2,1,1],[-2,1,1]]; row 2 gives 1 >= |-2| + |1| = 3, false,
  // and no 2x2 block split can cover the off-diagonal -2 with d = 1 budget.
  Poly p = parse_poly("4 - 4*x1 - 4*x2 + x1^2 + 2*x1*x2 + x2^2", x12);
  CHECK(p == parse_poly("2 - x1 - x2", x12) * parse_poly("2 - x1 - x2", x12));
  std::vector<Exponents> basis = {{0, 0}, {1, 0}, {0, 1}};

  auto dd = dsos_decide(p, basis);
  REQUIRE(dd.status == DecideStatus::Infeasible);
  CHECK(dd.infeasibility_witness.sign() > 0);

  SdsosOptions opts;
  auto sdd = sdsos_decide(p, basis, opts);
  CHECK(sdd.status == DecideStatus::NotFound);
}

TEST_CASE("zero polynomial has the zero Gram") {
  std::vector<Exponents> basis = {{1, 0}, {0, 1}};
  auto res = dsos_decide(Poly(2), basis);
  REQUIRE(res.status == DecideStatus::Found);
  CHECK(res.gram->Q[0][0].is_zero());
  CHECK(verify_witness(Poly(2), *res.gram).ok);
}

TEST_CASE("sdsos finds the binomial-square witness numerically") {
  Poly p = parse_poly("x1^2 + x2^2 + 9/5*x1*x2", x12);
  std::vector<Exponents> basis = {{1, 0}, {0, 1}};
  SdsosOptions opts;
  opts.dd_prepass = false;  // force the SOCP path
  auto res = sdsos_decide(p, basis, opts);
  REQUIRE(res.status == DecideStatus::Found);
  CHECK(res.gram->approximate);
  auto rep = verify_witness(p, *res.gram, 1e-6);
  CHECK(rep.ok);
}

TEST_CASE("basis too small is an error, not Infeasible") {
  Poly p = parse_poly("x1^4 + 1", x12);
  std::vector<Exponents> basis = {{1, 0}};
  CHECK_THROWS_AS(dsos_decide(p, basis), std::invalid_argument);
  CHECK_THROWS_AS(sdsos_decide(p, basis), std::invalid_argument);
}

TEST_CASE("inclusion chain on random soms polynomials") {
  // soms accepted implies dsos and sdsos accepted
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(0, 6);
  std::uniform_int_distribution<int> half_exp(0, 1);
  int checked = 0;
  while (checked < 200) {
    Poly p(2);
    for (int t = 0; t < 4; ++t) {
      Exponents e = {2 * half_exp(rng), 2 * half_exp(rng)};
      p.add_term(std::move(e), Scalar(coeff(rng)));
    }
    auto soms = soms_check(p);
    REQUIRE(soms.has_value());
    ++checked;

    auto basis = default_gram_basis(p);
    auto dd = dsos_decide(p, basis);
    REQUIRE(dd.status == DecideStatus::Found);
    CHECK(verify_witness(p, *dd.gram).ok);

    auto sdd = sdsos_decide(p, basis);
    REQUIRE(sdd.status == DecideStatus::Found);
    CHECK(verify_witness(p, *sdd.gram).ok);
  }
}

TEST_CASE("default Gram basis covers ceil(deg/2)") {
  Poly p = parse_poly("x1^3 + 1", x12);
  auto basis = default_gram_basis(p);
  CHECK(basis.size() == 6);  // degree <= 2 monomials in two variables
}

TEST_CASE("circuit witness verifies the Motzkin polynomial") {
  // x^4 y^2 + x^2 y^4 + 1 - 3 x^2 y^2: one circuit, beta = (2,2),
  // lambda = (1/3, 1/3, 1/3), circuit number 3.
  Poly p = parse_poly("x1^4*x2^2 + x1^2*x2^4 + 1 - 3*x1^2*x2^2", x12);
  Circuit c;
  c.vertices = {{{4, 2}, Scalar(1)}, {{2, 4}, Scalar(1)}, {{0, 0}, Scalar(1)}};
  c.beta = {2, 2};
  c.inner_coeff = Scalar(-3);
  c.lambda = {Rat(1, 3), Rat(1, 3), Rat(1, 3)};
  CircuitWitness w{{c}};
  CHECK(verify_witness(p, w).ok);

  // coefficient -4 breaks the circuit-number bound
  Poly bad = p - parse_poly("x1^2*x2^2", x12);
  Circuit c2 = c;
  c2.inner_coeff = Scalar(-4);
  auto rep = verify_witness(bad, CircuitWitness{{c2}});
  CHECK(!rep.ok);
  CHECK(rep.detail.find("circuit-number") != std::string::npos);
}

TEST_CASE("cone class names round trip") {
  for (const char* name : {"soms", "dsos", "sdsos", "sos-external", "sonc", "sage"})
    CHECK(cone_class_to_string(cone_class_from_string(name)) == name);
  CHECK_THROWS(cone_class_from_string("sos"));
}
