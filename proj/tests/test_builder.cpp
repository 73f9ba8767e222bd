#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certkit/builder.hpp"
#include "certkit/io.hpp"
#include "certkit/verify.hpp"

using namespace certkit;

namespace {

std::string data_path(const std::string& name) {
  return std::string(CERTKIT_TEST_DATA) + "/" + name;
}

// (2 - x1 - x2)^2 over the unit disk, no extra constraints
ProblemSpec disk_spec(ConeClass cone, Shape shape) {
  ProblemSpec s;
  s.n = 2;
  s.p = parse_poly("4 - 4*x1 - 4*x2 + x1^2 + 2*x1*x2 + x2^2", x_var_names(2));
  s.geometry.sparse = false;
  s.geometry.r = Scalar(1);
  s.cone = cone;
  s.shape = shape;
  s.d_max = 2;
  return s;
}

}  // namespace

TEST_CASE("split template structure over a ball") {
  ProblemSpec spec = disk_spec(ConeClass::Soms, Shape::Split);
  CertificateTemplate tmpl = build_template(spec, 2);
  REQUIRE(tmpl.slots.size() == 2);
  CHECK(tmpl.d == 2);

  const Slot& a0 = tmpl.slots[0];
  CHECK(a0.role == SlotRole::Alpha0);
  CHECK(a0.clique == -1);
  CHECK(a0.arity == 5);
  CHECK(a0.max_deg == 4);
  REQUIRE(a0.args.size() == 5);
  auto xs = x_var_names(2);
  CHECK((a0.args[0] - parse_poly("x1 + 1", xs)).is_zero());
  CHECK((a0.args[2] - parse_poly("1 - x1", xs)).is_zero());
  CHECK((a0.args[4] - parse_poly("1 - x1^2 - x2^2", xs)).is_zero());
  CHECK((a0.multiplier - parse_poly("1", xs)).is_zero());

  const Slot& a1 = tmpl.slots[1];
  CHECK(a1.role == SlotRole::Alpha1);
  CHECK((a1.multiplier - parse_poly("1 - x1^2 - x2^2", xs)).is_zero());
}

TEST_CASE("sparse split template: per-clique alphas plus univariate rhos") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  CertificateTemplate tmpl = build_template(spec, 1);
  REQUIRE(tmpl.slots.size() == 10);
  CHECK(tmpl.slots[0].role == SlotRole::Alpha0);
  CHECK(tmpl.slots[0].clique == 0);
  CHECK(tmpl.slots[0].arity == 5);
  CHECK(tmpl.slots[1].role == SlotRole::Alpha1);
  CHECK(tmpl.slots[2].clique == 1);
  CHECK(tmpl.slots[3].clique == 1);
  for (int j = 0; j < 6; ++j) {
    const Slot& rho = tmpl.slots[4 + j];
    CHECK(rho.role == SlotRole::Rho);
    CHECK(rho.constraint == j);
    CHECK(rho.arity == 1);
    CHECK(rho.max_deg == 2);
    CHECK((rho.multiplier - spec.constraints[j].g).is_zero());
  }
  // U_1 - g_1 = 3 - (1 - x1) = 2 + x1
  auto xs = x_var_names(3);
  CHECK((tmpl.slots[4].args[0] - parse_poly("2 + x1", xs)).is_zero());

  // the clique-2 alpha args live in (x2, x3) with radius sqrt(2)
  Poly ball2 = tmpl.slots[2].args[4];
  CHECK((ball2 - parse_poly("2 - x2^2 - x3^2", xs)).is_zero());
}

TEST_CASE("merged and simple template shapes") {
  ProblemSpec spec = disk_spec(ConeClass::Dsos, Shape::Merged);
  CertificateTemplate tmpl = build_template(spec, 0);
  REQUIRE(tmpl.slots.size() == 1);
  CHECK(tmpl.slots[0].role == SlotRole::Alpha);
  CHECK((tmpl.slots[0].multiplier - parse_poly("1", x_var_names(2))).is_zero());

  ProblemSpec simple = disk_spec(ConeClass::Dsos, Shape::Simple);
  simple.constraints.push_back({parse_poly("1 - x1^2 - x2^2", x_var_names(2)), Scalar(2)});
  CertificateTemplate st = build_template(simple, 1);
  REQUIRE(st.slots.size() == 2);
  CHECK(st.slots[0].arity == 2);  // plain x variables, no composed args
  CHECK((st.slots[0].args[0] - Poly::variable(2, 0)).is_zero());
  CHECK(st.slots[1].role == SlotRole::Rho);
  CHECK((st.slots[1].multiplier - simple.constraints[0].g).is_zero());
}

TEST_CASE("merged soms and sparse simple are rejected") {
  ProblemSpec bad = disk_spec(ConeClass::Soms, Shape::Merged);
  CHECK_THROWS(bad.validate());
  ProblemSpec ex4 = load_problem(data_path("ex4_problem.json"));
  ex4.shape = Shape::Simple;
  CHECK_THROWS(ex4.validate());
}

TEST_CASE("assemble: constant target is feasible, odd stray monomial is not") {
  ProblemSpec spec = disk_spec(ConeClass::Soms, Shape::Split);
  spec.p = parse_poly("1", x_var_names(2));
  Assembly a = assemble(build_template(spec, 0), spec, ConeClass::Soms);
  CHECK(!a.structurally_infeasible);
  CHECK(solve_lp(a.problem).status == SolveStatus::Feasible);

  spec.p = parse_poly("x1", x_var_names(2));
  Assembly b = assemble(build_template(spec, 0), spec, ConeClass::Soms);
  CHECK(b.structurally_infeasible);
}

TEST_CASE("search finds an exact soms certificate on the disk example") {
  ProblemSpec spec = disk_spec(ConeClass::Soms, Shape::Split);
  SearchReport report = search(spec);
  REQUIRE(report.certificate.has_value());
  const Certificate& cert = *report.certificate;
  CHECK(cert.degree <= 2);
  CHECK(cert.provenance == "found");
  CHECK(!cert.approximate);
  CHECK(report.outcomes.back().status == DecideStatus::Found);

  VerifyReport vr = verify_certificate(spec, cert, true);
  CHECK(vr.ok);
  CHECK(vr.residual.is_zero());

  // feasibility is monotone in the degree parameter
  for (int d = cert.degree; d <= 2; ++d) {
    Assembly a = assemble(build_template(spec, d), spec, ConeClass::Soms);
    CHECK(solve_lp(a.problem).status == SolveStatus::Feasible);
  }
}

TEST_CASE("search finds an sdsos certificate on the chain example") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  SearchReport report = search(spec);
  REQUIRE(report.certificate.has_value());
  const Certificate& cert = *report.certificate;
  CHECK(cert.degree <= 2);
  if (cert.approximate) {
    VerifyReport vr = verify_certificate(spec, cert, false, 1e-6);
    CHECK(vr.ok);
  } else {
    VerifyReport vr = verify_certificate(spec, cert, true);
    CHECK(vr.ok);
  }
}

TEST_CASE("negative control: the plain quadratic module fails where the composed one works") {
  ProblemSpec simple = disk_spec(ConeClass::Dsos, Shape::Simple);
  simple.constraints.push_back({parse_poly("1 - x1^2 - x2^2", x_var_names(2)), Scalar(2)});

  SearchReport dsos = search(simple);
  CHECK(!dsos.certificate.has_value());
  for (const auto& o : dsos.outcomes) CHECK(o.status == DecideStatus::Infeasible);

  simple.cone = ConeClass::Sdsos;
  SearchReport sdsos = search(simple);
  CHECK(!sdsos.certificate.has_value());
  for (const auto& o : sdsos.outcomes) {
    CHECK(o.status != DecideStatus::Found);
    if (o.d >= 1) CHECK(o.status != DecideStatus::Infeasible);  // numeric answer only
  }

  // the same polynomial admits a composed-argument certificate (previous case)
  ProblemSpec split = disk_spec(ConeClass::Soms, Shape::Split);
  CHECK(search(split).certificate.has_value());
}

TEST_CASE("search cannot certify a negative constant") {
  ProblemSpec spec = disk_spec(ConeClass::Soms, Shape::Split);
  spec.p = parse_poly("0 - 1", x_var_names(2));
  SearchReport report = search(spec);
  CHECK(!report.certificate.has_value());
  for (const auto& o : report.outcomes) CHECK(o.status == DecideStatus::Infeasible);
}

TEST_CASE("rationalize recovers an exact witness from a perturbed float one") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  Certificate cert = load_certificate(data_path("ex4_certificate.json"), spec);
  cert.approximate = true;
  for (auto& slot : cert.slots) {
    auto& gram = std::get<GramWitness>(slot.witness);
    gram.approximate = true;
    for (auto& blk : gram.blocks) {
      if (blk.i == blk.j) continue;
      blk.t = Scalar(Rat(blk.t.to_double() * (1.0 + 3e-9)));
      blk.d_i = Scalar(Rat(blk.d_i.to_double() * (1.0 - 2e-9)));
    }
  }
  auto exact = rationalize(cert, spec);
  REQUIRE(exact.has_value());
  CHECK(!exact->approximate);
  VerifyReport vr = verify_certificate(spec, *exact, true);
  CHECK(vr.ok);
  CHECK(vr.residual.is_zero());

  // an already-exact certificate passes through unchanged
  Certificate golden = load_certificate(data_path("ex4_certificate.json"), spec);
  auto same = rationalize(golden, spec);
  REQUIRE(same.has_value());
  CHECK(verify_certificate(spec, *same, true).ok);
}
