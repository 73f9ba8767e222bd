#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "certkit/io.hpp"
#include "certkit/sizes.hpp"
#include "certkit/verify.hpp"

using namespace certkit;

namespace {

std::string data_path(const std::string& name) {
  return std::string(CERTKIT_TEST_DATA) + "/" + name;
}

}  // namespace

TEST_CASE("golden disk certificate verifies exactly") {
  ProblemSpec spec = load_problem(data_path("ex3_problem.json"));
  Certificate cert = load_certificate(data_path("ex3_certificate.json"), spec);
  VerifyReport rep = verify_certificate(spec, cert, true);
  CHECK(rep.ok);
  CHECK(rep.identity_ok);
  CHECK(rep.witnesses_ok);
  CHECK(rep.residual.is_zero());
  for (const auto& sr : rep.slot_results) CHECK(sr.ok);
}

TEST_CASE("golden chain certificate verifies exactly over sqrt(2) radii") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  Certificate cert = load_certificate(data_path("ex4_certificate.json"), spec);
  VerifyReport rep = verify_certificate(spec, cert, true);
  CHECK(rep.ok);
  CHECK(rep.residual.is_zero());
  REQUIRE(rep.slot_results.size() == 10);
  for (const auto& sr : rep.slot_results) CHECK(sr.ok);
}

TEST_CASE("a perturbed slot constant leaves the expected residual") {
  ProblemSpec spec = load_problem(data_path("ex3_problem.json"));
  Certificate cert = load_certificate(data_path("ex3_certificate.json"), spec);
  // change the alpha1 constant 1/2 -> 1/3: the identity drops by (1/6)(1 - |x|^2)
  auto names = slot_var_names(2);
  cert.slots[1].poly = parse_poly("1/3 + 2/3*z1^2 + 1/2*z2^2", names);
  auto& w = std::get<SomsWitness>(cert.slots[1].witness);
  w.terms[0].second = Scalar(Rat(1, 3));

  VerifyReport rep = verify_certificate(spec, cert, true);
  CHECK(!rep.ok);
  CHECK(!rep.identity_ok);
  CHECK(rep.witnesses_ok);  // the witness still matches the (wrong) slot poly
  Poly expected = parse_poly("1/6*x1^2 + 1/6*x2^2 - 1/6", x_var_names(2));
  CHECK((rep.residual - expected).is_zero());
}

TEST_CASE("a perturbed witness weight is caught while the identity holds") {
  ProblemSpec spec = load_problem(data_path("ex3_problem.json"));
  Certificate cert = load_certificate(data_path("ex3_certificate.json"), spec);
  auto& w = std::get<SomsWitness>(cert.slots[0].witness);
  w.terms[0].second = Scalar(Rat(1, 2));  // was 1/4; slot poly unchanged
  VerifyReport rep = verify_certificate(spec, cert, true);
  CHECK(!rep.ok);
  CHECK(rep.identity_ok);
  CHECK(!rep.witnesses_ok);
  CHECK(!rep.slot_results[0].ok);
}

TEST_CASE("spot check agrees with the exact identity") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  Certificate cert = load_certificate(data_path("ex4_certificate.json"), spec);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < 100; ++i) points.push_back({box(rng), box(rng), box(rng)});
  CHECK(spot_check(spec, cert, points) <= 1e-12);
  CHECK(spot_check(spec, cert, {}) == 0.0);

  Certificate bad = cert;
  bad.slots[3].poly = parse_poly("6", slot_var_names(2));  // was 5
  CHECK(spot_check(spec, bad, points) > 1e-3);
}

TEST_CASE("certified polynomial is nonnegative on sampled feasible points") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  DPoly p = to_double_poly(spec.p);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x{box(rng), box(rng), box(rng)};
    CHECK(p.evaluate<double>(x) >= -1e-12);
  }
}

TEST_CASE("certificate json round trip preserves exact verification") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  Certificate cert = load_certificate(data_path("ex4_certificate.json"), spec);
  nlohmann::json j = certificate_to_json(cert, spec);
  Certificate back = certificate_from_json(j, spec);
  CHECK(back.degree == cert.degree);
  CHECK(back.slots.size() == cert.slots.size());
  CHECK(verify_certificate(spec, back, true).ok);
}

TEST_CASE("basis_count reference values") {
  CHECK(basis_count(5, 2) == 21);
  CHECK(basis_count(9, 2) == 55);
  CHECK(basis_count(9, 4) == 715);
  CHECK(basis_count(4, 4) == 70);
  CHECK(basis_count(3, 4) == 35);
  CHECK(basis_count(1, 7) == 8);
  CHECK_THROWS(basis_count(0, 2));
}

TEST_CASE("size table rows for the chain benchmark") {
  Cover cover = rosenbrock_cover(4);
  SizeReport split = template_sizes(TemplateShape::Split, 4, 2, 8, cover);
  CHECK(split.gram_nonsparse == 7850);
  CHECK(split.gram_semisparse == 6122);
  CHECK(split.gram_fullysparse == 2718);
  CHECK(split.mono_nonsparse == 1990);
  CHECK(split.mono_semisparse == 1470);
  CHECK(split.mono_fullysparse == 796);
  CHECK(size_report_row(split) == "7850 6122 2718 / 1990 1470 796");

  SizeReport merged = template_sizes(TemplateShape::Merged, 4, 2, 8, cover);
  CHECK(merged.gram_nonsparse == 4825);
  CHECK(merged.gram_semisparse == 3097);
  CHECK(merged.gram_fullysparse == 1395);
  CHECK(merged.mono_nonsparse == 1275);
  CHECK(merged.mono_semisparse == 755);
  CHECK(merged.mono_fullysparse == 418);

  SizeReport no_cover = template_sizes(TemplateShape::Split, 4, 2, 8);
  CHECK(no_cover.gram_fullysparse == -1);
  CHECK(size_report_row(no_cover) == "7850 6122 - / 1990 1470 -");
}

TEST_CASE("size formulas agree with the instantiated template") {
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  for (int d = 0; d <= 2; ++d) {
    CertificateTemplate tmpl = build_template(spec, d);
    long long gram = 0, mono = 0;
    for (const auto& slot : tmpl.slots) {
      gram += basis_count(slot.arity, d) * basis_count(slot.arity, d);
      mono += slot.role == SlotRole::Rho ? 1 + 2 * d : basis_count(slot.arity, 2 * d);
    }
    SizeReport rep = template_sizes(TemplateShape::Split, spec.n, d,
                                    static_cast<int>(spec.constraints.size()),
                                    spec.geometry.cover);
    CHECK(rep.gram_fullysparse == gram);
    CHECK(rep.mono_fullysparse == mono);
  }
}

TEST_CASE("sparser columns never cost more") {
  for (int n : {2, 4, 6}) {
    Cover cover = rosenbrock_cover(n);
    for (int d = 0; d <= 3; ++d) {
      SizeReport rep = template_sizes(TemplateShape::Split, n, d, 2 * n, cover);
      CHECK(rep.gram_semisparse <= rep.gram_nonsparse);
      CHECK(rep.mono_semisparse <= rep.mono_nonsparse);
      // clique-local alphas win once the degree is nontrivial; at d <= 1 the
      // extra per-clique slots can cost more than the single global pair
      if (d >= 2) {
        CHECK(rep.gram_fullysparse <= rep.gram_semisparse);
        CHECK(rep.mono_fullysparse <= rep.mono_semisparse);
      }
    }
  }
}
