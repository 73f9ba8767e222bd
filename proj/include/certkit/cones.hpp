#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "certkit/poly.hpp"
#include "certkit/solver.hpp"

namespace certkit {

enum class ConeClass { Soms, Dsos, Sdsos, SosExternal, SoncVerifyOnly, SageUnsupported };

ConeClass cone_class_from_string(const std::string& name);
std::string cone_class_to_string(ConeClass c);

/// p = sum of weight * x^(even exponent); weights >= 0.
struct SomsWitness {
  std::vector<std::pair<Exponents, Scalar>> terms;
};

/// One PSD 2x2 contribution: d_i z_i^2 + d_j z_j^2 + 2 t z_i z_j.
/// i == j is allowed and contributes (d_i + d_j + 2t) z_i^2.
struct SddBlock {
  int i, j;
  Scalar d_i, d_j, t;
};

struct GramWitness {
  enum class Flavor { DD, SDD };
  Flavor flavor = Flavor::DD;
  std::vector<Exponents> basis;         // ordered monomial basis z
  std::vector<std::vector<Scalar>> Q;   // symmetric, basis-sized
  std::vector<SddBlock> blocks;         // SDD only; must sum to Q
  bool approximate = false;             // true when Q came from the numeric path
};

/// SONC extension: one circuit = simplex vertices with positive coefficients
/// plus an inner term; lambda are the barycentric weights of beta.
struct Circuit {
  std::vector<std::pair<Exponents, Scalar>> vertices;  // even exponents, c_alpha > 0
  Exponents beta;
  Scalar inner_coeff;
  std::vector<Rat> lambda;
};

struct CircuitWitness {
  std::vector<Circuit> circuits;
};

using Witness = std::variant<SomsWitness, GramWitness, CircuitWitness>;

enum class DecideStatus { Found, Infeasible, NotFound, NonConverged, Unsupported };

struct DecideResult {
  DecideStatus status = DecideStatus::NotFound;
  std::optional<GramWitness> gram;
  Scalar infeasibility_witness;  // exact LP path only
};

/// All monomials in nvars variables of total degree <= max_deg, grlex order.
std::vector<Exponents> monomials_up_to(int nvars, int max_deg);

/// Monomials of total degree <= ceil(deg(p)/2) over p's ring, grlex order.
std::vector<Exponents> default_gram_basis(const Poly& p);

/// Present iff every monomial of p has all-even exponents and a nonnegative
/// coefficient; exact and total.
std::optional<SomsWitness> soms_check(const Poly& p);

/// Exact rational LP: either a diagonally dominant Gram matrix over the basis,
/// or a proof of DD-infeasibility. Throws if p has a monomial outside the
/// basis products.
DecideResult dsos_decide(const Poly& p, const std::vector<Exponents>& basis);

struct SdsosOptions {
  bool dd_prepass = true;  // DD implies SDD, and the DD answer is exact
  SocpOptions socp;
};

/// SDD Gram search. With the DD pre-pass an exact certificate is returned
/// when one exists in DD form; otherwise the numeric SOCP decides, reporting
/// NotFound (not Infeasible: the answer is numeric) or NonConverged.
DecideResult sdsos_decide(const Poly& p, const std::vector<Exponents>& basis,
                          const SdsosOptions& opts = {});

struct WitnessReport {
  bool ok = false;
  Poly residual;       // reconstruction minus p
  std::string detail;  // first failed side condition, empty when ok
};

/// Re-checks reconstruction and all cone side conditions. tol == 0 demands an
/// exact match; tol > 0 allows per-coefficient residual up to tol (float mode).
WitnessReport verify_witness(const Poly& p, const Witness& w, double tol = 0.0);

}  // namespace certkit
