#pragma once

#include <optional>
#include <string>
#include <vector>

#include "certkit/cones.hpp"
#include "certkit/sparsity.hpp"

namespace certkit {

/// Certificate shape. Split and Merged are the two real templates; Simple is
/// the plain quadratic-module form (no composed arguments), kept behind an
/// explicit flag as a negative control.
enum class Shape { Split, Merged, Simple };

Shape shape_from_string(const std::string& name);
std::string shape_to_string(Shape s);

struct Geometry {
  bool sparse = false;
  Scalar r;     // ball radius when !sparse
  Cover cover;  // when sparse
};

struct ConstraintSpec {
  Poly g;
  std::optional<Scalar> U;  // nullopt: auto via the ball bound
};

struct ProblemSpec {
  int n = 0;
  Poly p;
  std::vector<ConstraintSpec> constraints;
  Geometry geometry;
  ConeClass cone = ConeClass::Soms;
  Shape shape = Shape::Split;
  int d_max = 2;

  void validate() const;  // cover invariants, supports, cone/shape pairing
  /// Resolved U_j: the explicit value, or an exact rational upper bound of
  /// the ball bound.
  Scalar resolved_u(int j) const;
};

enum class SlotRole { Alpha0, Alpha1, Alpha, Rho };

std::string slot_role_to_string(SlotRole r);
SlotRole slot_role_from_string(const std::string& name);

/// One unknown polynomial of the template: q(args) * multiplier, with q of
/// degree <= max_deg in `arity` variables drawn from the slot's cone.
struct Slot {
  SlotRole role;
  int clique = -1;      // alpha slots on a sparse geometry
  int constraint = -1;  // rho slots
  int arity = 0;
  int max_deg = 0;
  std::vector<Poly> args;  // composed arguments, in the x ring
  Poly multiplier;         // in the x ring
};

struct CertificateTemplate {
  std::vector<Slot> slots;
  int d = 0;
};

struct CertSlot {
  SlotRole role;
  int clique = -1;
  int constraint = -1;
  Poly poly;  // in the slot's own (y, z, u) variables
  Witness witness;
};

struct Certificate {
  Geometry geometry;
  Shape shape = Shape::Split;
  ConeClass cone = ConeClass::Soms;
  int degree = 0;
  std::string provenance = "found";  // found | supplied
  bool approximate = false;
  std::vector<CertSlot> slots;
};

/// Outcome of one degree level of the search.
struct DegreeOutcome {
  int d;
  DecideStatus status;  // Infeasible is exact, NotFound numeric
  std::string note;
};

struct SearchReport {
  std::optional<Certificate> certificate;
  std::vector<DegreeOutcome> outcomes;
};

/// Slots for the given spec at degree parameter d (each slot degree 2d).
CertificateTemplate build_template(const ProblemSpec& spec, int d);

/// Coefficient-matching conic problem for the template under the given cone.
/// Exposes the column layout so solutions map back to slot polynomials.
struct SlotColumns {
  // SOMS: one nonneg column per even monomial (exps aligned with cols).
  // DSOS: diag slack cols then (p, n) pair cols over `basis`.
  // SDSOS: diag slack cols then rsoc triples over `basis`.
  std::vector<Exponents> exps;        // SOMS layout
  std::vector<Exponents> basis;       // Gram layouts
  int diag_start = -1, pair_start = -1;
};

struct Assembly {
  ConicProblem problem;
  std::vector<SlotColumns> columns;  // aligned with template slots
  bool structurally_infeasible = false;
  std::string structural_note;
};

Assembly assemble(const CertificateTemplate& tmpl, const ProblemSpec& spec, ConeClass cone);

struct SearchOptions {
  // above this many LP variables the exact DD pre-pass inside the SDSOS
  // search is skipped (SOCP only)
  int dd_prepass_var_limit = 800;
  SocpOptions socp;
  bool try_rationalize = true;
};

/// Degree escalation d = 0..d_max; first feasible level wins.
SearchReport search(const ProblemSpec& spec, const SearchOptions& opts = {});

/// Exact-witness recovery from a float certificate: round Gram entries to
/// small rationals, re-solve the diagonal-slack correction LP exactly.
/// Returns nullopt when the correction fails; the input stays valid.
std::optional<Certificate> rationalize(const Certificate& cert, const ProblemSpec& spec);

}  // namespace certkit
