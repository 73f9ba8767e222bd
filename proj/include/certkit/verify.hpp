#pragma once

#include "certkit/builder.hpp"

namespace certkit {

struct SlotResult {
  SlotRole role;
  int clique = -1;
  int constraint = -1;
  bool ok = false;
  std::string detail;  // "unchecked" style notes included here
};

struct VerifyReport {
  bool ok = false;
  bool identity_ok = false;
  bool witnesses_ok = false;
  Poly residual;
  std::vector<SlotResult> slot_results;
  bool exact_mode = true;
  double tolerance = 0.0;
  std::string error;  // structural problems (slot mismatch, ring mismatch)
};

/// Independent re-expansion: substitutes each slot polynomial into the
/// template arguments recomputed from the spec (a separate code path from the
/// builder's column assembly), multiplies, sums, and subtracts p. Witnesses
/// are re-checked against the slot polynomials. exact mode demands a zero
/// residual; float mode allows per-coefficient residual up to tol.
VerifyReport verify_certificate(const ProblemSpec& spec, const Certificate& cert,
                                bool exact_mode, double tol = 1e-8);

/// Max |lhs - rhs| over the sample points; cheap numeric pre-filter.
double spot_check(const ProblemSpec& spec, const Certificate& cert,
                  const std::vector<std::vector<double>>& points);

}  // namespace certkit
