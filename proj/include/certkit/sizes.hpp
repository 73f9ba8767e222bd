#pragma once

#include <optional>
#include <string>

#include "certkit/sparsity.hpp"

namespace certkit {

enum class TemplateShape { Split, Merged };

/// Template sizes for all three sparsity columns at once: total Gram-matrix
/// entries and total distinct monomial counts, from basis sizes
/// B(v, D) = C(v + D, v).
struct SizeReport {
  TemplateShape shape;
  int n, d, m;
  long long gram_nonsparse, gram_semisparse, gram_fullysparse;
  long long mono_nonsparse, mono_semisparse, mono_fullysparse;
};

long long basis_count(int v, int D);

/// cover is required for the fully-sparse column; omit it to get -1 there.
SizeReport template_sizes(TemplateShape shape, int n, int d, int m,
                          const std::optional<Cover>& cover = std::nullopt);

/// Chain cover with cliques {i, i+1}, k = n-1; the classic box-constrained
/// Rosenbrock setup has m = 2n constraints, one pair per variable.
Cover rosenbrock_cover(int n);

std::string size_report_row(const SizeReport& rep);

}  // namespace certkit
