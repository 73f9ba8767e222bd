#pragma once

#include <optional>
#include <vector>

#include "certkit/poly.hpp"

namespace certkit {

/// Ordered k-cover of the variable indices (0-based internally; problem files
/// use 1-based). radii holds one ball radius per clique; assign maps each
/// constraint to the clique containing its support.
struct Cover {
  std::vector<std::vector<int>> cliques;  // each sorted ascending
  std::vector<Scalar> radii;
  std::vector<int> assign;

  int k() const { return static_cast<int>(cliques.size()); }
};

/// Running intersection property for the given ordering: for every l,
/// (I_1 ∪ ... ∪ I_l) ∩ I_{l+1} is contained in some I_j with j <= l.
bool check_rip(const std::vector<std::vector<int>>& cliques);

/// A permutation of the sets under which check_rip holds, found by DFS with
/// pruning (k <= 12), or nullopt when no ordering works.
std::optional<std::vector<int>> find_rip_order(const std::vector<std::vector<int>>& sets);

/// True iff every monomial's support lies inside a single clique.
bool check_i_sparse(const Poly& p, const std::vector<std::vector<int>>& cliques);

/// Correlative-sparsity cover: maximal cliques of the variable co-occurrence
/// graph, merged until every constraint support fits one clique, ordered for
/// RIP. Falls back to the single full clique when no RIP order exists.
/// Radii default to 1; assign is filled for every constraint.
Cover build_cover(const Poly& p, const std::vector<Poly>& gs);

}  // namespace certkit
