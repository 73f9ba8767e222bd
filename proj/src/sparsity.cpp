#include "certkit/sparsity.hpp"

#include <algorithm>
#include <set>

namespace certkit {

namespace {

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<int> intersect(const std::set<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  for (int v : b)
    if (a.count(v)) out.push_back(v);
  return out;
}

}  // namespace

bool check_rip(const std::vector<std::vector<int>>& cliques) {
  std::set<int> seen;
  for (size_t l = 0; l < cliques.size(); ++l) {
    if (l > 0) {
      std::vector<int> inter = intersect(seen, cliques[l]);
      bool covered = false;
      for (size_t j = 0; j < l && !covered; ++j) covered = subset(inter, cliques[j]);
      if (!covered) return false;
    }
    seen.insert(cliques[l].begin(), cliques[l].end());
  }
  return true;
}

namespace {

bool rip_dfs(const std::vector<std::vector<int>>& sets, std::vector<int>& order,
             std::vector<bool>& used, std::set<int>& seen) {
  size_t k = sets.size();
  if (order.size() == k) return true;
  for (size_t c = 0; c < k; ++c) {
    if (used[c]) continue;
    std::vector<int> inter = intersect(seen, sets[c]);
    bool ok = order.empty();
    for (int j : order)
      if (subset(inter, sets[j])) {
        ok = true;
        break;
      }
    if (order.empty()) ok = true;
    if (!ok) continue;
    used[c] = true;
    order.push_back(static_cast<int>(c));
    std::vector<int> added;
    for (int v : sets[c])
      if (seen.insert(v).second) added.push_back(v);
    if (rip_dfs(sets, order, used, seen)) return true;
    for (int v : added) seen.erase(v);
    order.pop_back();
    used[c] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_rip_order(const std::vector<std::vector<int>>& sets) {
  if (sets.size() > 12) throw std::invalid_argument("find_rip_order: too many sets");
  std::vector<int> order;
  std::vector<bool> used(sets.size(), false);
  std::set<int> seen;
  if (rip_dfs(sets, order, used, seen)) return order;
  return std::nullopt;
}

bool check_i_sparse(const Poly& p, const std::vector<std::vector<int>>& cliques) {
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> supp;
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) supp.push_back(static_cast<int>(i));
    bool fits = supp.empty();
    for (const auto& cl : cliques)
      if (subset(supp, cl)) {
        fits = true;
        break;
      }
    if (!fits) return false;
  }
  return true;
}

namespace {

// Bron-Kerbosch with pivoting over adjacency bitmasks (n <= 63 here).
void bron_kerbosch(uint64_t R, uint64_t P, uint64_t X, const std::vector<uint64_t>& adj,
                   std::vector<uint64_t>& out) {
  if (P == 0 && X == 0) {
    out.push_back(R);
    return;
  }
  uint64_t PX = P | X;
  int pivot = __builtin_ctzll(PX);
  uint64_t best = P & ~adj[pivot];
  for (uint64_t cand = PX; cand;) {
    int u = __builtin_ctzll(cand);
    cand &= cand - 1;
    uint64_t ext = P & ~adj[u];
    if (__builtin_popcountll(ext) < __builtin_popcountll(best)) best = ext;
  }
  while (best) {
    int v = __builtin_ctzll(best);
    best &= best - 1;
    uint64_t bit = 1ull << v;
    bron_kerbosch(R | bit, P & adj[v], X & adj[v], adj, out);
    P &= ~bit;
    X |= bit;
  }
}

std::vector<int> mask_to_vec(uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(__builtin_ctzll(mask));
    mask &= mask - 1;
  }
  return out;
}

uint64_t support_mask(const Poly& q) {
  uint64_t m = 0;
  for (int v : q.support()) m |= 1ull << v;
  return m;
}

}  // namespace

Cover build_cover(const Poly& p, const std::vector<Poly>& gs) {
  int n = p.nvars();
  if (n > 63) throw std::invalid_argument("build_cover: too many variables");

  // correlative sparsity graph: variables adjacent iff they co-occur in a
  // monomial of p or of some g_j (a whole g_j counts as one co-occurrence
  // group, since Thm-style templates need g_j inside one clique)
  std::vector<uint64_t> adj(n, 0);
  auto connect = [&](uint64_t group) {
    for (uint64_t a = group; a;) {
      int i = __builtin_ctzll(a);
      a &= a - 1;
      adj[i] |= group & ~(1ull << i);
    }
  };
  for (const auto& [e, c] : p.terms()) {
    uint64_t m = 0;
    for (int i = 0; i < n; ++i)
      if (e[i] > 0) m |= 1ull << i;
    connect(m);
  }
  for (const auto& g : gs) connect(support_mask(g));

  uint64_t full = n == 0 ? 0 : (n >= 64 ? ~0ull : (1ull << n) - 1);
  std::vector<uint64_t> cliques_m;
  bron_kerbosch(0, full, 0, adj, cliques_m);

  // merge until every constraint support fits one clique (maximal cliques of
  // the group graph already contain it, but merging keeps this robust)
  for (const auto& g : gs) {
    uint64_t supp = support_mask(g);
    bool fits = false;
    for (uint64_t cm : cliques_m)
      if ((supp & ~cm) == 0) fits = true;
    if (fits) continue;
    uint64_t merged = supp;
    std::vector<uint64_t> next;
    for (uint64_t cm : cliques_m) {
      if (cm & supp)
        merged |= cm;
      else
        next.push_back(cm);
    }
    next.push_back(merged);
    cliques_m = std::move(next);
  }
  // drop cliques subsumed after merging
  std::vector<uint64_t> pruned;
  for (size_t i = 0; i < cliques_m.size(); ++i) {
    bool sub = false;
    for (size_t j = 0; j < cliques_m.size() && !sub; ++j)
      sub = i != j && (cliques_m[i] & ~cliques_m[j]) == 0 &&
            (cliques_m[i] != cliques_m[j] || i > j);
    if (!sub) pruned.push_back(cliques_m[i]);
  }
  cliques_m = std::move(pruned);

  std::vector<std::vector<int>> sets;
  for (uint64_t cm : cliques_m) sets.push_back(mask_to_vec(cm));
  std::sort(sets.begin(), sets.end());

  Cover cover;
  std::optional<std::vector<int>> order =
      sets.size() <= 12 ? find_rip_order(sets) : std::nullopt;
  if (order && check_i_sparse(p, sets)) {
    for (int idx : *order) cover.cliques.push_back(sets[idx]);
  } else {
    cover.cliques.push_back(mask_to_vec(full));  // single full clique fallback
  }

  cover.radii.assign(cover.cliques.size(), Scalar(1));
  for (const auto& g : gs) {
    std::vector<int> supp = mask_to_vec(support_mask(g));
    int where = -1;
    for (int l = 0; l < cover.k() && where < 0; ++l)
      if (subset(supp, cover.cliques[l])) where = l;
    cover.assign.push_back(where);
  }
  return cover;
}

}  // namespace certkit
