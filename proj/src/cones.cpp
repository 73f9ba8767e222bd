#include "certkit/cones.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace certkit {

ConeClass cone_class_from_string(const std::string& name) {
  if (name == "soms") return ConeClass::Soms;
  if (name == "dsos") return ConeClass::Dsos;
  if (name == "sdsos") return ConeClass::Sdsos;
  if (name == "sos-external") return ConeClass::SosExternal;
  if (name == "sonc") return ConeClass::SoncVerifyOnly;
  if (name == "sage") return ConeClass::SageUnsupported;
  throw std::invalid_argument("unknown cone class '" + name + "'");
}

std::string cone_class_to_string(ConeClass c) {
  switch (c) {
    case ConeClass::Soms: return "soms";
    case ConeClass::Dsos: return "dsos";
    case ConeClass::Sdsos: return "sdsos";
    case ConeClass::SosExternal: return "sos-external";
    case ConeClass::SoncVerifyOnly: return "sonc";
    case ConeClass::SageUnsupported: return "sage";
  }
  throw std::logic_error("bad cone class");
}

namespace {

void enumerate_rec(int nvars, int pos, int remaining, Exponents& cur,
                   std::vector<Exponents>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    enumerate_rec(nvars, pos + 1, remaining - k, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Exponents> monomials_up_to(int nvars, int max_deg) {
  std::vector<Exponents> out;
  Exponents cur(nvars, 0);
  enumerate_rec(nvars, 0, max_deg, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

std::vector<Exponents> default_gram_basis(const Poly& p) {
  return monomials_up_to(p.nvars(), (p.degree() + 1) / 2);
}

std::optional<SomsWitness> soms_check(const Poly& p) {
  SomsWitness w;
  for (const auto& [e, c] : p.terms()) {
    for (int k : e)
      if (k % 2 != 0) return std::nullopt;
    if (c.sign() < 0) return std::nullopt;
    w.terms.emplace_back(e, c);
  }
  return w;
}

namespace {

struct ProductSpan {
  std::map<Exponents, int, GrlexLess> row_of;  // product exponent -> row index

  ProductSpan(const std::vector<Exponents>& basis, const Poly& p) {
    int n = static_cast<int>(basis.size());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Exponents e(basis[i].size());
        for (size_t k = 0; k < e.size(); ++k) e[k] = basis[i][k] + basis[j][k];
        row_of.emplace(std::move(e), 0);
      }
    for (const auto& [e, c] : p.terms())
      if (!row_of.count(e))
        throw std::invalid_argument("basis too small: monomial outside basis products");
    int idx = 0;
    for (auto& [e, r] : row_of) r = idx++;
  }

  int rows() const { return static_cast<int>(row_of.size()); }
};

std::vector<Scalar> rhs_from_poly(const ProductSpan& span, const Poly& p) {
  std::vector<Scalar> rhs(span.rows(), Scalar(0));
  for (const auto& [e, c] : p.terms()) rhs[span.row_of.at(e)] = c;
  return rhs;
}

// DD matrices are SDD: one block per off-diagonal entry plus diagonal remainder.
void dd_to_sdd_blocks(GramWitness& w) {
  int n = static_cast<int>(w.basis.size());
  w.blocks.clear();
  std::vector<Scalar> remainder(n);
  for (int i = 0; i < n; ++i) remainder[i] = w.Q[i][i];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (w.Q[i][j].is_zero()) continue;
      Scalar mag = w.Q[i][j].abs();
      w.blocks.push_back({i, j, mag, mag, w.Q[i][j]});
      remainder[i] -= mag;
      remainder[j] -= mag;
    }
  for (int i = 0; i < n; ++i) {
    if (remainder[i].is_zero()) continue;
    Scalar half = remainder[i] / Scalar(2);
    w.blocks.push_back({i, i, half, half, Scalar(0)});
  }
  w.flavor = GramWitness::Flavor::SDD;
}

}  // namespace

DecideResult dsos_decide(const Poly& p, const std::vector<Exponents>& basis) {
  int n = static_cast<int>(basis.size());
  ProductSpan span(basis, p);

  // Variables: diagonal slacks s_i, then (p_ij, n_ij) per pair i<j, all >= 0.
  // Q_ii = s_i + sum_j (p_ij + n_ij), Q_ij = p_ij - n_ij; DD holds by
  // construction and every DD matrix is reachable.
  ConicProblem prob;
  int s0 = prob.add_block(ConeTag::Nonneg, n);
  int npairs = n * (n - 1) / 2;
  int pair0 = npairs > 0 ? prob.add_block(ConeTag::Nonneg, 2 * npairs) : 0;

  std::vector<std::vector<ConicProblem::Entry>> rows(span.rows());
  auto diag_row = [&](int i) {
    Exponents e(basis[i].size());
    for (size_t k = 0; k < e.size(); ++k) e[k] = 2 * basis[i][k];
    return span.row_of.at(e);
  };
  for (int i = 0; i < n; ++i) rows[diag_row(i)].push_back({s0 + i, Scalar(1)});
  int pair = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++pair) {
      int pc = pair0 + 2 * pair, nc = pc + 1;
      Exponents e(basis[i].size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = basis[i][k] + basis[j][k];
      int rij = span.row_of.at(e);
      rows[rij].push_back({pc, Scalar(2)});
      rows[rij].push_back({nc, Scalar(-2)});
      rows[diag_row(i)].push_back({pc, Scalar(1)});
      rows[diag_row(i)].push_back({nc, Scalar(1)});
      rows[diag_row(j)].push_back({pc, Scalar(1)});
      rows[diag_row(j)].push_back({nc, Scalar(1)});
    }
  auto rhs = rhs_from_poly(span, p);
  for (int r = 0; r < span.rows(); ++r) prob.add_row(std::move(rows[r]), rhs[r]);

  auto out = solve_lp(prob);
  DecideResult res;
  if (out.status == SolveStatus::Infeasible) {
    res.status = DecideStatus::Infeasible;
    res.infeasibility_witness = out.infeasibility_witness;
    return res;
  }

  GramWitness w;
  w.flavor = GramWitness::Flavor::DD;
  w.basis = basis;
  w.Q.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) w.Q[i][i] = out.solution[s0 + i];
  pair = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++pair) {
      Scalar pv = out.solution[pair0 + 2 * pair];
      Scalar nv = out.solution[pair0 + 2 * pair + 1];
      w.Q[i][j] = w.Q[j][i] = pv - nv;
      w.Q[i][i] += pv + nv;
      w.Q[j][j] += pv + nv;
    }
  res.status = DecideStatus::Found;
  res.gram = std::move(w);
  return res;
}

DecideResult sdsos_decide(const Poly& p, const std::vector<Exponents>& basis,
                          const SdsosOptions& opts) {
  int n = static_cast<int>(basis.size());
  ProductSpan span(basis, p);

  if (opts.dd_prepass) {
    auto dd = dsos_decide(p, basis);
    if (dd.status == DecideStatus::Found) {
      dd_to_sdd_blocks(*dd.gram);
      return dd;
    }
    // DD-infeasible says nothing about SDD; fall through to the SOCP.
  }

  if (n == 1) {  // Q is the 1x1 matrix [c]
    Scalar c = p.is_zero() ? Scalar(0) : p.terms().begin()->second;
    DecideResult res;
    if (c.sign() < 0) {
      res.status = DecideStatus::NotFound;
      return res;
    }
    GramWitness w;
    w.flavor = GramWitness::Flavor::SDD;
    w.basis = basis;
    w.Q = {{c}};
    Scalar half = c / Scalar(2);
    if (!c.is_zero()) w.blocks.push_back({0, 0, half, half, Scalar(0)});
    res.status = DecideStatus::Found;
    res.gram = std::move(w);
    return res;
  }

  ConicProblem prob;
  int s0 = prob.add_block(ConeTag::Nonneg, n);
  int npairs = n * (n - 1) / 2;
  std::vector<int> pair_start(npairs);
  for (int k = 0; k < npairs; ++k) pair_start[k] = prob.add_block(ConeTag::RsocTriple, 3);

  std::vector<std::vector<ConicProblem::Entry>> rows(span.rows());
  auto diag_row = [&](int i) {
    Exponents e(basis[i].size());
    for (size_t k = 0; k < e.size(); ++k) e[k] = 2 * basis[i][k];
    return span.row_of.at(e);
  };
  for (int i = 0; i < n; ++i) rows[diag_row(i)].push_back({s0 + i, Scalar(1)});
  int pair = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++pair) {
      int blk = pair_start[pair];
      Exponents e(basis[i].size());
      for (size_t k = 0; k < e.size(); ++k) e[k] = basis[i][k] + basis[j][k];
      rows[span.row_of.at(e)].push_back({blk + 2, Scalar(2)});
      rows[diag_row(i)].push_back({blk, Scalar(1)});
      rows[diag_row(j)].push_back({blk + 1, Scalar(1)});
    }
  auto rhs = rhs_from_poly(span, p);
  for (int r = 0; r < span.rows(); ++r) prob.add_row(std::move(rows[r]), rhs[r]);

  auto out = solve_socp(prob, opts.socp);
  DecideResult res;
  if (out.status == SolveStatus::NotFound) {
    res.status = DecideStatus::NotFound;
    return res;
  }
  if (out.status != SolveStatus::Feasible) {
    res.status = DecideStatus::NonConverged;
    return res;
  }

  GramWitness w;
  w.flavor = GramWitness::Flavor::SDD;
  w.basis = basis;
  w.approximate = true;
  w.Q.assign(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) {
    double s = std::max(0.0, out.solution_f[s0 + i]);
    if (s != 0.0) {
      Scalar half(Rat(s / 2.0));
      w.blocks.push_back({i, i, half, half, Scalar(0)});
    }
  }
  pair = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++pair) {
      int blk = pair_start[pair];
      double di = std::max(0.0, out.solution_f[blk]);
      double dj = std::max(0.0, out.solution_f[blk + 1]);
      double t = out.solution_f[blk + 2];
      // keep each stored block exactly PSD: pull t inside the boundary
      double cap = std::sqrt(di * dj) * (1.0 - 1e-12);
      if (std::fabs(t) > cap) t = (t < 0 ? -cap : cap);
      if (di == 0.0 && dj == 0.0) continue;
      w.blocks.push_back({i, j, Scalar(Rat(di)), Scalar(Rat(dj)), Scalar(Rat(t))});
    }
  for (const auto& blk : w.blocks) {
    w.Q[blk.i][blk.i] += blk.d_i;
    w.Q[blk.j][blk.j] += blk.d_j;
    if (blk.i == blk.j) {
      w.Q[blk.i][blk.i] += blk.t + blk.t;
    } else {
      w.Q[blk.i][blk.j] += blk.t;
      w.Q[blk.j][blk.i] += blk.t;
    }
  }
  res.status = DecideStatus::Found;
  res.gram = std::move(w);
  return res;
}

namespace {

Poly gram_reconstruction(const GramWitness& w, int nvars) {
  Poly out(nvars);
  int n = static_cast<int>(w.basis.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (w.Q[i][j].is_zero()) continue;
      Exponents e(nvars);
      for (int k = 0; k < nvars; ++k) e[k] = w.basis[i][k] + w.basis[j][k];
      out.add_term(std::move(e), w.Q[i][j]);
    }
  return out;
}

bool residual_ok(const Poly& residual, double tol) {
  if (tol == 0.0) return residual.is_zero();
  for (const auto& [e, c] : residual.terms())
    if (std::fabs(c.to_double()) > tol) return false;
  return true;
}

// Exact rank of the integer matrix rows over Q (Gaussian elimination).
int rat_rank(std::vector<std::vector<Rat>> m) {
  int rank = 0;
  size_t rows = m.size();
  if (rows == 0) return 0;
  size_t cols = m[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

WitnessReport verify_soms(const Poly& p, const SomsWitness& w, double tol) {
  WitnessReport rep;
  Poly recon(p.nvars());
  for (const auto& [e, weight] : w.terms) {
    for (int k : e)
      if (k % 2 != 0) {
        rep.detail = "odd exponent in soms witness";
        return rep;
      }
    if (weight.sign() < 0) {
      rep.detail = "negative soms weight";
      return rep;
    }
    recon.add_term(e, weight);
  }
  rep.residual = recon - p;
  rep.ok = residual_ok(rep.residual, tol);
  if (!rep.ok && rep.detail.empty()) rep.detail = "reconstruction mismatch";
  return rep;
}

WitnessReport verify_gram(const Poly& p, const GramWitness& w, double tol) {
  WitnessReport rep;
  int n = static_cast<int>(w.basis.size());
  if (static_cast<int>(w.Q.size()) != n) {
    rep.detail = "Gram size mismatch";
    return rep;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(w.Q[i].size()) != n) {
      rep.detail = "Gram size mismatch";
      return rep;
    }
    for (int j = 0; j < i; ++j)
      if (w.Q[i][j] != w.Q[j][i]) {
        rep.detail = "Gram not symmetric";
        return rep;
      }
  }

  if (w.flavor == GramWitness::Flavor::DD) {
    for (int i = 0; i < n; ++i) {
      Scalar slack = w.Q[i][i];
      for (int j = 0; j < n; ++j)
        if (j != i) slack -= w.Q[i][j].abs();
      if (slack.sign() < 0) {
        rep.detail = "row " + std::to_string(i) + " violates diagonal dominance";
        return rep;
      }
    }
  } else {
    std::vector<std::vector<Scalar>> sum(n, std::vector<Scalar>(n, Scalar(0)));
    for (const auto& blk : w.blocks) {
      if (blk.i < 0 || blk.j < 0 || blk.i >= n || blk.j >= n) {
        rep.detail = "block index out of range";
        return rep;
      }
      if (blk.d_i.sign() < 0 || blk.d_j.sign() < 0 ||
          (blk.d_i * blk.d_j - blk.t * blk.t).sign() < 0) {
        rep.detail = "sdd block not positive semidefinite";
        return rep;
      }
      sum[blk.i][blk.i] += blk.d_i;
      sum[blk.j][blk.j] += blk.d_j;
      if (blk.i == blk.j) {
        sum[blk.i][blk.i] += blk.t + blk.t;
      } else {
        sum[blk.i][blk.j] += blk.t;
        sum[blk.j][blk.i] += blk.t;
      }
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sum[i][j] != w.Q[i][j]) {
          rep.detail = "sdd blocks do not sum to Q";
          return rep;
        }
  }

  rep.residual = gram_reconstruction(w, p.nvars()) - p;
  rep.ok = residual_ok(rep.residual, tol);
  if (!rep.ok) rep.detail = "reconstruction mismatch";
  return rep;
}

WitnessReport verify_circuits(const Poly& p, const CircuitWitness& w, double tol) {
  WitnessReport rep;
  Poly recon(p.nvars());
  for (size_t ci = 0; ci < w.circuits.size(); ++ci) {
    const auto& c = w.circuits[ci];
    std::string where = "circuit " + std::to_string(ci) + ": ";
    size_t m = c.vertices.size();
    if (c.lambda.size() != m || m == 0) {
      rep.detail = where + "lambda arity mismatch";
      return rep;
    }
    Rat lam_sum = 0;
    for (const auto& l : c.lambda) {
      if (l < 0) {
        rep.detail = where + "negative barycentric weight";
        return rep;
      }
      lam_sum += l;
    }
    if (lam_sum != 1) {
      rep.detail = where + "barycentric weights do not sum to 1";
      return rep;
    }
    for (const auto& [e, coeff] : c.vertices) {
      for (int k : e)
        if (k % 2 != 0) {
          rep.detail = where + "odd vertex exponent";
          return rep;
        }
      if (coeff.sign() <= 0) {
        rep.detail = where + "vertex coefficient not positive";
        return rep;
      }
    }
    for (int k = 0; k < p.nvars(); ++k) {
      Rat acc = 0;
      for (size_t v = 0; v < m; ++v) acc += c.lambda[v] * c.vertices[v].first[k];
      if (acc != c.beta[k]) {
        rep.detail = where + "beta is not the barycentric combination";
        return rep;
      }
    }
    // affine independence of the vertex set
    if (m > 1) {
      std::vector<std::vector<Rat>> diff(m - 1, std::vector<Rat>(p.nvars()));
      for (size_t v = 1; v < m; ++v)
        for (int k = 0; k < p.nvars(); ++k)
          diff[v - 1][k] = Rat(c.vertices[v].first[k]) - Rat(c.vertices[0].first[k]);
      if (rat_rank(diff) != static_cast<int>(m) - 1) {
        rep.detail = where + "vertices not affinely independent";
        return rep;
      }
    }
    // circuit number Theta = prod (c_a / lambda_a)^lambda_a, checked in floats
    double log_theta = 0.0;
    for (size_t v = 0; v < m; ++v) {
      double l = static_cast<double>(c.lambda[v]);
      if (l == 0.0) continue;
      log_theta += l * (std::log(c.vertices[v].second.to_double()) - std::log(l));
    }
    double theta = std::exp(log_theta);
    double delta = c.inner_coeff.to_double();
    bool beta_even = true;
    for (int k : c.beta)
      if (k % 2 != 0) beta_even = false;
    double slack = 1e-9 * (1.0 + theta);
    bool nonneg = beta_even ? delta >= -theta - slack : std::fabs(delta) <= theta + slack;
    if (!nonneg) {
      rep.detail = where + "circuit-number inequality fails";
      return rep;
    }
    for (const auto& [e, coeff] : c.vertices) recon.add_term(e, coeff);
    recon.add_term(c.beta, c.inner_coeff);
  }
  rep.residual = recon - p;
  rep.ok = residual_ok(rep.residual, tol);
  if (!rep.ok) rep.detail = "reconstruction mismatch";
  return rep;
}

}  // namespace

WitnessReport verify_witness(const Poly& p, const Witness& w, double tol) {
  return std::visit(
      [&](const auto& witness) -> WitnessReport {
        using T = std::decay_t<decltype(witness)>;
        if constexpr (std::is_same_v<T, SomsWitness>) return verify_soms(p, witness, tol);
        else if constexpr (std::is_same_v<T, GramWitness>) return verify_gram(p, witness, tol);
        else return verify_circuits(p, witness, tol);
      },
      w);
}

}  // namespace certkit
