#include "certkit/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>
#include <stdexcept>

namespace certkit {

int ConicProblem::add_block(ConeTag tag, int length) {
  if (tag == ConeTag::RsocTriple && length != 3) throw std::invalid_argument("rsoc block must have length 3");
  int start = nvars;
  blocks.push_back({start, length, tag});
  nvars += length;
  return start;
}

void ConicProblem::add_row(std::vector<Entry> row, Scalar b) {
  rows.push_back(std::move(row));
  rhs.push_back(std::move(b));
}

void ConicProblem::validate() const {
  std::vector<int> owner(nvars, -1);
  for (size_t k = 0; k < blocks.size(); ++k) {
    const auto& blk = blocks[k];
    if (blk.tag == ConeTag::RsocTriple && blk.length != 3)
      throw std::invalid_argument("rsoc block must have length 3");
    for (int i = blk.start; i < blk.start + blk.length; ++i) {
      if (i < 0 || i >= nvars || owner[i] != -1) throw std::invalid_argument("overlapping variable blocks");
      owner[i] = static_cast<int>(k);
    }
  }
  for (int i = 0; i < nvars; ++i)
    if (owner[i] == -1) throw std::invalid_argument("variable outside every block");
  if (rows.size() != rhs.size()) throw std::invalid_argument("row/rhs size mismatch");
}

// ---------------------------------------------------------------------------
// Exact simplex (Bland's rule), phase 1 + optional phase 2.
// ---------------------------------------------------------------------------

namespace {

struct Tableau {
  int m, n;  // rows, structural columns (artificials occupy n..n+m-1)
  std::vector<std::vector<Scalar>> t;  // (m+1) x (n+m+1); last row = reduced costs, last col = rhs
  std::vector<int> basis;

  int ncols() const { return n + m + 1; }
  int rhs_col() const { return n + m; }

  void pivot(int row, int col) {
    Scalar piv = t[row][col];
    for (int j = 0; j < ncols(); ++j) t[row][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      Scalar factor = t[i][col];
      if (factor.is_zero()) continue;
      for (int j = 0; j < ncols(); ++j) t[i][j] -= factor * t[row][j];
    }
    basis[row] = col;
  }

  // Bland: entering = smallest-index negative reduced cost; leaving = ratio
  // test with smallest basis index tie-break. Returns false on optimality,
  // throws on unboundedness.
  bool step(int col_limit) {
    int enter = -1;
    for (int j = 0; j < col_limit; ++j) {
      if (t[m][j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Scalar best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Scalar ratio = t[i][rhs_col()] / t[i][enter];
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("unbounded objective");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

SolveOutcome solve_lp(const ConicProblem& prob) {
  prob.validate();
  for (const auto& blk : prob.blocks)
    if (blk.tag == ConeTag::RsocTriple) throw std::invalid_argument("solve_lp: rsoc blocks not supported");

  // Map to standard form: free variables split into plus/minus parts.
  std::vector<int> col_of(prob.nvars);      // first standard column of each variable
  std::vector<bool> is_free(prob.nvars, false);
  int n = 0;
  for (const auto& blk : prob.blocks)
    for (int i = blk.start; i < blk.start + blk.length; ++i) {
      col_of[i] = n;
      is_free[i] = blk.tag == ConeTag::Free;
      n += is_free[i] ? 2 : 1;
    }

  int m = static_cast<int>(prob.rows.size());
  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.t.assign(m + 1, std::vector<Scalar>(n + m + 1, Scalar(0)));
  tab.basis.resize(m);

  for (int i = 0; i < m; ++i) {
    int flip = prob.rhs[i].sign() < 0 ? -1 : 1;
    for (const auto& entry : prob.rows[i]) {
      Scalar v = entry.value * Scalar(flip);
      tab.t[i][col_of[entry.col]] += v;
      if (is_free[entry.col]) tab.t[i][col_of[entry.col] + 1] -= v;
    }
    tab.t[i][n + i] = Scalar(1);
    tab.t[i][tab.rhs_col()] = prob.rhs[i] * Scalar(flip);
    tab.basis[i] = n + i;
  }
  // Phase-1 reduced costs: minimize the artificial sum.
  for (int j = 0; j <= tab.rhs_col(); ++j) {
    if (j >= n && j < n + m) continue;
    Scalar acc(0);
    for (int i = 0; i < m; ++i) acc += tab.t[i][j];
    tab.t[m][j] = -acc;
  }

  SolveOutcome out;
  long iters = 0;
  while (tab.step(n)) ++iters;

  Scalar phase1_opt = -tab.t[m][tab.rhs_col()];
  if (phase1_opt.sign() > 0) {
    out.status = SolveStatus::Infeasible;
    out.infeasibility_witness = phase1_opt;
    out.iterations = iters;
    return out;
  }

  // Drive any remaining (zero-valued) artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    int enter = -1;
    for (int j = 0; j < n; ++j)
      if (!tab.t[i][j].is_zero()) {
        enter = j;
        break;
      }
    if (enter >= 0) tab.pivot(i, enter);
    // else: redundant row; harmless to leave the artificial at value zero
  }

  if (prob.objective) {
    // Phase 2 on the structural columns only.
    std::vector<Scalar> cost(n, Scalar(0));
    for (int i = 0; i < prob.nvars; ++i) {
      cost[col_of[i]] += (*prob.objective)[i];
      if (is_free[i]) cost[col_of[i] + 1] -= (*prob.objective)[i];
    }
    for (int j = 0; j <= tab.rhs_col(); ++j) tab.t[m][j] = Scalar(0);
    for (int j = 0; j < n; ++j) tab.t[m][j] = cost[j];
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] >= n) continue;
      Scalar c = cost[tab.basis[i]];
      if (c.is_zero()) continue;
      for (int j = 0; j <= tab.rhs_col(); ++j) tab.t[m][j] -= c * tab.t[i][j];
    }
    while (tab.step(n)) ++iters;
  }

  std::vector<Scalar> std_sol(n, Scalar(0));
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < n) std_sol[tab.basis[i]] = tab.t[i][tab.rhs_col()];

  out.status = SolveStatus::Feasible;
  out.iterations = iters;
  out.solution.assign(prob.nvars, Scalar(0));
  for (int i = 0; i < prob.nvars; ++i) {
    out.solution[i] = std_sol[col_of[i]];
    if (is_free[i]) out.solution[i] -= std_sol[col_of[i] + 1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rotated-cone projection.
//
// In rotated coordinates s=(a+b)/sqrt2, w=(a-b)/sqrt2 the cone
// {a,b >= 0, ab >= c^2} becomes the elliptic cone {s >= sqrt(w^2 + 2c^2)}.
// The boundary projection reduces to a scalar root-find in rho = s.
// ---------------------------------------------------------------------------

void project_rsoc(double& a, double& b, double& c) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double sigma = (a + b) * inv_sqrt2;
  double omega = (a - b) * inv_sqrt2;
  double zeta = c;

  if (sigma >= std::sqrt(omega * omega + 2.0 * zeta * zeta)) return;  // already in the cone
  if (sigma <= -std::sqrt(omega * omega + 0.5 * zeta * zeta)) {       // in the polar cone
    a = b = c = 0.0;
    return;
  }
  if (omega == 0.0 && zeta == 0.0) {  // sigma < 0 on the axis
    a = b = c = 0.0;
    return;
  }

  // On the boundary: w = omega*rho/(2rho - sigma), z = zeta*rho/(3rho - 2sigma),
  // and rho solves G(rho) = omega^2/(2rho-sigma)^2 + 2 zeta^2/(3rho-2sigma)^2 - 1 = 0,
  // strictly decreasing on its domain.
  double lo = 0.0;
  if (sigma > 0.0) {
    if (omega != 0.0) lo = std::max(lo, sigma / 2.0);
    if (zeta != 0.0) lo = std::max(lo, 2.0 * sigma / 3.0);
  }
  auto G = [&](double rho) {
    double g = -1.0;
    if (omega != 0.0) {
      double d = 2.0 * rho - sigma;
      g += (omega * omega) / (d * d);
    }
    if (zeta != 0.0) {
      double d = 3.0 * rho - 2.0 * sigma;
      g += 2.0 * (zeta * zeta) / (d * d);
    }
    return g;
  };
  double span = std::max({1.0, std::fabs(sigma), std::fabs(omega), std::fabs(zeta)});
  double lo_eps = lo + 1e-14 * span;
  double hi = lo_eps + span;
  while (G(hi) > 0.0) hi = lo + 2.0 * (hi - lo);
  double lo_b = lo_eps;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo_b + hi);
    if (G(mid) > 0.0)
      lo_b = mid;
    else
      hi = mid;
  }
  double rho = 0.5 * (lo_b + hi);
  double w = (omega == 0.0) ? 0.0 : omega * rho / (2.0 * rho - sigma);
  double z = (zeta == 0.0) ? 0.0 : zeta * rho / (3.0 * rho - 2.0 * sigma);
  a = (rho + w) * inv_sqrt2;
  b = (rho - w) * inv_sqrt2;
  c = z;
  if (a < 0.0) a = 0.0;
  if (b < 0.0) b = 0.0;
}

// ---------------------------------------------------------------------------
// ADMM feasibility between the affine set and the cone product.
// ---------------------------------------------------------------------------

namespace {

void project_cone(const ConicProblem& prob, Eigen::VectorXd& v) {
  for (const auto& blk : prob.blocks) {
    switch (blk.tag) {
      case ConeTag::Free:
        break;
      case ConeTag::Nonneg:
        for (int i = blk.start; i < blk.start + blk.length; ++i)
          if (v[i] < 0.0) v[i] = 0.0;
        break;
      case ConeTag::RsocTriple:
        project_rsoc(v[blk.start], v[blk.start + 1], v[blk.start + 2]);
        break;
    }
  }
}

}  // namespace

SolveOutcome solve_socp(const ConicProblem& prob, const SocpOptions& opts) {
  prob.validate();
  int m = static_cast<int>(prob.rows.size());
  int n = prob.nvars;

  std::vector<Eigen::Triplet<double>> trips;
  for (int i = 0; i < m; ++i)
    for (const auto& entry : prob.rows[i]) trips.emplace_back(i, entry.col, entry.value.to_double());
  Eigen::SparseMatrix<double> A(m, n);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) b[i] = prob.rhs[i].to_double();

  // Row equilibration for the iteration; residuals are reported on the
  // original system.
  Eigen::VectorXd row_scale(m);
  for (int i = 0; i < m; ++i) {
    double norm = A.row(i).norm();
    row_scale[i] = norm > 1e-12 ? 1.0 / norm : 1.0;
  }
  Eigen::SparseMatrix<double> An = row_scale.asDiagonal() * A;
  Eigen::VectorXd bn = row_scale.asDiagonal() * b;

  Eigen::MatrixXd gram = Eigen::MatrixXd(An * An.transpose());
  gram.diagonal().array() += 1e-12;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw std::runtime_error("solve_socp: Gram factorization failed");

  auto project_affine = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::VectorXd resid = An * v - bn;
    return v - An.transpose() * llt.solve(resid);
  };

  Eigen::VectorXd z = Eigen::VectorXd::Zero(n), u = Eigen::VectorXd::Zero(n);
  project_cone(prob, z);

  SolveOutcome out;
  double best_res = std::numeric_limits<double>::infinity();
  long best_iter = 0;
  const double alpha = opts.relaxation;

  for (long iter = 1; iter <= opts.max_iter; ++iter) {
    Eigen::VectorXd x = project_affine(z - u);
    Eigen::VectorXd xh = alpha * x + (1.0 - alpha) * z;
    z = xh + u;
    project_cone(prob, z);
    u += xh - z;

    if (iter % 25 == 0 || iter == opts.max_iter) {
      double res = m == 0 ? 0.0 : (A * z - b).lpNorm<Eigen::Infinity>();
      if (res <= opts.feas_tol) {
        out.status = SolveStatus::Feasible;
        out.iterations = iter;
        out.equality_residual = res;
        out.cone_violation = 0.0;
        out.solution_f.assign(z.data(), z.data() + n);
        return out;
      }
      if (res < best_res * (1.0 - opts.stagnation_rel)) {
        best_res = res;
        best_iter = iter;
      }
      if (iter - best_iter > opts.stagnation_window && best_res > opts.stagnation_floor) {
        out.status = SolveStatus::NotFound;
        out.iterations = iter;
        out.equality_residual = res;
        out.solution_f.assign(z.data(), z.data() + n);
        return out;
      }
    }
  }
  out.status = SolveStatus::NonConverged;
  out.iterations = opts.max_iter;
  out.equality_residual = m == 0 ? 0.0 : (A * z - b).lpNorm<Eigen::Infinity>();
  out.solution_f.assign(z.data(), z.data() + n);
  return out;
}

}  // namespace certkit
