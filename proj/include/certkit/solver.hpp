#pragma once

#include <optional>
#include <vector>

#include "certkit/scalar.hpp"

namespace certkit {

enum class ConeTag { Free, Nonneg, RsocTriple };

/// Linear equality system A w = b with the variables partitioned into blocks.
/// An rsoc triple (d_i, d_j, t) encodes d_i >= 0, d_j >= 0, d_i * d_j >= t^2.
struct ConicProblem {
  struct Entry {
    int col;
    Scalar value;
  };
  struct Block {
    int start;
    int length;  // 3 for RsocTriple
    ConeTag tag;
  };

  int nvars = 0;
  std::vector<std::vector<Entry>> rows;
  std::vector<Scalar> rhs;
  std::vector<Block> blocks;
  std::optional<std::vector<Scalar>> objective;

  int add_block(ConeTag tag, int length);
  void add_row(std::vector<Entry> row, Scalar b);
  void validate() const;  // every var in exactly one block, rsoc lengths
};

enum class SolveStatus { Feasible, Infeasible, NotFound, NonConverged };

struct SolveOutcome {
  SolveStatus status = SolveStatus::NotFound;
  std::vector<Scalar> solution;      // exact, LP path
  std::vector<double> solution_f;    // float, SOCP path
  long iterations = 0;
  double equality_residual = 0.0;    // ||A w - b||_inf
  double cone_violation = 0.0;
  Scalar infeasibility_witness;      // phase-1 optimum, exact LP only (> 0 on Infeasible)
};

struct SocpOptions {
  double feas_tol = 1e-8;
  double cone_tol = 1e-8;
  long max_iter = 50000;
  double relaxation = 1.7;
  // NotFound when the best residual improves by less than stagnation_rel
  // over a stagnation_window while still above stagnation_floor.
  long stagnation_window = 2000;
  double stagnation_rel = 1e-3;
  double stagnation_floor = 1e-6;
};

/// Exact rational (or Q(sqrt s)) feasibility/optimization via phase-1/phase-2
/// simplex with Bland's rule. Only Free/Nonneg blocks are allowed.
/// Infeasible outcomes carry the positive phase-1 optimum as a witness.
SolveOutcome solve_lp(const ConicProblem& prob);

/// Numeric feasibility via ADMM-style operator splitting between the affine
/// set {A w = b} and the cone product. Pure feasibility; the objective, if
/// present, is ignored.
SolveOutcome solve_socp(const ConicProblem& prob, const SocpOptions& opts = {});

/// Euclidean projection of (a, b, c) onto {a >= 0, b >= 0, a*b >= c^2}.
/// Exposed for testing.
void project_rsoc(double& a, double& b, double& c);

}  // namespace certkit
