#include "certkit/builder.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "certkit/bounds.hpp"

namespace certkit {

Shape shape_from_string(const std::string& name) {
  if (name == "split") return Shape::Split;
  if (name == "merged") return Shape::Merged;
  if (name == "simple") return Shape::Simple;
  throw std::invalid_argument("unknown shape '" + name + "'");
}

std::string shape_to_string(Shape s) {
  switch (s) {
    case Shape::Split: return "split";
    case Shape::Merged: return "merged";
    case Shape::Simple: return "simple";
  }
  throw std::logic_error("bad shape");
}

std::string slot_role_to_string(SlotRole r) {
  switch (r) {
    case SlotRole::Alpha0: return "alpha0";
    case SlotRole::Alpha1: return "alpha1";
    case SlotRole::Alpha: return "alpha";
    case SlotRole::Rho: return "rho";
  }
  throw std::logic_error("bad slot role");
}

SlotRole slot_role_from_string(const std::string& name) {
  if (name == "alpha0") return SlotRole::Alpha0;
  if (name == "alpha1") return SlotRole::Alpha1;
  if (name == "alpha") return SlotRole::Alpha;
  if (name == "rho") return SlotRole::Rho;
  throw std::invalid_argument("unknown slot role '" + name + "'");
}

void ProblemSpec::validate() const {
  if (n < 1) throw std::invalid_argument("spec: need at least one variable");
  if (p.nvars() != n) throw std::invalid_argument("spec: p ring mismatch");
  for (const auto& c : constraints) {
    if (c.g.nvars() != n) throw std::invalid_argument("spec: constraint ring mismatch");
    if (c.U && c.U->sign() <= 0) throw std::invalid_argument("spec: U must be positive");
  }
  if (shape == Shape::Merged && cone == ConeClass::Soms)
    throw std::invalid_argument(
        "spec: merged shape needs a cone closed under multiplication by a "
        "variable; soms is not");
  if (geometry.sparse) {
    if (shape == Shape::Simple)
      throw std::invalid_argument("spec: the simple template has no sparse form");
    const Cover& cover = geometry.cover;
    if (cover.cliques.empty()) throw std::invalid_argument("spec: empty cover");
    std::vector<bool> covered(n, false);
    for (const auto& cl : cover.cliques)
      for (int v : cl) {
        if (v < 0 || v >= n) throw std::invalid_argument("spec: clique index out of range");
        covered[v] = true;
      }
    for (int v = 0; v < n; ++v)
      if (!covered[v]) throw std::invalid_argument("spec: cover misses a variable");
    if (cover.radii.size() != cover.cliques.size())
      throw std::invalid_argument("spec: radii/clique count mismatch");
    for (const auto& r : cover.radii)
      if (r.sign() <= 0) throw std::invalid_argument("spec: clique radius must be positive");
    if (!check_rip(cover.cliques)) throw std::invalid_argument("spec: cover fails RIP");
    if (!check_i_sparse(p, cover.cliques))
      throw std::invalid_argument("spec: p is not I-sparse for the cover");
    if (cover.assign.size() != constraints.size())
      throw std::invalid_argument("spec: constraint assignment size mismatch");
    for (size_t j = 0; j < constraints.size(); ++j) {
      int l = cover.assign[j];
      if (l < 0 || l >= cover.k())
        throw std::invalid_argument("spec: constraint assigned outside the cover");
      const auto& cl = cover.cliques[l];
      for (int v : constraints[j].g.support())
        if (!std::count(cl.begin(), cl.end(), v))
          throw std::invalid_argument("spec: constraint support escapes its clique");
    }
  } else {
    if (geometry.r.sign() <= 0) throw std::invalid_argument("spec: ball radius must be positive");
  }
}

Scalar ProblemSpec::resolved_u(int j) const {
  const auto& c = constraints.at(j);
  if (c.U) return *c.U;
  Scalar radius = geometry.sparse ? geometry.cover.radii[geometry.cover.assign[j]] : geometry.r;
  Scalar b2 = ball_bound_squared(c.g, radius);
  // smallest 1/4096-grid rational whose square clears the exact bound
  double approx = std::sqrt(b2.to_double());
  Rat u(static_cast<long long>(std::ceil(approx * 4096.0)), 4096);
  while (Scalar(u) * Scalar(u) < b2) u += Rat(1, 4096);
  return Scalar(u);
}

namespace {

// (x_I + R e, R e - x_I, R^2 - ||x_I||^2) as polynomials in the x ring
std::vector<Poly> alpha_args(int n, const std::vector<int>& clique, const Scalar& R) {
  std::vector<Poly> args;
  for (int v : clique) args.push_back(Poly::variable(n, v) + Poly::constant(n, R));
  for (int v : clique) args.push_back(Poly::constant(n, R) - Poly::variable(n, v));
  Poly u = Poly::constant(n, R * R);
  for (int v : clique) {
    Poly xv = Poly::variable(n, v);
    u -= xv * xv;
  }
  args.push_back(u);
  return args;
}

std::vector<int> all_vars(int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace

CertificateTemplate build_template(const ProblemSpec& spec, int d) {
  spec.validate();
  if (d < 0) throw std::invalid_argument("build_template: negative degree");
  CertificateTemplate tmpl;
  tmpl.d = d;
  int n = spec.n;

  if (spec.shape == Shape::Simple) {
    // plain quadratic module: p = s_0(x) + sum s_j(x) g_j, no composed args
    Slot s0;
    s0.role = SlotRole::Alpha0;
    s0.arity = n;
    s0.max_deg = 2 * d;
    for (int v = 0; v < n; ++v) s0.args.push_back(Poly::variable(n, v));
    s0.multiplier = Poly::constant(n, Scalar(1));
    tmpl.slots.push_back(std::move(s0));
    for (size_t j = 0; j < spec.constraints.size(); ++j) {
      Slot sj;
      sj.role = SlotRole::Rho;
      sj.constraint = static_cast<int>(j);
      sj.arity = n;
      sj.max_deg = 2 * d;
      for (int v = 0; v < n; ++v) sj.args.push_back(Poly::variable(n, v));
      sj.multiplier = spec.constraints[j].g;
      tmpl.slots.push_back(std::move(sj));
    }
    return tmpl;
  }

  struct CliqueInfo {
    std::vector<int> vars;
    Scalar R;
    int index;
  };
  std::vector<CliqueInfo> cliques;
  if (spec.geometry.sparse) {
    for (int l = 0; l < spec.geometry.cover.k(); ++l)
      cliques.push_back({spec.geometry.cover.cliques[l], spec.geometry.cover.radii[l], l});
  } else {
    cliques.push_back({all_vars(n), spec.geometry.r, -1});
  }

  for (const auto& cl : cliques) {
    auto args = alpha_args(n, cl.vars, cl.R);
    Poly ball = args.back();  // R^2 - ||x_I||^2
    if (spec.shape == Shape::Split) {
      Slot a0;
      a0.role = SlotRole::Alpha0;
      a0.clique = cl.index;
      a0.arity = 2 * static_cast<int>(cl.vars.size()) + 1;
      a0.max_deg = 2 * d;
      a0.args = args;
      a0.multiplier = Poly::constant(n, Scalar(1));
      tmpl.slots.push_back(std::move(a0));
      Slot a1;
      a1.role = SlotRole::Alpha1;
      a1.clique = cl.index;
      a1.arity = 2 * static_cast<int>(cl.vars.size()) + 1;
      a1.max_deg = 2 * d;
      a1.args = args;
      a1.multiplier = ball;
      tmpl.slots.push_back(std::move(a1));
    } else {
      Slot a;
      a.role = SlotRole::Alpha;
      a.clique = cl.index;
      a.arity = 2 * static_cast<int>(cl.vars.size()) + 1;
      a.max_deg = 2 * d;
      a.args = args;
      a.multiplier = Poly::constant(n, Scalar(1));
      tmpl.slots.push_back(std::move(a));
    }
  }

  for (size_t j = 0; j < spec.constraints.size(); ++j) {
    Slot rho;
    rho.role = SlotRole::Rho;
    rho.constraint = static_cast<int>(j);
    rho.arity = 1;
    rho.max_deg = 2 * d;
    rho.args.push_back(Poly::constant(n, spec.resolved_u(static_cast<int>(j))) -
                       spec.constraints[j].g);
    rho.multiplier = spec.constraints[j].g;
    tmpl.slots.push_back(std::move(rho));
  }
  return tmpl;
}

namespace {

// Expands args^e * multiplier with power caching per slot.
struct Composer {
  const Slot& slot;
  int n;
  std::vector<std::vector<Poly>> powers;

  Composer(const Slot& s, int nvars) : slot(s), n(nvars), powers(s.args.size()) {}

  Poly compose(const Exponents& e) {
    Poly out = slot.multiplier;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(Poly::constant(n, Scalar(1)));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * slot.args[i]);
      out *= pw[e[i]];
    }
    return out;
  }
};

}  // namespace

Assembly assemble(const CertificateTemplate& tmpl, const ProblemSpec& spec, ConeClass cone) {
  if (cone != ConeClass::Soms && cone != ConeClass::Dsos && cone != ConeClass::Sdsos)
    throw std::invalid_argument("assemble: cone must be soms, dsos, or sdsos");
  int n = spec.n;
  Assembly out;
  ConicProblem& prob = out.problem;

  // accumulated column entries per x-monomial
  std::map<Exponents, std::vector<ConicProblem::Entry>, GrlexLess> row_entries;
  auto add_poly = [&](int col, const Poly& contribution) {
    for (const auto& [e, c] : contribution.terms()) row_entries[e].push_back({col, c});
  };

  for (const auto& slot : tmpl.slots) {
    SlotColumns cols;
    Composer composer(slot, n);
    int half = slot.max_deg / 2;

    if (cone == ConeClass::Soms) {
      cols.exps = monomials_up_to(slot.arity, half);
      for (auto& e : cols.exps)
        for (auto& v : e) v *= 2;  // even monomials of degree <= 2d
      int start = prob.add_block(ConeTag::Nonneg, static_cast<int>(cols.exps.size()));
      cols.diag_start = start;
      for (size_t i = 0; i < cols.exps.size(); ++i)
        add_poly(start + static_cast<int>(i), composer.compose(cols.exps[i]));
    } else {
      cols.basis = monomials_up_to(slot.arity, half);
      int nb = static_cast<int>(cols.basis.size());
      auto pair_exp = [&](int i, int j) {
        Exponents e(slot.arity);
        for (int k = 0; k < slot.arity; ++k) e[k] = cols.basis[i][k] + cols.basis[j][k];
        return e;
      };
      std::vector<Poly> diag(nb, Poly(n));
      for (int i = 0; i < nb; ++i) diag[i] = composer.compose(pair_exp(i, i));

      if (cone == ConeClass::Dsos) {
        cols.diag_start = prob.add_block(ConeTag::Nonneg, nb);
        int npairs = nb * (nb - 1) / 2;
        cols.pair_start = npairs > 0 ? prob.add_block(ConeTag::Nonneg, 2 * npairs) : -1;
        for (int i = 0; i < nb; ++i) add_poly(cols.diag_start + i, diag[i]);
        int pair = 0;
        for (int i = 0; i < nb; ++i)
          for (int j = i + 1; j < nb; ++j, ++pair) {
            Poly cross = composer.compose(pair_exp(i, j));
            int pc = cols.pair_start + 2 * pair, nc = pc + 1;
            add_poly(pc, cross + cross + diag[i] + diag[j]);
            add_poly(nc, diag[i] + diag[j] - cross - cross);
          }
      } else {
        cols.diag_start = prob.add_block(ConeTag::Nonneg, nb);
        for (int i = 0; i < nb; ++i) add_poly(cols.diag_start + i, diag[i]);
        cols.pair_start = prob.nvars;
        for (int i = 0; i < nb; ++i)
          for (int j = i + 1; j < nb; ++j) {
            int blk = prob.add_block(ConeTag::RsocTriple, 3);
            Poly cross = composer.compose(pair_exp(i, j));
            add_poly(blk, diag[i]);
            add_poly(blk + 1, diag[j]);
            add_poly(blk + 2, cross + cross);
          }
      }
    }
    out.columns.push_back(std::move(cols));
  }

  // every monomial of p gets a row even if no column reaches it
  for (const auto& [e, c] : spec.p.terms()) row_entries[e];

  for (auto& [e, entries] : row_entries) {
    Scalar rhs = spec.p.coefficient(e);
    if (entries.empty() && !rhs.is_zero()) {
      out.structurally_infeasible = true;
      out.structural_note = "monomial of p unreachable at this degree";
    }
    prob.add_row(std::move(entries), rhs);
  }
  return out;
}

namespace {

Poly slot_poly_from_soms(const SlotColumns& cols, const std::vector<Scalar>& sol, int arity,
                         SomsWitness& witness) {
  Poly q(arity);
  for (size_t i = 0; i < cols.exps.size(); ++i) {
    Scalar v = sol[cols.diag_start + static_cast<int>(i)];
    if (v.is_zero()) continue;
    q.add_term(cols.exps[i], v);
    witness.terms.emplace_back(cols.exps[i], v);
  }
  return q;
}

Poly poly_from_gram(const GramWitness& w, int arity) {
  Poly q(arity);
  int nb = static_cast<int>(w.basis.size());
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      if (w.Q[i][j].is_zero()) continue;
      Exponents e(arity);
      for (int k = 0; k < arity; ++k) e[k] = w.basis[i][k] + w.basis[j][k];
      q.add_term(std::move(e), w.Q[i][j]);
    }
  return q;
}

GramWitness gram_from_dd_solution(const SlotColumns& cols, const std::vector<Scalar>& sol) {
  GramWitness w;
  w.flavor = GramWitness::Flavor::DD;
  w.basis = cols.basis;
  int nb = static_cast<int>(cols.basis.size());
  w.Q.assign(nb, std::vector<Scalar>(nb, Scalar(0)));
  for (int i = 0; i < nb; ++i) w.Q[i][i] = sol[cols.diag_start + i];
  int pair = 0;
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j, ++pair) {
      Scalar pv = sol[cols.pair_start + 2 * pair];
      Scalar nv = sol[cols.pair_start + 2 * pair + 1];
      w.Q[i][j] = w.Q[j][i] = pv - nv;
      w.Q[i][i] += pv + nv;
      w.Q[j][j] += pv + nv;
    }
  return w;
}

void dd_witness_to_sdd(GramWitness& w) {
  int nb = static_cast<int>(w.basis.size());
  w.blocks.clear();
  std::vector<Scalar> remainder(nb);
  for (int i = 0; i < nb; ++i) remainder[i] = w.Q[i][i];
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      if (w.Q[i][j].is_zero()) continue;
      Scalar mag = w.Q[i][j].abs();
      w.blocks.push_back({i, j, mag, mag, w.Q[i][j]});
      remainder[i] -= mag;
      remainder[j] -= mag;
    }
  for (int i = 0; i < nb; ++i) {
    if (remainder[i].is_zero()) continue;
    Scalar half = remainder[i] / Scalar(2);
    w.blocks.push_back({i, i, half, half, Scalar(0)});
  }
  w.flavor = GramWitness::Flavor::SDD;
}

GramWitness gram_from_socp_solution(const SlotColumns& cols, const std::vector<double>& sol) {
  GramWitness w;
  w.flavor = GramWitness::Flavor::SDD;
  w.basis = cols.basis;
  w.approximate = true;
  int nb = static_cast<int>(cols.basis.size());
  w.Q.assign(nb, std::vector<Scalar>(nb, Scalar(0)));
  for (int i = 0; i < nb; ++i) {
    double s = std::max(0.0, sol[cols.diag_start + i]);
    if (s != 0.0) {
      Scalar half(Rat(s / 2.0));
      w.blocks.push_back({i, i, half, half, Scalar(0)});
    }
  }
  int pair = 0;
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j, ++pair) {
      int blk = cols.pair_start + 3 * pair;
      double di = std::max(0.0, sol[blk]);
      double dj = std::max(0.0, sol[blk + 1]);
      double t = sol[blk + 2];
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
  return w;
}

Certificate certificate_shell(const ProblemSpec& spec, int d) {
  Certificate cert;
  cert.geometry = spec.geometry;
  cert.shape = spec.shape;
  cert.cone = spec.cone;
  cert.degree = d;
  return cert;
}

}  // namespace

SearchReport search(const ProblemSpec& spec, const SearchOptions& opts) {
  spec.validate();
  if (spec.cone != ConeClass::Soms && spec.cone != ConeClass::Dsos &&
      spec.cone != ConeClass::Sdsos)
    throw std::invalid_argument("search: cone must be soms, dsos, or sdsos");

  SearchReport report;
  for (int d = 0; d <= spec.d_max; ++d) {
    CertificateTemplate tmpl = build_template(spec, d);

    if (spec.cone == ConeClass::Soms || spec.cone == ConeClass::Dsos) {
      Assembly asmbl = assemble(tmpl, spec, spec.cone);
      if (asmbl.structurally_infeasible) {
        report.outcomes.push_back({d, DecideStatus::Infeasible, asmbl.structural_note});
        continue;
      }
      auto out = solve_lp(asmbl.problem);
      if (out.status == SolveStatus::Infeasible) {
        report.outcomes.push_back({d, DecideStatus::Infeasible, ""});
        continue;
      }
      Certificate cert = certificate_shell(spec, d);
      for (size_t s = 0; s < tmpl.slots.size(); ++s) {
        const Slot& slot = tmpl.slots[s];
        CertSlot cs;
        cs.role = slot.role;
        cs.clique = slot.clique;
        cs.constraint = slot.constraint;
        if (spec.cone == ConeClass::Soms) {
          SomsWitness w;
          cs.poly = slot_poly_from_soms(asmbl.columns[s], out.solution, slot.arity, w);
          cs.witness = std::move(w);
        } else {
          GramWitness w = gram_from_dd_solution(asmbl.columns[s], out.solution);
          cs.poly = poly_from_gram(w, slot.arity);
          cs.witness = std::move(w);
        }
        cert.slots.push_back(std::move(cs));
      }
      report.outcomes.push_back({d, DecideStatus::Found, ""});
      report.certificate = std::move(cert);
      return report;
    }

    // SDSOS: exact DD pre-pass when small enough, then the numeric SOCP
    Assembly socp_asm = assemble(tmpl, spec, ConeClass::Sdsos);
    if (socp_asm.structurally_infeasible) {
      report.outcomes.push_back({d, DecideStatus::Infeasible, socp_asm.structural_note});
      continue;
    }
    Assembly dd_asm = assemble(tmpl, spec, ConeClass::Dsos);
    if (dd_asm.problem.nvars <= opts.dd_prepass_var_limit) {
      auto out = solve_lp(dd_asm.problem);
      if (out.status == SolveStatus::Feasible) {
        Certificate cert = certificate_shell(spec, d);
        for (size_t s = 0; s < tmpl.slots.size(); ++s) {
          const Slot& slot = tmpl.slots[s];
          CertSlot cs;
          cs.role = slot.role;
          cs.clique = slot.clique;
          cs.constraint = slot.constraint;
          GramWitness w = gram_from_dd_solution(dd_asm.columns[s], out.solution);
          dd_witness_to_sdd(w);
          cs.poly = poly_from_gram(w, slot.arity);
          cs.witness = std::move(w);
          cert.slots.push_back(std::move(cs));
        }
        report.outcomes.push_back({d, DecideStatus::Found, "exact via dd pre-pass"});
        report.certificate = std::move(cert);
        return report;
      }
      // dd-infeasible is not sdd-infeasible; fall through
    }

    auto out = solve_socp(socp_asm.problem, opts.socp);
    if (out.status == SolveStatus::Feasible) {
      Certificate cert = certificate_shell(spec, d);
      cert.approximate = true;
      for (size_t s = 0; s < tmpl.slots.size(); ++s) {
        const Slot& slot = tmpl.slots[s];
        CertSlot cs;
        cs.role = slot.role;
        cs.clique = slot.clique;
        cs.constraint = slot.constraint;
        GramWitness w = gram_from_socp_solution(socp_asm.columns[s], out.solution_f);
        cs.poly = poly_from_gram(w, slot.arity);
        cs.witness = std::move(w);
        cert.slots.push_back(std::move(cs));
      }
      if (opts.try_rationalize) {
        if (auto exact = rationalize(cert, spec)) {
          report.outcomes.push_back({d, DecideStatus::Found, "rationalized"});
          report.certificate = std::move(*exact);
          return report;
        }
      }
      report.outcomes.push_back({d, DecideStatus::Found, "float witness"});
      report.certificate = std::move(cert);
      return report;
    }
    report.outcomes.push_back(
        {d, out.status == SolveStatus::NotFound ? DecideStatus::NotFound
                                                : DecideStatus::NonConverged,
         ""});
  }
  return report;
}

std::optional<Certificate> rationalize(const Certificate& cert, const ProblemSpec& spec) {
  if (!cert.approximate) return cert;  // already exact

  CertificateTemplate tmpl = build_template(spec, cert.degree);
  if (tmpl.slots.size() != cert.slots.size()) return std::nullopt;

  const Int max_den(1000000);
  const double tol = 1e-6;

  // Round every off-diagonal block; keep the diagonal slack unknown and
  // re-solve it exactly so the identity is restored.
  struct RoundedSlot {
    std::vector<SddBlock> fixed;  // rounded pair blocks
  };
  std::vector<RoundedSlot> rounded(cert.slots.size());
  Poly fixed_total(spec.n);

  for (size_t s = 0; s < cert.slots.size(); ++s) {
    const auto* gram = std::get_if<GramWitness>(&cert.slots[s].witness);
    if (!gram) return std::nullopt;
    Composer composer(tmpl.slots[s], spec.n);
    for (const auto& blk : gram->blocks) {
      if (blk.i == blk.j) continue;  // diagonal slack is re-solved
      auto rt = rat_approx(blk.t.to_double(), tol, max_den);
      auto rdi = rat_approx(blk.d_i.to_double(), tol, max_den);
      auto rdj = rat_approx(blk.d_j.to_double(), tol, max_den);
      if (!rt || !rdi || !rdj) return std::nullopt;
      Rat di = *rdi < 0 ? Rat(0) : *rdi, dj = *rdj < 0 ? Rat(0) : *rdj, t = *rt;
      // restore exact block PSD by pulling t toward zero if rounding broke it
      int guard = 0;
      while (t * t > di * dj && guard++ < 64) t = t * Rat(99, 100);
      if (t * t > di * dj) t = 0;
      if (di == 0 && dj == 0 && t == 0) continue;
      SddBlock fixed{blk.i, blk.j, Scalar(di), Scalar(dj), Scalar(t)};
      rounded[s].fixed.push_back(fixed);

      Exponents ei(tmpl.slots[s].arity), ej(tmpl.slots[s].arity), ecross(tmpl.slots[s].arity);
      for (int k = 0; k < tmpl.slots[s].arity; ++k) {
        ei[k] = 2 * gram->basis[blk.i][k];
        ej[k] = 2 * gram->basis[blk.j][k];
        ecross[k] = gram->basis[blk.i][k] + gram->basis[blk.j][k];
      }
      fixed_total += composer.compose(ei).scaled(Scalar(di));
      fixed_total += composer.compose(ej).scaled(Scalar(dj));
      fixed_total += composer.compose(ecross).scaled(Scalar(t) * Scalar(2));
    }
  }

  // correction LP: nonneg diagonal entries sigma over every slot basis element
  Poly target = spec.p - fixed_total;
  ConicProblem prob;
  std::map<Exponents, std::vector<ConicProblem::Entry>, GrlexLess> row_entries;
  struct DiagCols {
    int start;
    int count;
  };
  std::vector<DiagCols> diag_cols(cert.slots.size());
  for (size_t s = 0; s < cert.slots.size(); ++s) {
    const auto& gram = std::get<GramWitness>(cert.slots[s].witness);
    Composer composer(tmpl.slots[s], spec.n);
    int nb = static_cast<int>(gram.basis.size());
    diag_cols[s] = {prob.add_block(ConeTag::Nonneg, nb), nb};
    for (int i = 0; i < nb; ++i) {
      Exponents e(tmpl.slots[s].arity);
      for (int k = 0; k < tmpl.slots[s].arity; ++k) e[k] = 2 * gram.basis[i][k];
      Poly contrib = composer.compose(e);
      for (const auto& [ex, c] : contrib.terms())
        row_entries[ex].push_back({diag_cols[s].start + i, c});
    }
  }
  for (const auto& [e, c] : target.terms()) row_entries[e];
  for (auto& [e, entries] : row_entries) {
    Scalar rhs = target.coefficient(e);
    if (entries.empty() && !rhs.is_zero()) return std::nullopt;
    prob.add_row(std::move(entries), rhs);
  }

  auto out = solve_lp(prob);
  if (out.status != SolveStatus::Feasible) return std::nullopt;

  Certificate exact = cert;
  exact.approximate = false;
  exact.provenance = cert.provenance;
  for (size_t s = 0; s < cert.slots.size(); ++s) {
    const auto& old = std::get<GramWitness>(cert.slots[s].witness);
    GramWitness w;
    w.flavor = GramWitness::Flavor::SDD;
    w.basis = old.basis;
    w.approximate = false;
    int nb = diag_cols[s].count;
    w.Q.assign(nb, std::vector<Scalar>(nb, Scalar(0)));
    w.blocks = rounded[s].fixed;
    for (int i = 0; i < nb; ++i) {
      Scalar sigma = out.solution[diag_cols[s].start + i];
      if (sigma.is_zero()) continue;
      Scalar half = sigma / Scalar(2);
      w.blocks.push_back({i, i, half, half, Scalar(0)});
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
    exact.slots[s].poly = poly_from_gram(w, tmpl.slots[s].arity);
    exact.slots[s].witness = std::move(w);
  }
  return exact;
}

}  // namespace certkit
