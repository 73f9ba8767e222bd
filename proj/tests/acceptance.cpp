// End-to-end acceptance checks. One line per criterion; exit status is the
// number of failures.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>

#include "certkit/bounds.hpp"
#include "certkit/io.hpp"
#include "certkit/sizes.hpp"
#include "certkit/verify.hpp"

using namespace certkit;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << number << ": " << what << "\n";
  if (!ok) ++failures;
}

std::string data_path(const std::string& name) {
  return std::string(CERTKIT_TEST_DATA) + "/" + name;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// RIP as a direct quantifier evaluation over the given clique order
bool rip_oracle(const std::vector<std::vector<int>>& cliques) {
  for (size_t l = 1; l < cliques.size(); ++l) {
    std::vector<bool> earlier(64, false);
    for (size_t s = 0; s < l; ++s)
      for (int v : cliques[s]) earlier[v] = true;
    std::vector<int> meet;
    for (int v : cliques[l])
      if (earlier[v]) meet.push_back(v);
    bool housed = false;
    for (size_t s = 0; s < l && !housed; ++s) {
      bool inside = true;
      for (int v : meet)
        if (!std::count(cliques[s].begin(), cliques[s].end(), v)) inside = false;
      housed = inside;
    }
    if (!housed) return false;
  }
  return true;
}

void criterion_1() {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_problem(data_path("ex3_problem.json"));
  Certificate cert = load_certificate(data_path("ex3_certificate.json"), spec);
  VerifyReport rep = verify_certificate(spec, cert, true);
  bool ok = rep.ok && rep.residual.is_zero() && seconds_since(t0) < 1.0;
  report(1, "golden disk certificate verifies with zero residual", ok);
}

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec spec = load_problem(data_path("ex4_problem.json"));
  Certificate cert = load_certificate(data_path("ex4_certificate.json"), spec);
  VerifyReport rep = verify_certificate(spec, cert, true);
  bool ok = rep.ok && rep.residual.is_zero() && seconds_since(t0) < 5.0;
  report(2, "golden chain certificate verifies exactly over sqrt(2) radii", ok);
}

void criterion_3() {
  SizeReport rep = template_sizes(TemplateShape::Split, 4, 2, 8, rosenbrock_cover(4));
  bool ok = size_report_row(rep) == "7850 6122 2718 / 1990 1470 796";
  report(3, "split template size row matches the frozen totals", ok);
}

void criterion_4() {
  SizeReport rep = template_sizes(TemplateShape::Merged, 4, 2, 8, rosenbrock_cover(4));
  bool ok = size_report_row(rep) == "4825 3097 1395 / 1275 755 418";
  report(4, "merged template size row matches the frozen totals", ok);
}

void criterion_5() {
  auto t0 = std::chrono::steady_clock::now();
  ProblemSpec disk = load_problem(data_path("ex3_problem.json"));
  SearchReport soms = search(disk);
  bool ok = soms.certificate && soms.certificate->degree <= 2 &&
            verify_certificate(disk, *soms.certificate, true).ok && seconds_since(t0) < 60.0;

  auto t1 = std::chrono::steady_clock::now();
  ProblemSpec chain = load_problem(data_path("ex4_problem.json"));
  SearchReport sdsos = search(chain);
  bool ok2 = sdsos.certificate && sdsos.certificate->degree <= 2;
  if (ok2) {
    const Certificate& cert = *sdsos.certificate;
    ok2 = cert.approximate ? verify_certificate(chain, cert, false, 1e-8).ok
                           : verify_certificate(chain, cert, true).ok;
  }
  ok2 = ok2 && seconds_since(t1) < 60.0;
  report(5, "search succeeds on both worked examples at d <= 2", ok && ok2);
}

void criterion_6() {
  auto xs = x_var_names(2);
  ProblemSpec simple;
  simple.n = 2;
  simple.p = parse_poly("4 - 4*x1 - 4*x2 + x1^2 + 2*x1*x2 + x2^2", xs);
  simple.constraints.push_back({parse_poly("1 - x1^2 - x2^2", xs), Scalar(2)});
  simple.geometry.r = Scalar(1);
  simple.shape = Shape::Simple;
  simple.cone = ConeClass::Dsos;
  simple.d_max = 2;

  bool ok = true;
  SearchReport dsos = search(simple);
  ok = ok && !dsos.certificate.has_value();
  for (const auto& o : dsos.outcomes)
    if (o.d >= 1) ok = ok && o.status == DecideStatus::Infeasible;

  simple.cone = ConeClass::Sdsos;
  SearchReport sdsos = search(simple);
  ok = ok && !sdsos.certificate.has_value();
  for (const auto& o : sdsos.outcomes)
    if (o.d >= 1) ok = ok && o.status == DecideStatus::NotFound;

  ProblemSpec composed = load_problem(data_path("ex3_problem.json"));
  SearchReport split = search(composed);
  ok = ok && split.certificate && split.certificate->degree <= 2;
  report(6, "plain quadratic module fails where the composed template works", ok);
}

void criterion_7() {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> nv(1, 3), deg(0, 4), nterms(1, 6), num(-20, 20);
  const double radii[] = {0.5, 1.0, 2.0};
  const Scalar exact_radii[] = {Scalar(Rat(1, 2)), Scalar(1), Scalar(2)};
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = nv(rng);
    Poly g(n);
    int d = deg(rng);
    for (int t = nterms(rng); t > 0; --t) {
      Exponents e(n, 0);
      int budget = d;
      for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<int> pick(0, budget);
        e[i] = pick(rng);
        budget -= e[i];
      }
      g.add_term(std::move(e), Scalar(Rat(num(rng), 10)));
    }
    if (g.term_count() == 0) g = Poly::constant(n, Scalar(1));
    int which = trial % 3;
    double bound = ball_bound(g, exact_radii[which]);
    double observed = grid_max_oracle(g, radii[which], n == 3 ? 41 : 101);
    if (bound < observed - 1e-9) ++violations;
  }
  report(7, "coefficient-norm ball bound dominates the grid oracle (100 trials)",
         violations == 0);
}

void criterion_8() {
  std::mt19937 rng(103);
  std::uniform_int_distribution<int> pick(1, 8);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    Rat eps(pick(rng), pick(rng));
    Rat M = -Rat(pick(rng) - 1, pick(rng));
    Rat delta = -Rat(pick(rng), pick(rng));
    Rat U(pick(rng), 1);
    int m = pick(rng);
    auto s = rho_schedule(eps, M, delta, U, m);

    // the returned degree can run into the hundreds, far past double range
    using BF = boost::multiprecision::cpp_bin_float_100;
    BF epsb(static_cast<BF>(numerator(eps)) / static_cast<BF>(denominator(eps)));
    BF Mb(static_cast<BF>(numerator(M)) / static_cast<BF>(denominator(M)));
    BF db(static_cast<BF>(numerator(delta)) / static_cast<BF>(denominator(delta)));
    BF Ub(static_cast<BF>(U));
    BF cb(static_cast<BF>(numerator(s.c)) / static_cast<BF>(denominator(s.c)));
    BF cap = epsb / (BF(4 * (m + 1)) * Ub);
    BF need = (-Mb + epsb) / -db;
    BF lo = BF(2) * db < -Ub ? BF(2) * db : -Ub;
    for (int i = 0; i < 1000; ++i) {
      BF t = lo + (Ub - lo) * i / 999;
      BF val = cb * pow(Ub - t, 2 * s.d);
      if (t >= 0 && val > cap * (1 + BF(1e-9))) ok = false;
      if (t <= db && val < need * (1 - BF(1e-9))) ok = false;
    }
    Poly rho(1);
    rho.add_term({2 * s.d}, Scalar(s.c));
    if (!soms_check(rho)) ok = false;
  }
  report(8, "multiplier schedule meets both inequalities on 50 random tuples", ok);
}

void criterion_9() {
  bool ok = true;
  long long checked = 0;
  for (int n = 1; n <= 5 && ok; ++n) {
    // nonempty subsets of {0..n-1} as bitmasks
    std::vector<std::vector<int>> subsets;
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> s;
      for (int v = 0; v < n; ++v)
        if (mask & (1 << v)) s.push_back(v);
      subsets.push_back(std::move(s));
    }
    int ns = static_cast<int>(subsets.size());
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> idx(k, 0);
      while (true) {
        std::vector<std::vector<int>> cover;
        for (int i = 0; i < k; ++i) cover.push_back(subsets[idx[i]]);
        if (check_rip(cover) != rip_oracle(cover)) ok = false;
        ++checked;
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == ns) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }
  report(9, "rip check matches brute-force evaluation on " + std::to_string(checked) +
                " ordered covers",
         ok);
}

void criterion_10() {
  std::mt19937 rng(107);
  std::uniform_int_distribution<int> nv(1, 2), half(0, 1), num(1, 12);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    int n = nv(rng);
    Poly p(n);
    for (int t = 0; t < 4; ++t) {
      Exponents e(n);
      for (int i = 0; i < n; ++i) e[i] = 2 * half(rng);
      p.add_term(std::move(e), Scalar(Rat(num(rng), 6)));
    }
    if (!soms_check(p)) {
      ok = false;
      break;
    }
    auto basis = default_gram_basis(p);
    if (dsos_decide(p, basis).status != DecideStatus::Found) ok = false;
    SdsosOptions opts;
    opts.dd_prepass = false;  // force the numeric path
    if (sdsos_decide(p, basis, opts).status != DecideStatus::Found) ok = false;
  }
  report(10, "soms acceptance implies dsos (exact) and sdsos (numeric) acceptance", ok);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::cout << (failures == 0 ? "all criteria passed" : "criteria failed") << "\n";
  return failures;
}
