#include <CLI11.hpp>
#include <iostream>

#include "certkit/bounds.hpp"
#include "certkit/io.hpp"
#include "certkit/sizes.hpp"
#include "certkit/verify.hpp"

using namespace certkit;

namespace {

constexpr int kExitNotFound = 1;
constexpr int kExitResidual = 2;
constexpr int kExitWitness = 3;
constexpr int kExitUsage = 64;

const char* status_name(DecideStatus s) {
  switch (s) {
    case DecideStatus::Found: return "found";
    case DecideStatus::Infeasible: return "infeasible";
    case DecideStatus::NotFound: return "not-found";
    case DecideStatus::NonConverged: return "non-converged";
    case DecideStatus::Unsupported: return "unsupported";
  }
  return "?";
}

int run_certify(const std::string& problem_path, bool exact, const std::string& out_path) {
  ProblemSpec spec = load_problem(problem_path);
  SearchOptions opts;
  SearchReport report = search(spec, opts);

  for (const auto& o : report.outcomes)
    std::cerr << "d=" << o.d << ": " << status_name(o.status)
              << (o.note.empty() ? "" : " (" + o.note + ")") << "\n";

  if (!report.certificate) {
    std::cout << "no certificate up to d_max=" << spec.d_max << "\n";
    return kExitNotFound;
  }
  Certificate cert = *report.certificate;
  if (exact && cert.approximate) {
    if (auto fixed = rationalize(cert, spec)) {
      cert = *fixed;
    } else {
      std::cout << "only a float certificate exists at d=" << cert.degree
                << " and rationalization failed\n";
      return kExitNotFound;
    }
  }
  std::cout << "certificate found at d=" << cert.degree
            << (cert.approximate ? " (approximate)" : " (exact)") << "\n";
  if (!out_path.empty()) save_certificate(out_path, cert, spec);
  return 0;
}

int run_verify(const std::string& problem_path, const std::string& cert_path,
               const std::string& mode) {
  ProblemSpec spec = load_problem(problem_path);
  Certificate cert = load_certificate(cert_path, spec);
  bool exact = mode != "float";
  VerifyReport rep = verify_certificate(spec, cert, exact);
  if (!rep.error.empty()) {
    std::cerr << "error: " << rep.error << "\n";
    return kExitUsage;
  }
  std::cout << "identity: " << (rep.identity_ok ? "ok" : "FAIL") << ", residual terms: "
            << rep.residual.term_count() << "\n";
  for (const auto& sr : rep.slot_results) {
    std::cout << "slot " << slot_role_to_string(sr.role);
    if (sr.clique >= 0) std::cout << " clique " << sr.clique + 1;
    if (sr.constraint >= 0) std::cout << " g" << sr.constraint + 1;
    std::cout << ": " << (sr.ok ? "ok" : "FAIL")
              << (sr.detail.empty() ? "" : " (" + sr.detail + ")") << "\n";
  }
  if (!rep.identity_ok) return kExitResidual;
  if (!rep.witnesses_ok) return kExitWitness;
  return 0;
}

int run_sizes(const std::string& shape_name, int n, int d, int m, const std::string& preset) {
  TemplateShape shape = shape_name == "merged" ? TemplateShape::Merged : TemplateShape::Split;
  std::optional<Cover> cover;
  if (preset == "rosenbrock") {
    cover = rosenbrock_cover(n);
    if (m < 0) m = 2 * n;
  }
  if (m < 0) m = 0;
  SizeReport rep = template_sizes(shape, n, d, m, cover);
  std::cout << size_report_row(rep) << "\n";
  nlohmann::json j{{"shape", shape_name},
                   {"n", n},
                   {"d", d},
                   {"m", m},
                   {"gram", {rep.gram_nonsparse, rep.gram_semisparse, rep.gram_fullysparse}},
                   {"monomials", {rep.mono_nonsparse, rep.mono_semisparse, rep.mono_fullysparse}}};
  std::cerr << j.dump() << "\n";
  return 0;
}

int run_bound(const std::string& problem_path) {
  ProblemSpec spec = load_problem(problem_path);
  for (size_t j = 0; j < spec.constraints.size(); ++j) {
    Scalar r = spec.geometry.sparse ? spec.geometry.cover.radii[spec.geometry.cover.assign[j]]
                                    : spec.geometry.r;
    std::cout << "g" << j + 1 << ": " << ball_bound(spec.constraints[j].g, r) << "\n";
  }
  if (spec.constraints.empty()) std::cout << "no constraints\n";
  return 0;
}

int run_cover(const std::string& problem_path) {
  ProblemSpec spec = load_problem(problem_path);
  std::vector<Poly> gs;
  for (const auto& c : spec.constraints) gs.push_back(c.g);
  Cover cover = build_cover(spec.p, gs);
  std::cout << "cliques:";
  for (const auto& cl : cover.cliques) {
    std::cout << " {";
    for (size_t i = 0; i < cl.size(); ++i) std::cout << (i ? "," : "") << cl[i] + 1;
    std::cout << "}";
  }
  std::cout << "\nrip: " << (check_rip(cover.cliques) ? "true" : "false") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certkit: build and verify nonnegativity certificates"};
  app.require_subcommand(1);

  std::string problem_path, cert_path, out_path, mode = "exact";
  bool flag_exact = false, flag_float = false;

  auto* certify = app.add_subcommand("certify", "search for a certificate");
  certify->add_option("problem", problem_path, "problem JSON file")->required();
  certify->add_flag("--exact", flag_exact, "require an exact certificate");
  certify->add_flag("--float", flag_float, "accept a float certificate");
  certify->add_option("--out", out_path, "write the certificate JSON here");

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("problem", problem_path, "problem JSON file")->required();
  verify->add_option("certificate", cert_path, "certificate JSON file")->required();
  verify->add_option("--mode", mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));

  std::string shape_name = "split", preset;
  int n = 1, d = 0, m = -1;
  auto* sizes = app.add_subcommand("sizes", "template size table rows");
  sizes->add_option("--shape", shape_name)->check(CLI::IsMember({"split", "merged"}));
  sizes->add_option("--n", n, "variable count")->required();
  sizes->add_option("--d", d, "degree parameter")->required();
  sizes->add_option("--m", m, "constraint count");
  sizes->add_option("--preset", preset)->check(CLI::IsMember({"rosenbrock"}));

  auto* bound = app.add_subcommand("bound", "ball bounds per constraint");
  bound->add_option("problem", problem_path)->required();

  auto* cover = app.add_subcommand("cover", "inferred sparsity cover");
  cover->add_option("problem", problem_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : 0;
  }

  try {
    if (certify->parsed()) return run_certify(problem_path, flag_exact && !flag_float, out_path);
    if (verify->parsed()) return run_verify(problem_path, cert_path, mode);
    if (sizes->parsed()) return run_sizes(shape_name, n, d, m, preset);
    if (bound->parsed()) return run_bound(problem_path);
    if (cover->parsed()) return run_cover(problem_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
