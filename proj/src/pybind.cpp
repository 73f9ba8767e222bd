#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "certkit/bounds.hpp"
#include "certkit/io.hpp"
#include "certkit/sizes.hpp"
#include "certkit/verify.hpp"

namespace py = pybind11;
using namespace certkit;
using nlohmann::json;

// The module speaks JSON strings; the python package turns them into dicts.
namespace {

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

std::string py_certify(const std::string& problem, bool exact) {
  ProblemSpec spec = problem_from_json(json::parse(problem));
  SearchReport report = search(spec);
  json out;
  out["outcomes"] = json::array();
  for (const auto& o : report.outcomes)
    out["outcomes"].push_back({{"d", o.d}, {"status", status_name(o.status)}, {"note", o.note}});
  out["found"] = false;
  if (report.certificate) {
    Certificate cert = *report.certificate;
    if (exact && cert.approximate) {
      auto fixed = rationalize(cert, spec);
      if (!fixed) return out.dump();
      cert = *fixed;
    }
    out["found"] = true;
    out["certificate"] = certificate_to_json(cert, spec);
  }
  return out.dump();
}

std::string py_verify(const std::string& problem, const std::string& certificate, bool exact,
                      double tol) {
  ProblemSpec spec = problem_from_json(json::parse(problem));
  Certificate cert = certificate_from_json(json::parse(certificate), spec);
  VerifyReport rep = verify_certificate(spec, cert, exact, tol);
  json out{{"ok", rep.ok},
           {"identity_ok", rep.identity_ok},
           {"witnesses_ok", rep.witnesses_ok},
           {"residual_terms", rep.residual.term_count()},
           {"error", rep.error}};
  out["slots"] = json::array();
  for (const auto& sr : rep.slot_results)
    out["slots"].push_back({{"role", slot_role_to_string(sr.role)},
                            {"clique", sr.clique < 0 ? json() : json(sr.clique + 1)},
                            {"constraint", sr.constraint < 0 ? json() : json(sr.constraint + 1)},
                            {"ok", sr.ok},
                            {"detail", sr.detail}});
  return out.dump();
}

std::string py_sizes(const std::string& shape, int n, int d, int m, bool chain_cover) {
  TemplateShape ts = shape == "merged" ? TemplateShape::Merged : TemplateShape::Split;
  std::optional<Cover> cover;
  if (chain_cover) cover = rosenbrock_cover(n);
  SizeReport rep = template_sizes(ts, n, d, m, cover);
  json out{{"row", size_report_row(rep)},
           {"gram", {rep.gram_nonsparse, rep.gram_semisparse, rep.gram_fullysparse}},
           {"monomials", {rep.mono_nonsparse, rep.mono_semisparse, rep.mono_fullysparse}}};
  return out.dump();
}

double py_ball_bound(const std::string& g, const std::vector<std::string>& vars,
                     const std::string& r) {
  return ball_bound(parse_poly(g, vars), scalar_from_string(r));
}

std::string py_cover(const std::string& p, const std::vector<std::string>& gs,
                     const std::vector<std::string>& vars) {
  Poly pp = parse_poly(p, vars);
  std::vector<Poly> gps;
  for (const auto& g : gs) gps.push_back(parse_poly(g, vars));
  Cover cover = build_cover(pp, gps);
  json out;
  out["cliques"] = json::array();
  for (const auto& cl : cover.cliques) {
    json jc = json::array();
    for (int v : cl) jc.push_back(v + 1);
    out["cliques"].push_back(jc);
  }
  out["assign"] = json::array();
  for (int a : cover.assign) out["assign"].push_back(a + 1);
  out["rip"] = check_rip(cover.cliques);
  return out.dump();
}

std::string py_rho_schedule(const std::string& eps, const std::string& M,
                            const std::string& delta, const std::string& U, int m) {
  auto s = rho_schedule(rat_from_string(eps), rat_from_string(M), rat_from_string(delta),
                        rat_from_string(U), m);
  json out{{"d", s.d}, {"c", rat_to_string(s.c)}, {"d_hat", s.d_hat}};
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_certkit, mod) {
  mod.doc() = "certkit core bindings (JSON string interface)";
  mod.def("certify", &py_certify, py::arg("problem"), py::arg("exact") = true);
  mod.def("verify", &py_verify, py::arg("problem"), py::arg("certificate"),
          py::arg("exact") = true, py::arg("tol") = 1e-8);
  mod.def("sizes", &py_sizes, py::arg("shape"), py::arg("n"), py::arg("d"), py::arg("m"),
          py::arg("chain_cover") = false);
  mod.def("ball_bound", &py_ball_bound, py::arg("g"), py::arg("vars"), py::arg("r"));
  mod.def("cover", &py_cover, py::arg("p"), py::arg("constraints"), py::arg("vars"));
  mod.def("rho_schedule", &py_rho_schedule, py::arg("eps"), py::arg("M"), py::arg("delta"),
          py::arg("U"), py::arg("m"));
}
