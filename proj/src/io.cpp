#include "certkit/io.hpp"

#include <fstream>

namespace certkit {

using nlohmann::json;

Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(Rat(j.get<long long>()));
  if (j.is_number_float()) return Scalar(Rat(j.get<double>()));  // exact binary value
  if (j.is_string()) return scalar_from_string(j.get<std::string>());
  throw std::invalid_argument("expected a number or scalar string");
}

json scalar_to_json(const Scalar& v) { return v.str(); }

namespace {

Rat rat_from_json(const json& j) {
  Scalar s = scalar_from_json(j);
  if (!s.is_rational()) throw std::invalid_argument("expected a rational value");
  return s.rational_part();
}

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument("problem field '" + field + "': " + what);
}

}  // namespace

ProblemSpec problem_from_json(const json& j) {
  ProblemSpec spec;
  if (!j.is_object()) throw std::invalid_argument("problem file must be a JSON object");
  if (!j.contains("vars") || !j["vars"].is_array() || j["vars"].empty())
    field_error("vars", "need a nonempty array of variable names");
  std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
  spec.n = static_cast<int>(vars.size());

  if (!j.contains("p") || !j["p"].is_string()) field_error("p", "need a polynomial string");
  try {
    spec.p = parse_poly(j["p"].get<std::string>(), vars);
  } catch (const std::exception& e) {
    field_error("p", e.what());
  }

  if (j.contains("constraints")) {
    if (!j["constraints"].is_array()) field_error("constraints", "need an array");
    for (size_t idx = 0; idx < j["constraints"].size(); ++idx) {
      const auto& cj = j["constraints"][idx];
      std::string where = "constraints[" + std::to_string(idx) + "]";
      if (!cj.is_object() || !cj.contains("g")) field_error(where, "need {\"g\": ...}");
      ConstraintSpec c;
      try {
        c.g = parse_poly(cj["g"].get<std::string>(), vars);
      } catch (const std::exception& e) {
        field_error(where + ".g", e.what());
      }
      if (cj.contains("U") && !(cj["U"].is_string() && cj["U"] == "auto"))
        c.U = scalar_from_json(cj["U"]);
      spec.constraints.push_back(std::move(c));
    }
  }

  if (!j.contains("geometry") || !j["geometry"].is_object())
    field_error("geometry", "need {\"ball\": r} or {\"cover\": {...}}");
  const auto& gj = j["geometry"];
  if (gj.contains("ball")) {
    spec.geometry.sparse = false;
    spec.geometry.r = scalar_from_json(gj["ball"]);
  } else if (gj.contains("cover")) {
    spec.geometry.sparse = true;
    const auto& cov = gj["cover"];
    if (!cov.contains("cliques") || !cov["cliques"].is_array())
      field_error("geometry.cover.cliques", "need an array of index arrays");
    for (const auto& cl : cov["cliques"]) {
      std::vector<int> clique;
      for (const auto& v : cl) {
        int idx = v.get<int>();
        if (idx < 1 || idx > spec.n)
          field_error("geometry.cover.cliques", "1-based index out of range");
        clique.push_back(idx - 1);
      }
      std::sort(clique.begin(), clique.end());
      spec.geometry.cover.cliques.push_back(std::move(clique));
    }
    if (cov.contains("radii")) {
      if (cov["radii"].is_array()) {
        for (const auto& r : cov["radii"])
          spec.geometry.cover.radii.push_back(scalar_from_json(r));
      } else {
        spec.geometry.cover.radii.assign(spec.geometry.cover.cliques.size(),
                                         scalar_from_json(cov["radii"]));  // broadcast
      }
    }
    if (cov.contains("assign")) {
      const auto& aj = cov["assign"];
      if (aj.is_array()) {
        for (const auto& a : aj) spec.geometry.cover.assign.push_back(a.get<int>() - 1);
      } else if (aj.is_object()) {
        spec.geometry.cover.assign.assign(spec.constraints.size(), -1);
        for (auto it = aj.begin(); it != aj.end(); ++it) {
          std::string key = it.key();  // "g1", "g2", ...
          if (key.size() < 2 || key[0] != 'g')
            field_error("geometry.cover.assign", "keys must look like \"g1\"");
          int cidx = std::stoi(key.substr(1)) - 1;
          if (cidx < 0 || cidx >= static_cast<int>(spec.constraints.size()))
            field_error("geometry.cover.assign", "constraint key out of range");
          spec.geometry.cover.assign[cidx] = it.value().get<int>() - 1;
        }
      }
    }
    if (spec.geometry.cover.radii.empty())
      spec.geometry.cover.radii.assign(spec.geometry.cover.cliques.size(), Scalar(1));
    if (spec.geometry.cover.assign.empty()) {
      // default: first clique containing the constraint's support
      for (const auto& c : spec.constraints) {
        int where = -1;
        auto supp = c.g.support();
        for (int l = 0; l < spec.geometry.cover.k() && where < 0; ++l) {
          const auto& cl = spec.geometry.cover.cliques[l];
          bool fits = true;
          for (int v : supp)
            if (!std::count(cl.begin(), cl.end(), v)) fits = false;
          if (fits) where = l;
        }
        spec.geometry.cover.assign.push_back(where);
      }
    }
  } else {
    field_error("geometry", "need either \"ball\" or \"cover\"");
  }

  if (j.contains("cone")) spec.cone = cone_class_from_string(j["cone"].get<std::string>());
  if (j.contains("shape")) spec.shape = shape_from_string(j["shape"].get<std::string>());
  if (j.contains("d_max")) spec.d_max = j["d_max"].get<int>();
  if (spec.d_max < 0) field_error("d_max", "must be nonnegative");

  spec.validate();
  return spec;
}

std::vector<std::string> slot_names_for(const Slot& slot, const ProblemSpec& spec) {
  if (spec.shape == Shape::Simple) return x_var_names(spec.n);
  if (slot.role == SlotRole::Rho) return {"u"};
  return slot_var_names((slot.arity - 1) / 2);
}

namespace {

json exps_to_json(const Exponents& e) { return json(e); }

Exponents exps_from_json(const json& j, int arity) {
  Exponents e = j.get<Exponents>();
  if (static_cast<int>(e.size()) != arity)
    throw std::invalid_argument("exponent arity mismatch in witness");
  return e;
}

json witness_to_json(const Witness& w) {
  json out;
  if (const auto* soms = std::get_if<SomsWitness>(&w)) {
    out["type"] = "soms";
    out["terms"] = json::array();
    for (const auto& [e, weight] : soms->terms)
      out["terms"].push_back({{"exps", exps_to_json(e)}, {"weight", scalar_to_json(weight)}});
  } else if (const auto* gram = std::get_if<GramWitness>(&w)) {
    out["type"] = "gram";
    out["flavor"] = gram->flavor == GramWitness::Flavor::DD ? "dd" : "sdd";
    out["approximate"] = gram->approximate;
    out["basis"] = json::array();
    for (const auto& e : gram->basis) out["basis"].push_back(exps_to_json(e));
    out["Q"] = json::array();
    for (const auto& row : gram->Q) {
      json jr = json::array();
      for (const auto& v : row) jr.push_back(scalar_to_json(v));
      out["Q"].push_back(jr);
    }
    out["blocks"] = json::array();
    for (const auto& b : gram->blocks)
      out["blocks"].push_back({{"i", b.i},
                               {"j", b.j},
                               {"d_i", scalar_to_json(b.d_i)},
                               {"d_j", scalar_to_json(b.d_j)},
                               {"t", scalar_to_json(b.t)}});
  } else {
    const auto& cw = std::get<CircuitWitness>(w);
    out["type"] = "circuit";
    out["circuits"] = json::array();
    for (const auto& c : cw.circuits) {
      json jc;
      jc["vertices"] = json::array();
      for (const auto& [e, coeff] : c.vertices)
        jc["vertices"].push_back({{"exps", exps_to_json(e)}, {"coeff", scalar_to_json(coeff)}});
      jc["beta"] = exps_to_json(c.beta);
      jc["inner"] = scalar_to_json(c.inner_coeff);
      jc["lambda"] = json::array();
      for (const auto& l : c.lambda) jc["lambda"].push_back(rat_to_string(l));
      out["circuits"].push_back(jc);
    }
  }
  return out;
}

Witness witness_from_json(const json& j, int arity) {
  std::string type = j.value("type", "soms");
  if (type == "soms") {
    SomsWitness w;
    for (const auto& t : j.value("terms", json::array()))
      w.terms.emplace_back(exps_from_json(t.at("exps"), arity), scalar_from_json(t.at("weight")));
    return w;
  }
  if (type == "gram") {
    GramWitness w;
    w.flavor = j.value("flavor", "dd") == "sdd" ? GramWitness::Flavor::SDD
                                                : GramWitness::Flavor::DD;
    w.approximate = j.value("approximate", false);
    for (const auto& e : j.at("basis")) w.basis.push_back(exps_from_json(e, arity));
    for (const auto& row : j.at("Q")) {
      std::vector<Scalar> r;
      for (const auto& v : row) r.push_back(scalar_from_json(v));
      w.Q.push_back(std::move(r));
    }
    for (const auto& b : j.value("blocks", json::array()))
      w.blocks.push_back({b.at("i").get<int>(), b.at("j").get<int>(),
                          scalar_from_json(b.at("d_i")), scalar_from_json(b.at("d_j")),
                          scalar_from_json(b.at("t"))});
    return w;
  }
  if (type == "circuit") {
    CircuitWitness w;
    for (const auto& jc : j.at("circuits")) {
      Circuit c;
      for (const auto& v : jc.at("vertices"))
        c.vertices.emplace_back(exps_from_json(v.at("exps"), arity),
                                scalar_from_json(v.at("coeff")));
      c.beta = exps_from_json(jc.at("beta"), arity);
      c.inner_coeff = scalar_from_json(jc.at("inner"));
      for (const auto& l : jc.at("lambda")) {
        Scalar s = scalar_from_json(l);
        if (!s.is_rational()) throw std::invalid_argument("lambda must be rational");
        c.lambda.push_back(s.rational_part());
      }
      w.circuits.push_back(std::move(c));
    }
    return w;
  }
  throw std::invalid_argument("unknown witness type '" + type + "'");
}

json geometry_to_json(const Geometry& g) {
  json out;
  if (!g.sparse) {
    out["ball"] = scalar_to_json(g.r);
    return out;
  }
  json cov;
  cov["cliques"] = json::array();
  for (const auto& cl : g.cover.cliques) {
    json jc = json::array();
    for (int v : cl) jc.push_back(v + 1);
    cov["cliques"].push_back(jc);
  }
  cov["radii"] = json::array();
  for (const auto& r : g.cover.radii) cov["radii"].push_back(scalar_to_json(r));
  cov["assign"] = json::array();
  for (int a : g.cover.assign) cov["assign"].push_back(a + 1);
  out["cover"] = cov;
  return out;
}

}  // namespace

json certificate_to_json(const Certificate& cert, const ProblemSpec& spec) {
  CertificateTemplate tmpl = build_template(spec, cert.degree);
  json out;
  out["geometry"] = geometry_to_json(cert.geometry);
  out["cone"] = cone_class_to_string(cert.cone);
  out["shape"] = shape_to_string(cert.shape);
  out["degree"] = cert.degree;
  out["provenance"] = cert.provenance;
  out["approximate"] = cert.approximate;
  out["slots"] = json::array();
  for (const auto& cs : cert.slots) {
    // find the matching template slot to name the variables
    const Slot* slot = nullptr;
    for (const auto& ts : tmpl.slots)
      if (ts.role == cs.role && ts.clique == cs.clique && ts.constraint == cs.constraint)
        slot = &ts;
    if (!slot) throw std::invalid_argument("certificate slot does not fit the template");
    json js;
    js["role"] = slot_role_to_string(cs.role);
    if (cs.clique >= 0) js["clique"] = cs.clique + 1;
    if (cs.constraint >= 0) js["constraint"] = cs.constraint + 1;
    js["poly"] = poly_to_string(cs.poly, slot_names_for(*slot, spec));
    js["witness"] = witness_to_json(cs.witness);
    out["slots"].push_back(js);
  }
  return out;
}

Certificate certificate_from_json(const json& j, const ProblemSpec& spec) {
  Certificate cert;
  cert.geometry = spec.geometry;
  cert.cone = j.contains("cone") ? cone_class_from_string(j["cone"].get<std::string>())
                                 : spec.cone;
  cert.shape = j.contains("shape") ? shape_from_string(j["shape"].get<std::string>())
                                   : spec.shape;
  cert.degree = j.at("degree").get<int>();
  cert.provenance = j.value("provenance", "supplied");
  cert.approximate = j.value("approximate", false);

  CertificateTemplate tmpl = build_template(spec, cert.degree);
  for (const auto& js : j.at("slots")) {
    CertSlot cs;
    cs.role = slot_role_from_string(js.at("role").get<std::string>());
    cs.clique = js.contains("clique") ? js["clique"].get<int>() - 1 : -1;
    cs.constraint = js.contains("constraint") ? js["constraint"].get<int>() - 1 : -1;
    const Slot* slot = nullptr;
    for (const auto& ts : tmpl.slots)
      if (ts.role == cs.role && ts.clique == cs.clique && ts.constraint == cs.constraint)
        slot = &ts;
    if (!slot) throw std::invalid_argument("certificate slot does not fit the template");
    cs.poly = parse_poly(js.at("poly").get<std::string>(), slot_names_for(*slot, spec));
    cs.witness = witness_from_json(js.at("witness"), slot->arity);
    cert.slots.push_back(std::move(cs));
  }
  return cert;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read problem file: " + path);
  json j;
  in >> j;
  return problem_from_json(j);
}

Certificate load_certificate(const std::string& path, const ProblemSpec& spec) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read certificate file: " + path);
  json j;
  in >> j;
  return certificate_from_json(j, spec);
}

void save_certificate(const std::string& path, const Certificate& cert,
                      const ProblemSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write certificate file: " + path);
  out << certificate_to_json(cert, spec).dump(2) << "\n";
}

}  // namespace certkit
