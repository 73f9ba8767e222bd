#include "certkit/verify.hpp"

#include <cmath>

namespace certkit {

namespace {

// template slot -> certificate slot pairing by (role, clique, constraint)
std::optional<std::vector<int>> match_slots(const CertificateTemplate& tmpl,
                                            const Certificate& cert, std::string& error) {
  std::vector<int> match(tmpl.slots.size(), -1);
  std::vector<bool> used(cert.slots.size(), false);
  for (size_t t = 0; t < tmpl.slots.size(); ++t) {
    for (size_t c = 0; c < cert.slots.size(); ++c) {
      if (used[c]) continue;
      if (cert.slots[c].role == tmpl.slots[t].role &&
          cert.slots[c].clique == tmpl.slots[t].clique &&
          cert.slots[c].constraint == tmpl.slots[t].constraint) {
        match[t] = static_cast<int>(c);
        used[c] = true;
        break;
      }
    }
    if (match[t] < 0) {
      error = "certificate is missing the " + slot_role_to_string(tmpl.slots[t].role) + " slot";
      return std::nullopt;
    }
  }
  for (size_t c = 0; c < cert.slots.size(); ++c)
    if (!used[c]) {
      error = "certificate has a slot the template does not";
      return std::nullopt;
    }
  return match;
}

}  // namespace

VerifyReport verify_certificate(const ProblemSpec& spec, const Certificate& cert,
                                bool exact_mode, double tol) {
  VerifyReport rep;
  rep.exact_mode = exact_mode;
  rep.tolerance = exact_mode ? 0.0 : tol;

  CertificateTemplate tmpl = build_template(spec, cert.degree);
  auto match = match_slots(tmpl, cert, rep.error);
  if (!match) return rep;

  // independent expansion through substitute(), not the builder's columns
  Poly total(spec.n);
  for (size_t t = 0; t < tmpl.slots.size(); ++t) {
    const Slot& slot = tmpl.slots[t];
    const CertSlot& cs = cert.slots[(*match)[t]];
    if (cs.poly.nvars() != slot.arity) {
      rep.error = "slot arity mismatch";
      return rep;
    }
    if (cs.poly.degree() > slot.max_deg) {
      rep.error = "slot degree exceeds the template cap";
      return rep;
    }
    if (!cs.poly.is_zero()) total += cs.poly.substitute(slot.args) * slot.multiplier;
  }
  rep.residual = total - spec.p;

  if (exact_mode) {
    rep.identity_ok = rep.residual.is_zero();
  } else {
    rep.identity_ok = true;
    for (const auto& [e, c] : rep.residual.terms())
      if (std::fabs(c.to_double()) > tol) rep.identity_ok = false;
  }

  rep.witnesses_ok = true;
  double wtol = exact_mode ? 0.0 : tol;
  for (size_t t = 0; t < tmpl.slots.size(); ++t) {
    const CertSlot& cs = cert.slots[(*match)[t]];
    SlotResult sr;
    sr.role = cs.role;
    sr.clique = cs.clique;
    sr.constraint = cs.constraint;
    if (cert.cone == ConeClass::SageUnsupported) {
      sr.ok = true;
      sr.detail = "unchecked - unsupported cone";
    } else if (cert.cone == ConeClass::SosExternal) {
      // identity between slot poly and its Gram is checked; PSD is not
      const auto* gram = std::get_if<GramWitness>(&cs.witness);
      if (!gram) {
        sr.detail = "sos-external slot needs a Gram witness";
      } else {
        Poly recon(cs.poly.nvars());
        int nb = static_cast<int>(gram->basis.size());
        for (int i = 0; i < nb; ++i)
          for (int j = 0; j < nb; ++j) {
            if (gram->Q[i][j].is_zero()) continue;
            Exponents e(cs.poly.nvars());
            for (int k = 0; k < cs.poly.nvars(); ++k)
              e[k] = gram->basis[i][k] + gram->basis[j][k];
            recon.add_term(std::move(e), gram->Q[i][j]);
          }
        sr.ok = (recon - cs.poly).is_zero();
        sr.detail = sr.ok ? "psd unchecked - external cone" : "Gram reconstruction mismatch";
      }
    } else {
      auto wr = verify_witness(cs.poly, cs.witness, wtol);
      sr.ok = wr.ok;
      sr.detail = wr.detail;
    }
    if (!sr.ok) rep.witnesses_ok = false;
    rep.slot_results.push_back(std::move(sr));
  }

  rep.ok = rep.identity_ok && rep.witnesses_ok;
  return rep;
}

double spot_check(const ProblemSpec& spec, const Certificate& cert,
                  const std::vector<std::vector<double>>& points) {
  CertificateTemplate tmpl = build_template(spec, cert.degree);
  std::string err;
  auto match = match_slots(tmpl, cert, err);
  if (!match) throw std::invalid_argument("spot_check: " + err);

  DPoly pd = to_double_poly(spec.p);
  double worst = 0.0;
  for (const auto& pt : points) {
    double rhs = 0.0;
    for (size_t t = 0; t < tmpl.slots.size(); ++t) {
      const Slot& slot = tmpl.slots[t];
      const CertSlot& cs = cert.slots[(*match)[t]];
      if (cs.poly.is_zero()) continue;
      std::vector<double> args(slot.args.size());
      for (size_t a = 0; a < slot.args.size(); ++a)
        args[a] = to_double_poly(slot.args[a]).evaluate<double>(pt);
      rhs += to_double_poly(cs.poly).evaluate<double>(args) *
             to_double_poly(slot.multiplier).evaluate<double>(pt);
    }
    worst = std::max(worst, std::fabs(rhs - pd.evaluate<double>(pt)));
  }
  return worst;
}

}  // namespace certkit
