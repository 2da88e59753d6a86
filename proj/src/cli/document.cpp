#include "indefsl/cli/document.hpp"

#include <cmath>
#include <limits>

#include "indefsl/error.hpp"

namespace indefsl::cli {

namespace {

Json interval_json(const sets::Interval& i) {
  if (i.is_point()) return Json{{"point", real_json(i.lo)}};
  return Json{{"lo", real_json(i.lo)}, {"hi", real_json(i.hi)}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}};
}

const char* bound_name(classify::Bound b) {
  switch (b) {
    case classify::Bound::below: return "below";
    case classify::Bound::above: return "above";
    case classify::Bound::none: return "none";
  }
  return "none";
}

}  // namespace

Json real_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double json_real(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a real number in document");
}

Json complex_json(std::complex<double> z) { return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}}; }

std::complex<double> json_complex(const Json& j) { return {json_real(j.at("re")), json_real(j.at("im"))}; }

Json to_json(const weyl::MValue& m) {
  return Json{{"lambda", complex_json(m.lambda)},
              {"value", complex_json(m.value)},
              {"error_bound", real_json(m.error_bound)},
              {"side", to_string(m.side)},
              {"kind", weyl::to_string(m.kind)},
              {"X", real_json(m.X)}};
}

Json to_json(const spectrum::EigenvalueSet& s) {
  Json pts = Json::array();
  for (const auto& p : s.points)
    pts.push_back(Json{{"value", complex_json(p.value)}, {"residual", real_json(p.residual)},
                       {"multiplicity", p.multiplicity}});
  return Json{{"method", spectrum::to_string(s.method)},
              {"region", Json{{"re_lo", s.region.re_lo}, {"re_hi", s.region.re_hi}, {"im_lo", s.region.im_lo},
                              {"im_hi", s.region.im_hi}}},
              {"points", pts}};
}

Json to_json(const sets::ExtendedRealSet& s) {
  Json parts = Json::array();
  for (const auto& p : s.parts()) parts.push_back(interval_json(p));
  return Json{{"text", s.to_string()}, {"parts", parts}, {"infinity", s.has_infinity()}};
}

sets::ExtendedRealSet extended_set_from_json(const Json& j) {
  std::vector<sets::Interval> parts;
  for (const auto& p : j.at("parts")) {
    if (p.contains("point")) {
      parts.push_back(sets::point(json_real(p.at("point"))));
    } else {
      parts.push_back({json_real(p.at("lo")), json_real(p.at("hi")), p.at("lo_closed").get<bool>(),
                       p.at("hi_closed").get<bool>()});
    }
  }
  return {std::move(parts), j.at("infinity").get<bool>()};
}

Json to_json(const sets::SpectralSet& s) {
  Json iv = Json::array(), pts = Json::array(), cl = Json::array();
  for (const auto& i : s.intervals) iv.push_back(Json{{"lo", real_json(i.lo)}, {"hi", real_json(i.hi)}});
  for (double p : s.points) pts.push_back(real_json(p));
  for (const auto& c : s.clusters)
    cl.push_back(Json{{"accumulates_to", real_json(c.limit)},
                      {"from", c.from == sets::Approach::from_below ? "below" : "above"}});
  return Json{{"intervals", iv}, {"points", pts}, {"clusters", cl}};
}

Json to_json(const classify::HalfLineSpectrumModel& m) {
  Json ess = Json::array();
  for (const auto& i : m.essential) ess.push_back(Json{{"lo", real_json(i.lo)}, {"hi", real_json(i.hi)}});
  Json n{{"infinite", m.n_bound.infinite}, {"rule", m.n_bound.rule}};
  if (!m.n_bound.infinite) n["count"] = m.n_bound.count;
  Json disc = Json::array();
  for (double v : m.discrete) disc.push_back(real_json(v));
  return Json{{"side", to_string(m.side)},
              {"provenance", m.provenance},
              {"essential", ess},
              {"discrete", disc},
              {"n_bound", n},
              {"semibounded", Json{{"kind", bound_name(m.semibounded.kind)}, {"value", real_json(m.semibounded.value)}}},
              {"spectrum", to_json(m.spectrum)},
              {"notes", m.notes}};
}

Json to_json(const classify::DefinitizabilityReport& r) {
  Json sep{{"separable", r.separation.separable}};
  if (r.separation.separable) {
    Json a = Json::array();
    for (double v : r.separation.alphas) a.push_back(real_json(v));
    sep["alphas"] = a;
    sep["even_intervals_hold"] = r.separation.first_even == 1 ? "plus" : "minus";
  } else {
    sep["witness"] = r.separation.witness;
    sep["witness_point"] = r.separation.witness_at_infinity ? Json("inf")
                           : r.separation.witness_point    ? real_json(*r.separation.witness_point)
                                                           : Json(nullptr);
  }
  Json out{{"verdict", classify::to_string(r.verdict)},
           {"S_A", to_json(r.S_A)},
           {"Omega_A", r.omega_description},
           {"Omega_A_real", to_json(r.omega_real)},
           {"critical_point_candidates", to_json(r.critical_point_candidates)},
           {"decomposition_available", r.decomposition_available},
           {"semibounded_below", r.semibounded_below},
           {"separation", sep},
           {"summable_case", r.summable_case ? Json(*r.summable_case) : Json(nullptr)},
           {"plus", to_json(r.plus)},
           {"minus", to_json(r.minus)},
           {"notes", r.notes}};
  return out;
}

Json to_json(const construction::StepDensityMeasure& m) {
  Json atoms = Json::array();
  for (std::size_t i = 0; i < m.atoms.size(); ++i) {
    Json a{{"k", i + 1}, {"s", m.atoms[i].s}, {"h", m.atoms[i].h}};
    if (i < m.aux.size()) {
      const auto& r = m.aux[i];
      a["sup_prev_sampled"] = r.sup_sampled;
      a["sup_prev_bound"] = r.sup_bound;
      a["margin"] = r.margin;
      a["b"] = r.b;
    }
    atoms.push_back(a);
  }
  return Json{{"density", "1/(pi sqrt(t)) on (1, inf)"}, {"atoms", atoms}, {"tail_mass", m.tail_mass}};
}

Json to_json(const construction::ZeroSequence& z) {
  Json roots = Json::array();
  for (std::size_t i = 0; i < z.eps.size(); ++i)
    roots.push_back(Json{{"k", i + 2},
                         {"eps", z.eps[i]},
                         {"residual", z.residual[i]},
                         {"bracket", Json::array({z.brackets[i].first, z.brackets[i].second})}});
  return roots;
}

Json to_json(const construction::Certificate& c) {
  Json clauses = Json::array();
  for (const auto& cl : c.clauses)
    clauses.push_back(Json{{"id", cl.id}, {"passed", cl.passed}, {"statement", cl.statement}, {"detail", cl.detail}});
  return Json{{"valid", c.valid}, {"S_A", to_json(c.S_A)}, {"Omega_A", c.omega_description}, {"clauses", clauses}};
}

Json make_document(const std::string& command, Json inputs, Json tolerances, Json outputs) {
  return Json{{"command", command},
              {"tool", Json{{"name", tool_name}, {"version", tool_version}}},
              {"inputs", std::move(inputs)},
              {"tolerances", std::move(tolerances)},
              {"outputs", std::move(outputs)}};
}

std::string serialize(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace indefsl::cli
