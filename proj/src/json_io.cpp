#include "prymkit/json_io.hpp"

#include <sstream>

namespace prymkit {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw PreconditionError(std::string("missing JSON field \"") + key + "\"");
  }
  return j.at(key);
}

template <class T, class F>
std::vector<T> list_from_json(const Json& j, F&& parse) {
  if (!j.is_array()) throw PreconditionError("expected a JSON array");
  std::vector<T> out;
  for (const auto& e : j) out.push_back(parse(e));
  return out;
}

Json poly_to_json(const MQPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

MQPoly poly_from_json(const Json& j) {
  return MQPoly(list_from_json<Scalar>(j, scalar_from_json));
}

std::int64_t int_from_json(const Json& j) {
  if (!j.is_number_integer()) throw PreconditionError("expected an integer");
  return j.get<std::int64_t>();
}

Json integers(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

}  // namespace

Json to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const Json& j) {
  if (!j.is_string()) throw PreconditionError("rationals must be JSON strings");
  return Rat::parse(j.get<std::string>());
}

Json to_json(const Scalar& s) {
  if (s.is_rational()) return s.to_rat().str();
  Json coords = Json::object();
  for (std::size_t mask = 0; mask < s.dimension(); ++mask) {
    if (s.coord(mask).is_zero()) continue;
    std::string key;
    for (std::size_t i = 0; i < s.gens().size(); ++i) {
      if ((mask >> i & 1U) == 0) continue;
      if (!key.empty()) key += ",";
      key += std::to_string(i);
    }
    coords[key] = s.coord(mask).str();
  }
  return Json{{"gens", s.gens()}, {"coords", coords}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar(rat_from_json(j));
  std::vector<Integer> gens;
  for (const auto& g : field(j, "gens")) gens.emplace_back(int_from_json(g));
  if (gens.size() > 16) throw PreconditionError("too many generators");
  std::vector<Rat> coords(std::size_t{1} << gens.size(), Rat(0));
  const Json& cj = field(j, "coords");
  if (!cj.is_object()) throw PreconditionError("coords must be an object");
  for (const auto& [key, value] : cj.items()) {
    std::size_t mask = 0;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(part);
      } catch (const std::exception&) {
        throw PreconditionError("bad coordinate key \"" + key + "\"");
      }
      if (idx >= gens.size()) throw PreconditionError("bad coordinate key \"" + key + "\"");
      mask |= std::size_t{1} << idx;
    }
    coords[mask] = rat_from_json(value);
  }
  return MQElem::from_coords(gens, coords);
}

Json to_json(const HyperCurve& c) {
  Json roots = Json::array();
  for (const auto& r : c.roots()) roots.push_back(to_json(r));
  return Json{{"lead", to_json(c.lead())}, {"roots", roots}};
}

HyperCurve curve_from_json(const Json& j) {
  return make_curve(list_from_json<Scalar>(field(j, "roots"), scalar_from_json),
                    scalar_from_json(field(j, "lead")));
}

Json to_json(const CurvePoint& p) {
  if (p.at_infinity) return Json{{"infinity", true}};
  return Json{{"x", to_json(p.x)}, {"y", to_json(p.y)}};
}

CurvePoint point_from_json(const Json& j) {
  if (j.is_object() && j.contains("infinity")) return CurvePoint::infinity();
  return CurvePoint::affine(scalar_from_json(field(j, "x")), scalar_from_json(field(j, "y")));
}

Json to_json(const PlaceSet& s) {
  Json a = Json::array();
  for (auto p : s.finite()) a.push_back(p);
  return a;
}

PlaceSet places_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("S must be a JSON array of primes");
  std::set<std::int64_t> ps;
  for (const auto& e : j) ps.insert(int_from_json(e));
  return PlaceSet(ps);
}

Json to_json(const CoverCertificate& c, const CertificateChecks& checks) {
  Json beta = Json::array();
  for (const auto& b : c.tuple.betas) beta.push_back(to_json(b));
  return Json{{"h", poly_to_json(c.h)},
              {"F", poly_to_json(c.f_poly)},
              {"beta", beta},
              {"P", to_json(c.tuple.base.p)},
              {"Q", to_json(c.tuple.base.q)},
              {"checks",
               {{"identity", checks.identity},
                {"degree", checks.degree},
                {"h_at_P", checks.h_at_p},
                {"h_at_Q", checks.h_at_q}}},
              {"status", checks.all() ? "verified" : "failed"}};
}

CoverCertificate certificate_from_json(const HyperCurve& c, const Json& j) {
  BetaTuple t{CoverBase{c, point_from_json(field(j, "P")), point_from_json(field(j, "Q"))},
              list_from_json<Scalar>(field(j, "beta"), scalar_from_json)};
  return CoverCertificate{std::move(t), poly_from_json(field(j, "h")),
                          poly_from_json(field(j, "F"))};
}

Json to_json(const PrymCheckReport& r) {
  return Json{{"p", r.p},
              {"nonresidue", r.nonresidue},
              {"counts",
               {{"C", integers(r.counts_c)},
                {"Ctilde", integers(r.counts_ctilde)},
                {"X_twist1", integers(r.counts_x_one)},
                {"X_twistns", integers(r.counts_x_ns)}}},
              {"orders",
               {{"C", r.order_c.get_str()},
                {"Ctilde", r.order_ctilde.get_str()},
                {"X_twist1", r.order_x_one.get_str()},
                {"X_twistns", r.order_x_ns.get_str()}}},
              {"matched_twist", to_string(r.matched)}};
}

Json to_json(const BinaryForm& f) {
  if (!f.is_split()) {
    Json a = Json::array();
    for (const auto& c : f.coefficients()) a.push_back(to_json(c));
    return Json{{"degree", f.degree()}, {"coeffs", a}};
  }
  Json fs = Json::array();
  for (const auto& l : f.factors()) fs.push_back(Json::array({to_json(l.delta), to_json(l.gamma)}));
  return Json{{"degree", f.degree()}, {"lambda", to_json(f.lambda())}, {"factors", fs}};
}

BinaryForm form_from_json(const Json& j) {
  const auto degree = int_from_json(field(j, "degree"));
  BinaryForm f = BinaryForm::dense({Rat(1)});
  if (j.contains("factors")) {
    std::vector<LinearFactor> fs;
    for (const auto& e : field(j, "factors")) {
      if (!e.is_array() || e.size() != 2) throw PreconditionError("factors are [delta, gamma]");
      fs.push_back({rat_from_json(e[0]), rat_from_json(e[1])});
    }
    f = BinaryForm::factored(rat_from_json(field(j, "lambda")), std::move(fs));
  } else {
    f = BinaryForm::dense(list_from_json<Rat>(field(j, "coeffs"), rat_from_json));
  }
  if (f.degree() != degree) throw PreconditionError("degree does not match the form data");
  return f;
}

Json to_json(const BPrimeCertificate& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries) {
    entries.push_back(Json{{"p", e.p}, {"m", e.m}, {"n", e.n}, {"roots", e.roots}});
  }
  return Json{{"S", to_json(c.s)}, {"entries", entries}};
}

BPrimeCertificate bprime_certificate_from_json(const Json& j) {
  BPrimeCertificate c{places_from_json(field(j, "S")), {}};
  for (const auto& e : field(j, "entries")) {
    BPrimeEntry entry{int_from_json(field(e, "p")), static_cast<long>(int_from_json(field(e, "m"))),
                      static_cast<long>(int_from_json(field(e, "n"))), {}};
    for (const auto& r : field(e, "roots")) {
      entry.roots.push_back(static_cast<std::size_t>(int_from_json(r)));
    }
    c.entries.push_back(std::move(entry));
  }
  return c;
}

Json to_json(const PrimeCase& c) {
  Json j{{"p", c.p}, {"case", c.kind == 2 ? "pole" : "zero"}, {"m", c.m}};
  if (c.kind == 3) {
    j["n"] = c.n;
    j["ord_disc_G"] = {{"expected", c.oeq_expected}, {"actual", c.oeq_actual}};
    j["ord_disc_H"] = {{"expected", c.deq_expected}, {"actual", c.deq_actual}};
    j["rescued"] = c.rescued;
  }
  return j;
}

Json to_json(const FormConstruction& fc) {
  Json cases = Json::array();
  for (const auto& c : fc.cases) cases.push_back(to_json(c));
  return Json{{"tuple", fc.tuple_index},
              {"S", to_json(fc.s)},
              {"c", to_json(fc.c)},
              {"b", fc.b.get_str()},
              {"shift", fc.shift.get_str()},
              {"cases", cases},
              {"form", to_json(fc.form)},
              {"disc", to_json(bf_disc(fc.form))},
              {"certificate", to_json(fc.certificate)}};
}

Json to_json(const FpCurve& c) {
  return Json{{"p", c.p}, {"lead", c.lead}, {"roots", c.roots}, {"genus", c.genus()}};
}

Json candidates_to_json(int genus, const std::vector<HyperCurve>& curves) {
  Json a = Json::array();
  for (const auto& c : curves) a.push_back(to_json(c));
  return Json{{"genus", genus}, {"curves", a}};
}

std::vector<HyperCurve> candidates_from_json(const Json& j) {
  const auto genus = int_from_json(field(j, "genus"));
  auto curves = list_from_json<HyperCurve>(field(j, "curves"), curve_from_json);
  for (const auto& c : curves) {
    if (c.genus() != genus) throw PreconditionError("candidate genus mismatch");
  }
  return curves;
}

Json points_to_json(const std::vector<CurvePoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

Json to_json(const Recovery& r) {
  Json prov = Json::array();
  for (const auto& p : r.provenance) prov.push_back(Json{{"point", to_json(p.point)}, {"via", p.via}});
  return Json{{"Q", to_json(r.q)}, {"points", points_to_json(r.points)}, {"provenance", prov}};
}

}  // namespace prymkit
