#include "sylvester_io/json_io.hpp"

#include <fstream>
#include <sstream>

#include "sylvester/errors.hpp"

namespace sylvester::io {

namespace {

const ordered_json& field(const ordered_json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<Rational> rationals_from_json(const ordered_json& j) {
  if (!j.is_array()) throw FormatError("expected an array of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

ordered_json rationals_to_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& r : v) a.push_back(to_json(r));
  return a;
}

Point2 point_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("a point is a two-element array");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

}  // namespace

Rational rational_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const PreconditionError& e) {
      throw FormatError(e.what());
    }
  }
  throw FormatError("rationals are written as \"p/q\" strings or integers, got " + j.dump());
}

ordered_json to_json(const Rational& r) { return r.to_string(); }

ordered_json exact_value(const Rational& r) { return ordered_json{{"exact", r.to_string()}, {"float", r.to_double()}}; }

ordered_json to_json(const MultiPoly& p) {
  ordered_json terms = ordered_json::array();
  for (const auto& [exps, c] : p.terms()) {
    terms.push_back(ordered_json{{"coeff", c.to_string()}, {"exps", exps}});
  }
  return ordered_json{{"vars", p.variables()}, {"terms", terms}, {"text", p.to_string()}};
}

MultiPoly poly_from_json(const ordered_json& j) {
  const auto vars = field(j, "vars").get<std::vector<std::string>>();
  MultiPoly::TermMap terms;
  for (const auto& t : field(j, "terms")) {
    auto exps = field(t, "exps").get<MultiPoly::Exponents>();
    if (exps.size() != vars.size()) throw FormatError("term exponent arity differs from vars");
    terms[exps] += rational_from_json(field(t, "coeff"));
  }
  return MultiPoly::from_terms(vars, terms);
}

ordered_json to_json(const Point2& p) { return ordered_json::array({to_json(p.x), to_json(p.y)}); }

ordered_json to_json(const ConvexBody& body) {
  if (const auto* p = std::get_if<Polygon>(&body)) {
    ordered_json v = ordered_json::array();
    for (const auto& q : p->vertices) v.push_back(to_json(q));
    return ordered_json{{"type", "polygon"}, {"vertices", v}};
  }
  if (const auto* d = std::get_if<Disk>(&body)) {
    return ordered_json{{"type", "disk"}, {"center", to_json(d->center)}, {"r", to_json(d->radius)}};
  }
  const auto& e = std::get<Ellipse>(body);
  return ordered_json{{"type", "ellipse"},
                      {"m", ordered_json::array({ordered_json::array({to_json(e.m[0]), to_json(e.m[1])}),
                                                 ordered_json::array({to_json(e.m[2]), to_json(e.m[3])})})},
                      {"t", to_json(e.t)}};
}

ConvexBody body_from_json(const ordered_json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "polygon" || type == "triangle") {
    std::vector<Point2> v;
    for (const auto& p : field(j, "vertices")) v.push_back(point_from_json(p));
    if (type == "triangle" && v.size() != 3) throw FormatError("a triangle has three vertices");
    return make_polygon(std::move(v));
  }
  if (type == "disk") {
    Disk d{point_from_json(field(j, "center")), rational_from_json(field(j, "r"))};
    validate(d);
    return d;
  }
  if (type == "ellipse") {
    const auto& m = field(j, "m");
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() || m[1].size() != 2) {
      throw FormatError("ellipse 'm' is a 2x2 array");
    }
    Ellipse e{{rational_from_json(m[0][0]), rational_from_json(m[0][1]), rational_from_json(m[1][0]),
               rational_from_json(m[1][1])},
              point_from_json(field(j, "t"))};
    validate(e);
    return e;
  }
  throw FormatError("unknown body type '" + type + "'");
}

ordered_json to_json(const Comb& c) { return ordered_json{{"x", rationals_to_json(c.x)}, {"l", rationals_to_json(c.l)}}; }

Comb comb_from_json(const ordered_json& j) {
  Comb c{rationals_from_json(field(j, "x")), rationals_from_json(field(j, "l"))};
  c.validate();
  return c;
}

ordered_json to_json(const VerticalSegment& s) {
  return ordered_json{{"x", to_json(s.x)}, {"y_low", to_json(s.y_low)}, {"y_high", to_json(s.y_high)}};
}

ordered_json to_json(const NormalizedFamily& f) {
  return ordered_json{{"N", f.interior_count()},     {"xbar", rationals_to_json(f.xbar)},
                      {"L0", to_json(f.L0)},           {"L1", to_json(f.L1)},
                      {"lambda", rationals_to_json(f.lambda)}, {"beta", rationals_to_json(f.beta)}};
}

std::vector<VerticalSegment> segments_from_json(const ordered_json& j) {
  std::vector<VerticalSegment> out;
  for (const auto& s : field(j, "segments")) {
    out.push_back({rational_from_json(field(s, "x")), rational_from_json(field(s, "y_low")),
                   rational_from_json(field(s, "y_high"))});
  }
  return out;
}

NormalizedFamily family_from_json(const ordered_json& j) {
  if (j.is_object() && j.contains("segments")) {
    const auto segs = segments_from_json(j);
    return normalize(segs);
  }
  NormalizedFamily f{rationals_from_json(field(j, "xbar")), rational_from_json(field(j, "L0")),
                     rational_from_json(field(j, "L1")), rationals_from_json(field(j, "lambda")),
                     rationals_from_json(field(j, "beta"))};
  f.validate_structure();
  return f;
}

ordered_json to_json(const EstimateResult& r) {
  const auto [lo, hi] = r.ci95();
  ordered_json j{{"method", to_string(r.method)}, {"n", r.n}, {"samples", r.samples}};
  j["hits"] = r.hits ? ordered_json(*r.hits) : ordered_json(nullptr);
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["ci95"] = ordered_json::array({lo, hi});
  j["variance"] = r.variance;
  j["seed"] = r.seed;
  j["workers"] = r.workers;
  return j;
}

ordered_json to_json(const CertificateReport& r) {
  ordered_json ids = ordered_json::array();
  for (const auto& e : r.identity_checks) {
    ordered_json o{{"name", e.name}, {"grid_points", e.grid_points}, {"pass", e.pass}, {"gating", e.gating}};
    if (!e.detail.empty()) o["detail"] = e.detail;
    ids.push_back(o);
  }
  ordered_json pos = ordered_json::array();
  for (const auto& e : r.positivity_checks) {
    ordered_json o{{"name", e.name}, {"method", to_string(e.method)}, {"pass", e.pass}, {"gating", e.gating}};
    if (!e.detail.empty()) o["detail"] = e.detail;
    pos.push_back(o);
  }
  return ordered_json{{"name", r.name},
                      {"identity_checks", ids},
                      {"positivity_checks", pos},
                      {"waivers", r.waivers},
                      {"sampled_only", r.sampled_only_count()},
                      {"summary", r.pass() ? "pass" : "fail"}};
}

ordered_json to_json(const PiConstant& c) {
  return ordered_json{{"rational_part", to_json(c.rational_part)},
                      {"pi2_coefficient", to_json(c.pi2_coefficient)},
                      {"text", c.to_string()},
                      {"float", c.value()}};
}

ordered_json load_document(const std::string& text) {
  std::string body = text;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw FormatError("empty document");
  if (text[first] != '{' && text[first] != '[') {
    std::ifstream in(text);
    if (!in) throw FormatError("cannot open '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return ordered_json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace sylvester::io
