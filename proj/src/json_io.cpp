#include "cmf/json_io.hpp"

#include "cmf/errors.hpp"

namespace cmf::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
  return *it;
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  return j;
}

size_t as_size(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long>() >= 0))
    throw SchemaError(std::string(what) + " must be a non-negative integer");
  return j.get<size_t>();
}

UniPoly common_denominator(const std::vector<RingElem>& cs) {
  UniPoly D(Rational(1));
  for (const auto& c : cs)
    if (!c.is_zero()) D = lcm(D, c.d());
  return D;
}

json flat(const MatQ& m) {
  json out = json::array();
  for (const auto& e : m.entries()) out.push_back(emit(e));
  return out;
}

MatQ parse_vector(const json& j, size_t n, bool row) {
  array(j, "vector");
  if (j.size() != n) throw SchemaError("vector of length " + std::to_string(j.size()) + ", expected " + std::to_string(n));
  std::vector<Rational> e;
  for (const auto& x : j) e.push_back(parse_rational(x));
  return row ? MatQ(1, n, e) : MatQ(n, 1, e);
}

MatQ parse_square(const json& j, size_t n, const char* what) {
  MatQ m = parse_matrix(j);
  if (m.rows() != n || m.cols() != n) {
    if (!(n == 0 && m.rows() == 0)) throw SchemaError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
    return MatQ::zeros(0, 0);
  }
  return m;
}

}  // namespace

json emit(const Rational& r) { return r.str(); }

Rational parse_rational(const json& j) {
  if (!j.is_string()) throw SchemaError("rational must be a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw SchemaError("malformed rational \"" + j.get<std::string>() + "\"");
  }
}

json emit(const UniPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(emit(c));
  return out;
}

UniPoly parse_poly(const json& j, Symbol v) {
  array(j, "polynomial");
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(parse_rational(x));
  return UniPoly(v, c);
}

json emit(const BiPoly& f) {
  json out = json::array();
  for (const auto& [k, c] : f.terms()) out.push_back(json::array({k.first, k.second, emit(c)}));
  return out;
}

BiPoly parse_bipoly(const json& j) {
  array(j, "F");
  std::map<BiPoly::Key, Rational> t;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3) throw SchemaError("bivariate term must be [r, s, \"c\"]");
    unsigned r = static_cast<unsigned>(as_size(term[0], "x exponent"));
    unsigned s = static_cast<unsigned>(as_size(term[1], "y exponent"));
    t[{r, s}] += parse_rational(term[2]);
  }
  return BiPoly(t);
}

json emit(const MatQ& m) {
  json out = json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (size_t k = 0; k < m.cols(); ++k) row.push_back(emit(m(i, k)));
    out.push_back(row);
  }
  return out;
}

MatQ parse_matrix(const json& j) {
  array(j, "matrix");
  size_t r = j.size(), c = r ? array(j[0], "matrix row").size() : 0;
  std::vector<Rational> e;
  for (const auto& row : j) {
    if (array(row, "matrix row").size() != c) throw SchemaError("ragged matrix");
    for (const auto& x : row) e.push_back(parse_rational(x));
  }
  return MatQ(r, c, e);
}

json emit(const CurveModel& c) {
  json out{{"kind", kind_name(c.kind())}, {"F", emit(c.F())}};
  if (c.hyperelliptic_P()) out["P"] = emit(*c.hyperelliptic_P());
  return out;
}

CurveModel parse_curve(const json& j) {
  const json& k = field(j, "kind");
  if (!k.is_string()) throw SchemaError("curve kind must be a string");
  std::string kind = k.get<std::string>();
  if (kind == "AffineLine") return CurveModel::affine_line();
  if (kind == "Torus") return CurveModel::torus();
  if (kind != "PlaneCurve") throw SchemaError("unknown curve kind \"" + kind + "\"");
  CurveModel c = j.contains("F") && !field(j, "F").empty() ? CurveModel::plane(parse_bipoly(field(j, "F")))
                                                           : CurveModel::hyperelliptic(parse_poly(field(j, "P")));
  if (j.contains("P") && j.contains("F") && !field(j, "F").empty()) {
    UniPoly P = parse_poly(field(j, "P"));
    if (!c.is_hyperelliptic() || !(*c.hyperelliptic_P() == P)) throw SchemaError("\"P\" does not match \"F\"");
  }
  return c;
}

json emit(const RingElem& e) { return {{"a", emit(e.a())}, {"b", emit(e.b())}, {"d", emit(e.d())}}; }

RingElem parse_ring_elem(const json& j, const RingPtr& r) {
  UniPoly d = parse_poly(field(j, "d"));
  if (d.is_zero()) throw SchemaError("zero denominator");
  UniPoly b = j.contains("b") ? parse_poly(field(j, "b")) : UniPoly();
  try {
    return RingElem(r, parse_poly(field(j, "a")), b, d);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("ring element: ") + e.what());
  }
}

json emit(const CMPoint& p) {
  json out{{"curve", emit(p.curve)}, {"n", p.n}, {"X", emit(p.X)}, {"Z", emit(p.Z)}};
  out["Y"] = p.Y ? emit(*p.Y) : json(nullptr);
  json vs = json::array(), ws = json::array();
  for (const auto& v : p.vs) vs.push_back(flat(v));
  for (const auto& w : p.ws) ws.push_back(flat(w));
  out["vs"] = vs;
  out["ws"] = ws;
  if (p.bundle) {
    json bv = json::array(), bw = json::array();
    for (const auto& e : p.bundle->v) bv.push_back(emit(e));
    for (const auto& e : p.bundle->w) bw.push_back(emit(e));
    out["bundle"] = {{"v", bv}, {"w", bw}};
  }
  return out;
}

CMPoint parse_point(const json& j) {
  CMPoint p;
  p.curve = parse_curve(field(j, "curve"));
  p.n = as_size(field(j, "n"), "n");
  p.X = parse_square(field(j, "X"), p.n, "X");
  p.Z = parse_square(field(j, "Z"), p.n, "Z");
  if (j.contains("Y") && !j["Y"].is_null()) p.Y = parse_square(j["Y"], p.n, "Y");
  if (p.curve.is_plane() && !p.Y) throw SchemaError("plane-curve point needs \"Y\"");
  if (!p.curve.is_plane() && p.Y) throw SchemaError("\"Y\" given for a curve without a y coordinate");
  const json& vs = array(field(j, "vs"), "vs");
  const json& ws = array(field(j, "ws"), "ws");
  if (vs.size() != ws.size()) throw SchemaError("vs and ws differ in length");
  for (const auto& v : vs) p.vs.push_back(parse_vector(v, p.n, false));
  for (const auto& w : ws) p.ws.push_back(parse_vector(w, p.n, true));
  if (j.contains("bundle") && !j["bundle"].is_null()) {
    RingPtr r;
    try {
      r = CoeffRing::of(p.curve);
    } catch (const UnsupportedModel&) {
      throw SchemaError("bundle data needs a supported coefficient ring");
    }
    LineBundle b;
    for (const auto& e : array(field(j["bundle"], "v"), "bundle v")) b.v.push_back(parse_ring_elem(e, r));
    for (const auto& e : array(field(j["bundle"], "w"), "bundle w")) b.w.push_back(parse_ring_elem(e, r));
    if (b.v.size() != b.w.size()) throw SchemaError("bundle v and w differ in length");
    p.bundle = b;
  }
  return p;
}

json emit(const FractionalIdeal& I) {
  json gens = json::array();
  for (const auto& g : I.generators) {
    json e{{"kind", g.kind}, {"index", g.index}};
    if (g.op) {
      UniPoly D = common_denominator(g.op->coeffs());
      json cs = json::array();
      for (const auto& c : g.op->coeffs()) {
        UniPoly s = exact_div(D, c.d());
        json entry = json::array({emit(c.a() * s)});
        if (!c.b().is_zero()) entry.push_back(emit(c.b() * s));
        cs.push_back(entry);
      }
      e["denominator_x"] = emit(D);
      e["coeffs"] = cs;
    } else {
      e["denominator_x"] = nullptr;
      e["coeffs"] = nullptr;
      e["symbolic"] = g.symbolic;
    }
    gens.push_back(e);
  }
  return {{"curve", emit(I.curve)}, {"generators", gens}};
}

FractionalIdeal parse_ideal(const json& j) {
  FractionalIdeal I;
  I.curve = parse_curve(field(j, "curve"));
  RingPtr r;
  try {
    r = CoeffRing::of(I.curve);
  } catch (const UnsupportedModel&) {
  }
  for (const auto& e : array(field(j, "generators"), "generators")) {
    IdealGenerator g;
    const json& kind = field(e, "kind");
    if (!kind.is_string()) throw SchemaError("generator kind must be a string");
    g.kind = kind.get<std::string>();
    g.index = as_size(field(e, "index"), "index");
    const json& cs = field(e, "coeffs");
    if (!cs.is_null()) {
      if (!r) throw SchemaError("normal-ordered coefficients need a supported coefficient ring");
      UniPoly D = parse_poly(field(e, "denominator_x"));
      if (D.is_zero()) throw SchemaError("zero denominator_x");
      std::vector<RingElem> c;
      for (const auto& entry : array(cs, "coeffs")) {
        if (!entry.is_array() || entry.empty() || entry.size() > 2) throw SchemaError("coefficient must be [a] or [a, b]");
        UniPoly a = parse_poly(entry[0]);
        UniPoly b = entry.size() == 2 ? parse_poly(entry[1]) : UniPoly();
        try {
          c.emplace_back(r, a, b, D);
        } catch (const std::invalid_argument& ex) {
          throw SchemaError(std::string("coefficient: ") + ex.what());
        }
      }
      g.op = DiffOp(r, c);
    } else {
      const json& s = field(e, "symbolic");
      if (!s.is_string()) throw SchemaError("symbolic generator must be a string");
      g.symbolic = s.get<std::string>();
    }
    I.generators.push_back(g);
  }
  return I;
}

json emit(const RelationReport& r) {
  json rel = json::array();
  for (const auto& c : r.relations)
    rel.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", emit(c.residual)}});
  return {{"pass", r.pass}, {"relations", rel}};
}

json emit(const TangentReport& t) {
  return {{"tangent_dim", t.tangent_dim}, {"variables", t.variables}, {"equations", t.equations},
          {"gauge", t.gauge},             {"moduli_dim", t.moduli_dim()}};
}

json emit(const CodimReport& c) {
  json rows = json::array();
  for (const auto& r : c.rows) rows.push_back({{"k", r.k}, {"codim", r.codim ? json(*r.codim) : json(nullptr)}});
  return {{"rows", rows},
          {"stabilized", c.stabilized ? json(*c.stabilized) : json(nullptr)},
          {"monotone", c.monotone},
          {"monotone_settled", c.monotone_settled},
          {"settled_from", c.settled_from}};
}

json emit(const HalfFormOp& op) { return {{"a", emit(op.a)}, {"b", emit(op.b)}}; }

}  // namespace cmf::io
