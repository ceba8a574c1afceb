#pragma once

#include <json.hpp>

#include "cmf/cmspace.hpp"
#include "cmf/forge.hpp"
#include "cmf/lattice.hpp"
#include "cmf/szego.hpp"

namespace cmf::io {

using json = nlohmann::json;

// All parsers throw SchemaError. Rationals travel as "p" or "p/q" strings;
// polynomials as coefficient arrays, lowest degree first.

json emit(const Rational& r);
Rational parse_rational(const json& j);

json emit(const UniPoly& p);
UniPoly parse_poly(const json& j, Symbol v = Symbol::x);

// [[r, s, "c"], ...] sorted by (r, s)
json emit(const BiPoly& f);
BiPoly parse_bipoly(const json& j);

json emit(const MatQ& m);
MatQ parse_matrix(const json& j);

// {"kind", "F", "P"}; F is empty off plane curves, P is present only for
// hyperelliptic ones.
json emit(const CurveModel& c);
CurveModel parse_curve(const json& j);

// {"a", "b", "d"}: (a + b y) / d
json emit(const RingElem& e);
RingElem parse_ring_elem(const json& j, const RingPtr& r);

// {"curve", "n", "X", "Y" (null off plane curves), "Z", "vs", "ws"} plus
// "bundle": {"v": [...], "w": [...]} for nontrivial bundles. vs and ws hold
// one array of n entries per index i.
json emit(const CMPoint& p);
CMPoint parse_point(const json& j);

// {"curve", "generators": [{"kind", "index", "denominator_x", "coeffs"}]}
// where coeffs[k] is the numerator of the d^k coefficient over denominator_x,
// written [a] or [a, b] for a + b y. Generators without a normal form carry
// "coeffs": null and "symbolic".
json emit(const FractionalIdeal& I);
FractionalIdeal parse_ideal(const json& j);

json emit(const RelationReport& r);
json emit(const TangentReport& t);
json emit(const CodimReport& c);
json emit(const HalfFormOp& op);

}  // namespace cmf::io
