#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmf/cmspace.hpp"
#include "cmf/diffop.hpp"

namespace cmf {

// Matrix whose entries lie in Q(var); var is one of x, y, z.
struct Factor {
  Symbol var = Symbol::x;
  Mat<RatFunc> m;
};

// coeff * left . f_1 ... f_k . right * tail, with left r x n, right n x 1 and
// tail a function on the curve multiplied on the right.
struct ProductTerm {
  Rational coeff{1};
  MatQ left;
  std::vector<Factor> factors;
  MatQ right;
  BiPoly tail = BiPoly::monomial(Rational(1), 0, 0);
};

struct OrderedProduct {
  std::vector<ProductTerm> terms;
  bool is_zero() const { return terms.empty(); }
  std::string str() const;
};

// Value at a curve point; throws UnsupportedModel if a z factor is present.
MatQ evaluate(const OrderedProduct& e, const Point& at);

// lead + rest; rest is a 1 x 1 ordered product.
struct KappaElement {
  CurveModel curve;
  BiPoly lead;
  OrderedProduct rest;
  std::string str() const;
};

// delta_V on the derivation generator: a column in Q (x) V*.
OrderedProduct delta_V(const CMPoint& p);
// delta_V(Delta) = sum_i v_i w_i^t, no factors.
OrderedProduct delta_V_Delta(const CMPoint& p);
// (X^t - a) delta_V(z) - sum g (f^t) delta_V(Delta) for a = x and a = y, at a point.
std::vector<MatQ> delta_identity_residual(const CMPoint& p, const Point& at);

// Closed form for the curve model.
KappaElement kappa(const CMPoint& p, size_t i);
// kappa obtained by substituting the dual representation into nu_kernel.
KappaElement kappa_from_nu(const CMPoint& p, size_t i);

// Generator function v_i as a polynomial in x, y.
BiPoly generator_function(const CMPoint& p, size_t i);

// Normal-ordered prefix(z) * e over the localized ring, z powers rightmost.
// Throws InvariantBreach when prefix * (Z^t - z)^-1 keeps a z-denominator.
DiffOp normal_order(const KappaElement& e, const UniPoly& prefix, const RingPtr& target);

struct IdealGenerator {
  std::string kind;  // "det(X-x)", "det(Y-y)", "det(Z-z)*kappa"
  size_t index = 0;  // which v_i
  std::optional<DiffOp> op;
  std::optional<BiPoly> function;      // determinant kinds
  std::optional<KappaElement> kappa;   // z kind
  std::optional<UniPoly> prefix;       // z kind
  std::string symbolic;                // printable form, always set
};

struct FractionalIdeal {
  CurveModel curve;
  std::vector<IdealGenerator> generators;
  bool normal_ordered() const;
  std::vector<DiffOp> ops() const;
};

// One x-, (y-) and z-determinant generator per v_i; normal-ordered when the
// coefficient ring is supported, symbolic otherwise.
FractionalIdeal ideal_generators(const CMPoint& p);

}  // namespace cmf
