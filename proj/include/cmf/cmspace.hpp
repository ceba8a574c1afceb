#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cmf/curve.hpp"
#include "cmf/matrix.hpp"
#include "cmf/ring.hpp"

namespace cmf {

using Point = std::pair<Rational, Rational>;

// Nontrivial line bundle: generators v_i of an ideal I in A and w_i in Frac(A)
// with sum w_i v_i = 1 and every w_i v_k in A.
struct LineBundle {
  std::vector<RingElem> v, w;
  void validate() const;  // throws PreconditionError
  friend bool operator==(const LineBundle&, const LineBundle&) = default;
};

// (X, Y, Z, v_i, w_i) of size n. Z is the derivation generator; Y exists only
// for plane curves.
struct CMPoint {
  CurveModel curve;
  size_t n = 0;
  MatQ X;
  std::optional<MatQ> Y;
  MatQ Z;
  std::vector<MatQ> vs;  // n x 1
  std::vector<MatQ> ws;  // 1 x n
  std::optional<LineBundle> bundle;

  std::pair<Rational, Rational> weight() const { return {Rational(1), Rational(-static_cast<long>(n))}; }
  // Id + sum v_i w_i
  MatQ delta() const;
  MatQ Y_or_zero() const { return Y ? *Y : MatQ::zeros(n, n); }
  friend bool operator==(const CMPoint&, const CMPoint&) = default;
};

struct RelationCheck {
  std::string name;
  bool pass = true;
  MatQ residual;
};

struct RelationReport {
  bool pass = true;
  std::vector<RelationCheck> relations;
  const RelationCheck* first_failure() const;
};

// Checks coordinate relations, the derivation commutators with Delta
// substituted, and sum_i w_i v_i = -n. Throws SizeMismatch.
RelationReport verify_relations(const CMPoint& p);

// Literal Moser construction: distinct x and distinct y required.
CMPoint generic_point(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas);
// Divided-difference form of the Moser matrix; only distinct x required.
CMPoint moser_point(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas);
// Moser-type point for a nontrivial bundle; points must avoid the poles of w_i.
CMPoint bundle_point(const CurveModel& c, const LineBundle& b, const std::vector<Point>& pts,
                     const std::vector<Rational>& alphas);

// Finite-dimensional module over the one-point extension with trivial bundle:
// actions of the coordinate generators on V and phi: V_inf -> V.
struct BModule {
  size_t n = 0, n_inf = 0;
  std::vector<MatQ> actions;  // X, or X and Y
  MatQ phi;                   // n x n_inf
};

BModule as_bmodule(const CMPoint& p);

// Representation of the doubled quiver: endomorphisms of V, maps V_inf -> V
// and V -> V_inf.
struct QuiverRep {
  size_t n = 0, n_inf = 0;
  std::vector<MatQ> endos;
  std::vector<MatQ> in;   // n x n_inf
  std::vector<MatQ> out;  // n_inf x n
};

QuiverRep as_rep(const CMPoint& p);
QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b);

size_t commutant_dim(const QuiverRep& r);
size_t commutant_dim(const CMPoint& p);

bool trace_lift_check(const BModule& m, const std::pair<Rational, Rational>& weight);

size_t hom_dim(const CurveModel& c, const BModule& U, const BModule& V);
size_t hom_A_dim(const BModule& U, const BModule& V);
// dim Ext^1 over the coordinate ring via Hochschild cocycles modulo coboundaries.
size_t ext1_A_dim(const CurveModel& c, const BModule& U, const BModule& V);
// Cocycle space Z^1 of derivations A -> Hom(U, V).
size_t derivation_dim(const CurveModel& c, const BModule& U, const BModule& V);
size_t ext1_dim(const CurveModel& c, const BModule& U, const BModule& V);
long euler_char(const BModule& U, const BModule& V);

// Random module with the given dims: Jordan-type blocks at points of the curve
// (or random eigenvalues off plane curves), conjugated by a random matrix.
BModule random_bmodule(const CurveModel& c, size_t n, size_t n_inf, std::mt19937_64& rng,
                       const std::vector<Point>& pts = {});

struct TangentReport {
  size_t tangent_dim = 0;
  size_t variables = 0;
  size_t equations = 0;
  size_t gauge = 0;  // dim GL_n
  long moduli_dim() const { return static_cast<long>(tangent_dim) - static_cast<long>(gauge); }
};

TangentReport tangent(const CMPoint& p);
size_t tangent_dim(const CMPoint& p);

// omega(d) = g * x^x_power; x_power < 0 only on the torus.
struct OneForm {
  CurveModel curve;
  BiPoly g;
  int x_power = 0;
};

// u = x^r on the torus: Z <- Z + r X^-1.
CMPoint lambda_act(const CMPoint& p, long r);
// Z <- Z + g(X, Y).
CMPoint omega_twist(const CMPoint& p, const OneForm& w);

}  // namespace cmf
