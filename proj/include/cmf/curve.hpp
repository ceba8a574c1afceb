#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmf/poly.hpp"

namespace cmf {

enum class CurveKind { AffineLine, Torus, PlaneCurve };

std::string kind_name(CurveKind k);

class CurveModel {
 public:
  static CurveModel affine_line();
  static CurveModel torus();
  // Recognizes F = y^2 - P(x) with squarefree P as hyperelliptic.
  static CurveModel plane(const BiPoly& F);
  // F = y^2 - P(x); throws PreconditionError unless gcd(P, P') = 1.
  static CurveModel hyperelliptic(const UniPoly& P);

  CurveKind kind() const { return kind_; }
  const BiPoly& F() const { return F_; }
  const std::optional<UniPoly>& hyperelliptic_P() const { return P_; }
  bool is_plane() const { return kind_ == CurveKind::PlaneCurve; }
  bool is_hyperelliptic() const { return P_.has_value(); }
  bool contains(const Rational& x, const Rational& y = Rational()) const;
  std::string str() const;

  friend bool operator==(const CurveModel& a, const CurveModel& b) {
    return a.kind_ == b.kind_ && a.F_ == b.F_ && a.P_ == b.P_;
  }

 private:
  CurveKind kind_ = CurveKind::AffineLine;
  BiPoly F_;
  std::optional<UniPoly> P_;
};

// coeff * x^lx y^ly . Delta . x^rx y^ry
struct CommutatorTerm {
  Rational coeff;
  unsigned lx = 0, ly = 0, rx = 0, ry = 0;
  friend bool operator==(const CommutatorTerm&, const CommutatorTerm&) = default;
};

using CommutatorSum = std::vector<CommutatorTerm>;

struct DerivationData {
  BiPoly partial_x, partial_y;  // images of x and y under the generating derivation
  CommutatorSum zx, zy;         // [z,x] and [z,y]; zy empty without a y coordinate
};

DerivationData derivation_data(const CurveModel& c);
// [z,x], [z,y] for a plane curve F, expanded term by term.
std::pair<CommutatorSum, CommutatorSum> commutator_table_plane(const BiPoly& F);
// The same table written directly in terms of P for y^2 = P(x).
std::pair<CommutatorSum, CommutatorSum> commutator_table_hyperelliptic(const UniPoly& P);
// Merges like terms and sorts, for term-by-term comparison.
CommutatorSum canonical(const CommutatorSum& s);

// Applies the generating derivation to a polynomial in x, y.
BiPoly derive(const CurveModel& c, const BiPoly& f);

// coeff * (x^ox y^oy (x) x^ix y^iy)
struct TensorTerm {
  Rational coeff;
  unsigned ox = 0, oy = 0, ix = 0, iy = 0;
};

// Kernel nu(d) = numerator / prod_s (1(x)s - s(x)1), with nu(Delta) = 1.
struct NuKernel {
  std::vector<TensorTerm> numerator;
  std::vector<Symbol> denominator;
  Rational nu_delta{1};

  // Value at (p, q) in X x X where a(x)b evaluates to a(p) b(q).
  Rational eval(const std::pair<Rational, Rational>& p, const std::pair<Rational, Rational>& q) const;
  std::string str() const;
};

NuKernel nu_kernel(const CurveModel& c);

struct SmoothnessReport {
  bool smooth = true;
  std::string witness;  // common factor found, empty when smooth
  std::optional<std::pair<Rational, Rational>> singular_point;
};

// Best-effort: F, F_x, F_y without common zero, via resultants in y and in x.
SmoothnessReport smoothness_check(const CurveModel& c);

}  // namespace cmf
