#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "cmf/curve.hpp"
#include "cmf/matrix.hpp"

namespace cmf {

enum class RingKind { Line, Torus, Hyperelliptic };

// Coordinate ring Q[x], Q[x,1/x] or Q[x,y]/(y^2 - P), localized at a
// denominator in x.
struct CoeffRing {
  RingKind kind = RingKind::Line;
  UniPoly P;  // hyperelliptic only

  // Throws UnsupportedModel for plane curves that are not hyperelliptic.
  static std::shared_ptr<const CoeffRing> of(const CurveModel& c);
  static std::shared_ptr<const CoeffRing> line();
  CurveModel curve() const;
  friend bool operator==(const CoeffRing& a, const CoeffRing& b) { return a.kind == b.kind && a.P == b.P; }
};

using RingPtr = std::shared_ptr<const CoeffRing>;

// (a(x) + b(x) y) / d(x) with d monic and gcd(a, b, d) = 1; b = 0 off the
// hyperelliptic case.
class RingElem {
 public:
  RingElem();
  explicit RingElem(RingPtr r, const Rational& c = Rational());
  RingElem(RingPtr r, const UniPoly& a, const UniPoly& b = UniPoly(), const UniPoly& d = UniPoly(Rational(1)));

  static RingElem x(RingPtr r) { return RingElem(r, UniPoly::variable(Symbol::x)); }
  static RingElem y(RingPtr r);
  // Reduces y^2 -> P; y-terms are rejected off the hyperelliptic case.
  static RingElem from_bipoly(RingPtr r, const BiPoly& f);
  static RingElem from_laurent(RingPtr r, const LaurentPoly& p);

  const RingPtr& ring() const { return ring_; }
  const UniPoly& a() const { return a_; }
  const UniPoly& b() const { return b_; }
  const UniPoly& d() const { return d_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  // Element of the unlocalized coordinate ring (x-powers allowed for Torus).
  bool in_coordinate_ring() const;

  RingElem inverse() const;
  RingElem derivative() const;  // image under the generating derivation
  RingElem derivative(unsigned k) const;
  Rational eval(const Rational& x, const Rational& y = Rational()) const;
  // a(X) + b(X) Y times d(X)^-1, for commuting X, Y.
  MatQ eval(const MatQ& X, const MatQ& Y) const;

  std::string str() const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  RingElem& operator/=(const RingElem& o) { return *this *= o.inverse(); }
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(RingElem a, const RingElem& b) { return a *= b; }
  friend RingElem operator/(RingElem a, const RingElem& b) { return a /= b; }
  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.a_ == b.a_ && a.b_ == b.b_ && a.d_ == b.d_;
  }
  friend std::ostream& operator<<(std::ostream& os, const RingElem& e) { return os << e.str(); }

 private:
  void normalize();
  RingElem derive_numerator() const;

  RingPtr ring_;
  UniPoly a_, b_, d_;
};

inline RingElem zero_like(const RingElem& e) { return RingElem(e.ring()); }
inline RingElem one_like(const RingElem& e) { return RingElem(e.ring(), Rational(1)); }
inline bool is_zero(const RingElem& e) { return e.is_zero(); }
inline RingElem exact_div(const RingElem& a, const RingElem& b) { return a / b; }

}  // namespace cmf
