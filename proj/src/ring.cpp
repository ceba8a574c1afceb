#include "cmf/ring.hpp"

#include <stdexcept>

#include "cmf/errors.hpp"

namespace cmf {

RingPtr CoeffRing::of(const CurveModel& c) {
  auto r = std::make_shared<CoeffRing>();
  switch (c.kind()) {
    case CurveKind::AffineLine: r->kind = RingKind::Line; break;
    case CurveKind::Torus: r->kind = RingKind::Torus; break;
    case CurveKind::PlaneCurve:
      if (!c.is_hyperelliptic())
        throw UnsupportedModel("operator normal forms need AffineLine, Torus or y^2 = P(x); got " + c.str());
      r->kind = RingKind::Hyperelliptic;
      r->P = *c.hyperelliptic_P();
      break;
  }
  return r;
}

RingPtr CoeffRing::line() {
  static const RingPtr r = std::make_shared<CoeffRing>();
  return r;
}

CurveModel CoeffRing::curve() const {
  switch (kind) {
    case RingKind::Line: return CurveModel::affine_line();
    case RingKind::Torus: return CurveModel::torus();
    case RingKind::Hyperelliptic: return CurveModel::hyperelliptic(P);
  }
  return CurveModel::affine_line();
}

RingElem::RingElem() : RingElem(CoeffRing::line()) {}

RingElem::RingElem(RingPtr r, const Rational& c)
    : ring_(std::move(r)), a_(c), b_(Symbol::x), d_(Rational(1)) {}

RingElem::RingElem(RingPtr r, const UniPoly& a, const UniPoly& b, const UniPoly& d)
    : ring_(std::move(r)), a_(a.with_var(Symbol::x)), b_(b.with_var(Symbol::x)), d_(d.with_var(Symbol::x)) {
  if (d_.is_zero()) throw std::domain_error("ring element with zero denominator");
  if (!b_.is_zero() && ring_->kind != RingKind::Hyperelliptic)
    throw std::invalid_argument("y-component outside the hyperelliptic ring");
  normalize();
}

RingElem RingElem::y(RingPtr r) {
  if (r->kind != RingKind::Hyperelliptic) throw std::invalid_argument("no y coordinate in this ring");
  return RingElem(r, UniPoly(Symbol::x), UniPoly(Rational(1)));
}

RingElem RingElem::from_bipoly(RingPtr r, const BiPoly& f) {
  if (r->kind != RingKind::Hyperelliptic) {
    if (f.degree_y() > 0) throw std::invalid_argument("y-terms outside the hyperelliptic ring");
    return RingElem(r, f.eval_y(0));
  }
  auto cy = f.coeffs_in_y();
  UniPoly a(Symbol::x), b(Symbol::x), Pk(Rational(1));
  for (size_t s = 0; s < cy.size(); ++s) {
    // y^s = P^(s/2) y^(s mod 2)
    if (s % 2 == 0) {
      if (s > 0) Pk *= r->P;
      a += cy[s] * Pk;
    } else {
      b += cy[s] * Pk;
    }
  }
  return RingElem(r, a, b);
}

RingElem RingElem::from_laurent(RingPtr r, const LaurentPoly& p) {
  if (p.shift() >= 0) return RingElem(r, p.base().shift_up(static_cast<unsigned>(p.shift())));
  return RingElem(r, p.base(), UniPoly(), UniPoly::monomial(1, static_cast<unsigned>(-p.shift())));
}

void RingElem::normalize() {
  if (is_zero()) {
    a_ = UniPoly(Symbol::x);
    b_ = UniPoly(Symbol::x);
    d_ = UniPoly(Rational(1));
    return;
  }
  UniPoly g = gcd(gcd(a_, b_), d_);
  if (g.degree() > 0) {
    a_ = exact_div(a_, g);
    b_ = exact_div(b_, g);
    d_ = exact_div(d_, g);
  }
  Rational l = d_.lead();
  if (!l.is_one()) {
    Rational inv = l.inverse();
    a_ *= inv;
    b_ *= inv;
    d_ *= inv;
  }
}

bool RingElem::in_coordinate_ring() const {
  if (d_.degree() == 0) return true;
  return ring_->kind == RingKind::Torus && d_ == UniPoly::monomial(1, static_cast<unsigned>(d_.degree()));
}

RingElem RingElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero ring element");
  if (b_.is_zero()) return RingElem(ring_, d_, UniPoly(), a_);
  // (a + b y)^-1 = (a - b y) / (a^2 - b^2 P)
  UniPoly norm = a_ * a_ - b_ * b_ * ring_->P;
  if (norm.is_zero()) throw std::domain_error("zero divisor in hyperelliptic ring");
  return RingElem(ring_, a_ * d_, -(b_ * d_), norm);
}

RingElem RingElem::derive_numerator() const {
  if (ring_->kind != RingKind::Hyperelliptic) return RingElem(ring_, a_.derivative());
  // d(a + b y) = a' 2y + b' 2y^2 + b P'
  const UniPoly& P = ring_->P;
  return RingElem(ring_, b_.derivative() * P * Rational(2) + b_ * P.derivative(), a_.derivative() * Rational(2));
}

RingElem RingElem::derivative() const {
  if (is_zero()) return *this;
  RingElem num(ring_, a_, b_), den(ring_, d_);
  RingElem dnum = num.derive_numerator();
  if (d_.degree() == 0) return dnum;
  RingElem dden = den.derive_numerator();
  return (dnum * den - num * dden) / (den * den);
}

RingElem RingElem::derivative(unsigned k) const {
  RingElem r = *this;
  for (unsigned i = 0; i < k; ++i) r = r.derivative();
  return r;
}

Rational RingElem::eval(const Rational& x, const Rational& y) const {
  Rational d = d_.eval(x);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole of " + str());
  return (a_.eval(x) + b_.eval(x) * y) / d;
}

MatQ RingElem::eval(const MatQ& X, const MatQ& Y) const {
  MatQ num = eval_poly(a_, X);
  if (!b_.is_zero()) num += eval_poly(b_, X) * Y;
  if (d_.degree() == 0) return num;
  return num * cmf::inverse(eval_poly(d_, X));
}

std::string RingElem::str() const {
  std::string n;
  if (b_.is_zero()) {
    n = a_.str();
  } else if (a_.is_zero()) {
    n = b_.is_constant() ? (b_.lead().is_one() ? "y" : b_.str() + "*y") : "(" + b_.str() + ")*y";
  } else {
    n = a_.str() + " + (" + b_.str() + ")*y";
  }
  if (d_.degree() == 0) return n;
  return "(" + n + ")/(" + d_.str() + ")";
}

RingElem RingElem::operator-() const {
  RingElem r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  if (d_ == o.d_) {
    a_ += o.a_;
    b_ += o.b_;
  } else {
    UniPoly l = lcm(d_, o.d_);
    UniPoly m1 = exact_div(l, d_), m2 = exact_div(l, o.d_);
    a_ = a_ * m1 + o.a_ * m2;
    b_ = b_ * m1 + o.b_ * m2;
    d_ = l;
  }
  normalize();
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) { return *this += -o; }

RingElem& RingElem::operator*=(const RingElem& o) {
  UniPoly a = a_ * o.a_, b = a_ * o.b_ + b_ * o.a_;
  if (!b_.is_zero() && !o.b_.is_zero()) a += b_ * o.b_ * ring_->P;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d_ * o.d_;
  normalize();
  return *this;
}

}  // namespace cmf
