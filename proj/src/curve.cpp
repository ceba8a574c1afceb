#include "cmf/curve.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "cmf/errors.hpp"
#include "cmf/matrix.hpp"

namespace cmf {

std::string kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::AffineLine: return "AffineLine";
    case CurveKind::Torus: return "Torus";
    case CurveKind::PlaneCurve: return "PlaneCurve";
  }
  return "?";
}

namespace {

// P with F = y^2 - P(x), if F has that shape.
std::optional<UniPoly> hyperelliptic_part(const BiPoly& F) {
  if (F.coeff(0, 2) != Rational(1)) return std::nullopt;
  UniPoly P(Symbol::x);
  for (const auto& [k, c] : F.terms()) {
    if (k == BiPoly::Key{0, 2}) continue;
    if (k.second != 0) return std::nullopt;
    P -= UniPoly::monomial(c, k.first);
  }
  if (P.degree() < 1) return std::nullopt;
  return P;
}

}  // namespace

CurveModel CurveModel::affine_line() { return CurveModel(); }

CurveModel CurveModel::torus() {
  CurveModel c;
  c.kind_ = CurveKind::Torus;
  return c;
}

CurveModel CurveModel::plane(const BiPoly& F) {
  if (F.is_constant()) throw PreconditionError("plane curve equation must be nonconstant", F.str());
  CurveModel c;
  c.kind_ = CurveKind::PlaneCurve;
  c.F_ = F;
  if (auto P = hyperelliptic_part(F); P && gcd(*P, P->derivative()).degree() == 0) c.P_ = P;
  return c;
}

CurveModel CurveModel::hyperelliptic(const UniPoly& P) {
  if (P.degree() < 1) throw PreconditionError("hyperelliptic P must be nonconstant", P.str());
  UniPoly g = gcd(P, P.derivative());
  if (g.degree() != 0) throw PreconditionError("P has a repeated root", "gcd(P, P') = " + g.str());
  CurveModel c;
  c.kind_ = CurveKind::PlaneCurve;
  c.F_ = BiPoly::monomial(1, 0, 2) - BiPoly::from_x(P.with_var(Symbol::x));
  c.P_ = P.with_var(Symbol::x);
  return c;
}

bool CurveModel::contains(const Rational& x, const Rational& y) const {
  switch (kind_) {
    case CurveKind::AffineLine: return true;
    case CurveKind::Torus: return !x.is_zero();
    case CurveKind::PlaneCurve: return F_.eval(x, y).is_zero();
  }
  return false;
}

std::string CurveModel::str() const {
  if (kind_ != CurveKind::PlaneCurve) return kind_name(kind_);
  return "PlaneCurve{" + F_.str() + " = 0}";
}

CommutatorSum canonical(const CommutatorSum& s) {
  std::map<std::tuple<unsigned, unsigned, unsigned, unsigned>, Rational> acc;
  for (const auto& t : s) acc[{t.lx, t.ly, t.rx, t.ry}] += t.coeff;
  CommutatorSum out;
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) out.push_back({c, std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k)});
  return out;
}

std::pair<CommutatorSum, CommutatorSum> commutator_table_plane(const BiPoly& F) {
  CommutatorSum zx, zy;
  for (const auto& [k, a] : F.terms()) {
    auto [r, s] = k;
    for (unsigned j = 0; j < s; ++j) zx.push_back({a, 0, s - j - 1, r, j});
    for (unsigned l = 0; l < r; ++l) zy.push_back({-a, r - l - 1, s, l, 0});
  }
  return {canonical(zx), canonical(zy)};
}

std::pair<CommutatorSum, CommutatorSum> commutator_table_hyperelliptic(const UniPoly& P) {
  CommutatorSum zx{{Rational(1), 0, 1, 0, 0}, {Rational(1), 0, 0, 0, 1}}, zy;
  for (unsigned s = 0; s < P.coeffs().size(); ++s)
    for (unsigned l = 0; l < s; ++l) zy.push_back({P.coeffs()[s], s - l - 1, 0, l, 0});
  return {canonical(zx), canonical(zy)};
}

DerivationData derivation_data(const CurveModel& c) {
  DerivationData d;
  if (c.kind() != CurveKind::PlaneCurve) {
    d.partial_x = BiPoly::monomial(1, 0, 0);
    d.zx = {{Rational(1), 0, 0, 0, 0}};
    return d;
  }
  if (c.is_hyperelliptic()) {
    d.partial_x = BiPoly::monomial(2, 0, 1);
    d.partial_y = BiPoly::from_x(c.hyperelliptic_P()->derivative());
    std::tie(d.zx, d.zy) = commutator_table_hyperelliptic(*c.hyperelliptic_P());
    return d;
  }
  d.partial_x = c.F().partial_y();
  d.partial_y = -c.F().partial_x();
  std::tie(d.zx, d.zy) = commutator_table_plane(c.F());
  return d;
}

BiPoly derive(const CurveModel& c, const BiPoly& f) {
  DerivationData d = derivation_data(c);
  return f.partial_x() * d.partial_x + f.partial_y() * d.partial_y;
}

NuKernel nu_kernel(const CurveModel& c) {
  NuKernel k;
  if (c.kind() != CurveKind::PlaneCurve) {
    k.numerator.push_back({Rational(1), 0, 0, 0, 0});
    k.denominator = {Symbol::x};
    return k;
  }
  for (const auto& [key, a] : c.F().terms()) k.numerator.push_back({-a, 0, key.second, key.first, 0});
  k.denominator = {Symbol::x, Symbol::y};
  return k;
}

Rational NuKernel::eval(const std::pair<Rational, Rational>& p, const std::pair<Rational, Rational>& q) const {
  Rational num;
  for (const auto& t : numerator)
    num += t.coeff * p.first.pow(t.ox) * p.second.pow(t.oy) * q.first.pow(t.ix) * q.second.pow(t.iy);
  Rational den(1);
  for (Symbol s : denominator) den *= s == Symbol::x ? q.first - p.first : q.second - p.second;
  if (den.is_zero()) throw std::domain_error("kernel evaluated on its polar locus");
  return num / den;
}

std::string NuKernel::str() const {
  auto mono = [](unsigned ex, unsigned ey) {
    std::string s;
    if (ex) s += ex == 1 ? "x" : "x^" + std::to_string(ex);
    if (ey) s += (s.empty() ? "" : "*") + std::string(ey == 1 ? "y" : "y^" + std::to_string(ey));
    return s.empty() ? std::string("1") : s;
  };
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < numerator.size(); ++i) {
    const auto& t = numerator[i];
    os << (i ? " + " : "") << t.coeff << "*" << mono(t.ox, t.oy) << "(x)" << mono(t.ix, t.iy);
  }
  os << ")";
  for (Symbol s : denominator) {
    char v = symbol_char(s);
    os << "/(1(x)" << v << " - " << v << "(x)1)";
  }
  return os.str();
}

SmoothnessReport smoothness_check(const CurveModel& c) {
  SmoothnessReport rep;
  if (c.kind() != CurveKind::PlaneCurve) return rep;
  const BiPoly& F = c.F();
  BiPoly Fx = F.partial_x(), Fy = F.partial_y();
  UniPoly gx = gcd(resultant_y(F, Fx), resultant_y(F, Fy));
  if (gx.degree() == 0) return rep;
  UniPoly gy = gcd(resultant_y(F.swap_vars(), Fx.swap_vars()), resultant_y(F.swap_vars(), Fy.swap_vars()))
                   .with_var(Symbol::y);
  if (gy.degree() == 0) return rep;
  rep.smooth = false;
  rep.witness = "common factor of resultants: " + gx.str() + " in x, " + gy.str() + " in y";
  for (const auto& x0 : rational_roots(gx)) {
    UniPoly h = gcd(gcd(F.eval_x(x0), Fx.eval_x(x0)), Fy.eval_x(x0));
    if (h.is_zero()) {
      rep.singular_point = std::make_pair(x0, Rational());
      break;
    }
    auto ys = rational_roots(h);
    if (!ys.empty()) {
      rep.singular_point = std::make_pair(x0, ys.front());
      break;
    }
  }
  return rep;
}

}  // namespace cmf
