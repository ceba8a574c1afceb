#include "cmf/forge.hpp"

#include <sstream>

#include "cmf/errors.hpp"

namespace cmf {

namespace {

Mat<RatFunc> rf(const MatQ& m, Symbol s) { return to_ratfunc(m, s); }

// (M^t - s)^-1 over Q(s).
Mat<RatFunc> shifted_inverse(const MatQ& m, Symbol s) { return inverse(shifted(m.transpose(), s)); }

Mat<RatFunc> scale(const Mat<RatFunc>& m, const RatFunc& c) { return c * m; }

UniPoly var_poly(Symbol s) { return UniPoly::variable(s); }

// Factors of nu(z) with the dual representation substituted in the second slot.
std::vector<Factor> nu_factors(const CMPoint& p) {
  NuKernel k = nu_kernel(p.curve);
  size_t n = p.n;
  MatQ Xt = p.X.transpose(), Yt = p.Y_or_zero().transpose();
  bool has_y = false;
  for (Symbol s : k.denominator) has_y = has_y || s == Symbol::y;
  Symbol nsym = has_y ? Symbol::y : Symbol::x;
  Mat<RatFunc> num = Mat<RatFunc>::zeros(n, n, RatFunc(Rational(), nsym));
  for (const auto& t : k.numerator) {
    if (t.ox != 0 && has_y) throw InvariantBreach("nu numerator mixes x into the y factor");
    unsigned outer = has_y ? t.oy : t.ox;
    RatFunc c(UniPoly::monomial(t.coeff, outer, nsym));
    num += scale(rf(matrix_power(Xt, t.ix) * matrix_power(Yt, t.iy), nsym), c);
  }
  std::vector<Factor> out;
  if (!has_y) {
    out.push_back({Symbol::x, shifted_inverse(p.X, Symbol::x) * num});
    return out;
  }
  out.push_back({Symbol::x, shifted_inverse(p.X, Symbol::x)});
  out.push_back({Symbol::y, shifted_inverse(p.Y_or_zero(), Symbol::y) * num});
  return out;
}

Rational eval_rf(const RatFunc& f, const Point& at, Symbol s) {
  return f.eval(s == Symbol::y ? at.second : at.first);
}

RingElem to_elem(const RatFunc& f, Symbol s, const RingPtr& r) {
  if (s == Symbol::x) return RingElem(r, f.num().with_var(Symbol::x), UniPoly(), f.den().with_var(Symbol::x));
  if (!f.is_polynomial()) throw UnsupportedModel("y-denominator in a coefficient: " + f.str());
  BiPoly b;
  const auto& c = f.num().coeffs();
  for (size_t i = 0; i < c.size(); ++i) b += BiPoly::monomial(c[i] / f.den().lead(), 0, static_cast<unsigned>(i));
  return RingElem::from_bipoly(r, b);
}

Mat<RingElem> to_elem(const Mat<RatFunc>& m, Symbol s, const RingPtr& r) {
  return m.map([&](const RatFunc& f) { return to_elem(f, s, r); });
}

Mat<RingElem> to_elem(const MatQ& m, const RingPtr& r) {
  return m.map([&](const Rational& q) { return RingElem(r, q); });
}

std::string monomial_poly(const BiPoly& b) { return b.str(); }

}  // namespace

std::string OrderedProduct::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    os << (i ? " + " : "") << t.coeff << " * " << t.left.str();
    for (const auto& f : t.factors) os << " . {" << symbol_char(f.var) << ": " << f.m.str() << "}";
    os << " . " << t.right.str();
    if (!(t.tail == BiPoly::monomial(Rational(1), 0, 0))) os << " * (" << monomial_poly(t.tail) << ")";
  }
  return os.str();
}

MatQ evaluate(const OrderedProduct& e, const Point& at) {
  if (e.terms.empty()) throw SizeMismatch("shape of an empty product is unknown");
  MatQ out = MatQ::zeros(e.terms[0].left.rows(), e.terms[0].right.cols());
  for (const auto& t : e.terms) {
    MatQ m = t.left;
    for (const auto& f : t.factors) {
      if (f.var == Symbol::z) throw UnsupportedModel("cannot evaluate a z factor at a point");
      try {
        m = m * f.m.map([&](const RatFunc& r) { return eval_rf(r, at, f.var); });
      } catch (const std::domain_error&) {
        throw PreconditionError("evaluation point is a pole of a factor");
      }
    }
    Rational s = t.coeff * t.tail.eval(at.first, at.second);
    out += s * (m * t.right);
  }
  return out;
}

std::string KappaElement::str() const { return "(" + lead.str() + ") + " + rest.str(); }

BiPoly generator_function(const CMPoint& p, size_t i) {
  if (!p.bundle) {
    if (i != 0) throw SizeMismatch("trivial bundle has a single generator");
    return BiPoly::monomial(Rational(1), 0, 0);
  }
  const RingElem& e = p.bundle->v.at(i);
  if (e.d().degree() > 0) throw PreconditionError("bundle generator is not polynomial", e.str());
  BiPoly b;
  for (size_t k = 0; k < e.a().coeffs().size(); ++k) b += BiPoly::monomial(e.a().coeffs()[k], static_cast<unsigned>(k), 0);
  for (size_t k = 0; k < e.b().coeffs().size(); ++k) b += BiPoly::monomial(e.b().coeffs()[k], static_cast<unsigned>(k), 1);
  return b;
}

OrderedProduct delta_V(const CMPoint& p) {
  OrderedProduct out;
  if (p.n == 0) return out;
  auto f = nu_factors(p);
  for (size_t i = 0; i < p.ws.size(); ++i)
    out.terms.push_back({Rational(1), MatQ::identity(p.n), f, p.ws[i].transpose(), generator_function(p, i)});
  return out;
}

OrderedProduct delta_V_Delta(const CMPoint& p) {
  OrderedProduct out;
  if (p.n == 0) return out;
  for (size_t i = 0; i < p.ws.size(); ++i)
    out.terms.push_back({Rational(1), MatQ::identity(p.n), {}, p.ws[i].transpose(), generator_function(p, i)});
  return out;
}

std::vector<MatQ> delta_identity_residual(const CMPoint& p, const Point& at) {
  if (p.n == 0) return {};
  DerivationData dd = derivation_data(p.curve);
  MatQ dz = evaluate(delta_V(p), at), dD = evaluate(delta_V_Delta(p), at);
  MatQ Xt = p.X.transpose(), Yt = p.Y_or_zero().transpose();
  auto side = [&](const MatQ& St, const Rational& s, const CommutatorSum& table) {
    MatQ r = (St - s * MatQ::identity(p.n)) * dz;
    for (const auto& t : table) {
      Rational g = t.coeff * at.first.pow(t.lx) * at.second.pow(t.ly);
      r -= g * (matrix_power(Xt, t.rx) * matrix_power(Yt, t.ry) * dD);
    }
    return r;
  };
  std::vector<MatQ> out{side(Xt, at.first, dd.zx)};
  if (p.curve.is_plane()) out.push_back(side(Yt, at.second, dd.zy));
  return out;
}

KappaElement kappa_from_nu(const CMPoint& p, size_t i) {
  KappaElement k{p.curve, generator_function(p, i), {}};
  if (p.n == 0) return k;
  std::vector<Factor> f{{Symbol::z, shifted_inverse(p.Z, Symbol::z)}};
  for (auto& g : nu_factors(p)) f.push_back(std::move(g));
  for (size_t j = 0; j < p.ws.size(); ++j)
    k.rest.terms.push_back({Rational(-1), p.vs.at(i).transpose(), f, p.ws[j].transpose(), generator_function(p, j)});
  return k;
}

KappaElement kappa(const CMPoint& p, size_t i) {
  KappaElement k{p.curve, generator_function(p, i), {}};
  if (p.n == 0) return k;
  size_t n = p.n;
  std::vector<Factor> f{{Symbol::z, shifted_inverse(p.Z, Symbol::z)}, {Symbol::x, shifted_inverse(p.X, Symbol::x)}};
  Rational sign(-1);
  if (p.curve.is_hyperelliptic()) {
    // (Y^t + y)
    Mat<RatFunc> yf = rf(p.Y->transpose(), Symbol::y) +
                      scale(Mat<RatFunc>::identity(n, RatFunc(Rational(1), Symbol::y)), RatFunc(var_poly(Symbol::y)));
    f.push_back({Symbol::y, yf});
  } else if (p.curve.is_plane()) {
    // (Y^t - y)^-1 F(X^t, y)
    Mat<UniPoly> Fy = eval_bipoly_x_matrix(p.curve.F(), p.X.transpose(), Symbol::y);
    Mat<RatFunc> FyR = Fy.map([](const UniPoly& u) { return RatFunc(u); });
    f.push_back({Symbol::y, shifted_inverse(*p.Y, Symbol::y) * FyR});
    sign = Rational(1);
  }
  for (size_t j = 0; j < p.ws.size(); ++j)
    k.rest.terms.push_back({sign, p.vs.at(i).transpose(), f, p.ws[j].transpose(), generator_function(p, j)});
  return k;
}

DiffOp normal_order(const KappaElement& e, const UniPoly& prefix, const RingPtr& r) {
  auto zop = [&](const UniPoly& q) {
    std::vector<RingElem> c;
    for (const auto& a : q.coeffs()) c.push_back(RingElem(r, a));
    return DiffOp(r, c);
  };
  DiffOp out = zop(prefix) * DiffOp(RingElem::from_bipoly(r, e.lead));
  RatFunc pre(prefix.with_var(Symbol::z));
  for (const auto& t : e.rest.terms) {
    if (t.factors.empty() || t.factors[0].var != Symbol::z)
      throw UnsupportedModel("normal ordering expects the z factor leftmost");
    Mat<RatFunc> zm = t.factors[0].m.map([&](const RatFunc& q) { return pre * q; });
    for (const auto& q : zm.entries())
      if (!q.is_polynomial())
        throw InvariantBreach("z-denominator survives the determinant prefix: " + q.str());
    Mat<UniPoly> row = (t.left.map([](const Rational& q) { return RatFunc(q, Symbol::z); }) * zm)
                           .map([](const RatFunc& q) { return q.num() * q.den().lead().inverse(); });
    Mat<RingElem> col = to_elem(t.right, r);
    RingElem tail = RingElem::from_bipoly(r, t.tail);
    for (size_t k = t.factors.size(); k-- > 1;) {
      const auto& fk = t.factors[k];
      if (fk.var == Symbol::z) throw UnsupportedModel("more than one z factor");
      col = to_elem(fk.m, fk.var, r) * col;
    }
    if (row.rows() != 1) throw SizeMismatch("kappa term must be a scalar");
    for (size_t j = 0; j < row.cols(); ++j) {
      if (row(0, j).is_zero() || col(j, 0).is_zero()) continue;
      out += DiffOp(RingElem(r, t.coeff)) * zop(row(0, j)) * DiffOp(col(j, 0) * tail);
    }
  }
  return out;
}

bool FractionalIdeal::normal_ordered() const {
  for (const auto& g : generators)
    if (!g.op) return false;
  return true;
}

std::vector<DiffOp> FractionalIdeal::ops() const {
  std::vector<DiffOp> out;
  for (const auto& g : generators) {
    if (!g.op) throw UnsupportedModel("generator " + g.kind + " is symbolic on " + curve.str());
    out.push_back(*g.op);
  }
  return out;
}

FractionalIdeal ideal_generators(const CMPoint& p) {
  FractionalIdeal I;
  I.curve = p.curve;
  RingPtr r;
  try {
    r = CoeffRing::of(p.curve);
  } catch (const UnsupportedModel&) {
  }
  UniPoly cx = char_poly(p.X, Symbol::x), cy = char_poly(p.Y_or_zero(), Symbol::y), cz = char_poly(p.Z, Symbol::z);
  auto from_x = [](const UniPoly& u) {
    BiPoly b;
    for (size_t k = 0; k < u.coeffs().size(); ++k) b += BiPoly::monomial(u.coeffs()[k], static_cast<unsigned>(k), 0);
    return b;
  };
  auto from_y = [](const UniPoly& u) {
    BiPoly b;
    for (size_t k = 0; k < u.coeffs().size(); ++k) b += BiPoly::monomial(u.coeffs()[k], 0, static_cast<unsigned>(k));
    return b;
  };
  for (size_t i = 0; i < p.vs.size(); ++i) {
    BiPoly v = generator_function(p, i);
    IdealGenerator gx{"det(X-x)", i, std::nullopt, from_x(cx) * v, std::nullopt, std::nullopt, {}};
    gx.symbolic = gx.function->str();
    if (r) gx.op = DiffOp(RingElem::from_bipoly(r, *gx.function));
    I.generators.push_back(gx);
    if (p.curve.is_plane()) {
      IdealGenerator gy{"det(Y-y)", i, std::nullopt, from_y(cy) * v, std::nullopt, std::nullopt, {}};
      gy.symbolic = gy.function->str();
      if (r) gy.op = DiffOp(RingElem::from_bipoly(r, *gy.function));
      I.generators.push_back(gy);
    }
    IdealGenerator gz{"det(Z-z)*kappa", i, std::nullopt, std::nullopt, kappa(p, i), cz, {}};
    gz.symbolic = "(" + cz.str() + ") * (" + gz.kappa->str() + ")";
    if (r) gz.op = normal_order(*gz.kappa, cz, r);
    I.generators.push_back(gz);
  }
  return I;
}

}  // namespace cmf
