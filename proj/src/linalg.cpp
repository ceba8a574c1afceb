#include <stdexcept>

#include "cmf/matrix.hpp"

namespace cmf {

MatQ eval_poly(const UniPoly& p, const MatQ& m) {
  if (!m.square()) throw SizeMismatch("polynomial substitution needs a square matrix");
  size_t n = m.rows();
  MatQ r = MatQ::zeros(n, n), id = MatQ::identity(n);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * m + (*it) * id;
  return r;
}

MatQ eval_bipoly(const BiPoly& f, const MatQ& x, const MatQ& y) {
  size_t n = x.rows();
  if (!x.square() || !y.square() || y.rows() != n) throw SizeMismatch("bivariate substitution shapes");
  MatQ r = MatQ::zeros(n, n);
  std::vector<MatQ> xp{MatQ::identity(n)}, yp{MatQ::identity(n)};
  for (const auto& [k, c] : f.terms()) {
    while (xp.size() <= k.first) xp.push_back(xp.back() * x);
    while (yp.size() <= k.second) yp.push_back(yp.back() * y);
    r += c * (xp[k.first] * yp[k.second]);
  }
  return r;
}

Mat<UniPoly> eval_bipoly_x_matrix(const BiPoly& f, const MatQ& x, Symbol s) {
  size_t n = x.rows();
  UniPoly proto(s);
  Mat<UniPoly> r = Mat<UniPoly>::zeros(n, n, proto);
  std::vector<MatQ> xp{MatQ::identity(n)};
  for (const auto& [k, c] : f.terms()) {
    while (xp.size() <= k.first) xp.push_back(xp.back() * x);
    UniPoly mono = UniPoly::monomial(c, k.second, s);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (!xp[k.first](i, j).is_zero()) r(i, j) += mono * xp[k.first](i, j);
  }
  return r;
}

UniPoly char_poly(const MatQ& m, Symbol var) {
  if (!m.square()) throw SizeMismatch("characteristic polynomial of a non-square matrix");
  size_t n = m.rows();
  UniPoly proto(var);
  Mat<UniPoly> a = Mat<UniPoly>::zeros(n, n, proto);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a(i, j) = UniPoly(m(i, j), var);
  for (size_t i = 0; i < n; ++i) a(i, i) -= UniPoly::variable(var);
  UniPoly d = det(a, proto);
  return d.with_var(var);
}

Mat<RatFunc> to_ratfunc(const MatQ& m, Symbol s) {
  return m.map([s](const Rational& q) { return RatFunc(q, s); });
}

Mat<RatFunc> shifted(const MatQ& m, Symbol s) {
  Mat<RatFunc> a = to_ratfunc(m, s);
  for (size_t i = 0; i < m.rows(); ++i) a(i, i) -= RatFunc(UniPoly::variable(s));
  return a;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(MatQ& m) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    Rational inv = m(r, c).inverse();
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

size_t rank(MatQ m) { return rref(m).size(); }

std::vector<MatQ> nullspace(MatQ m) {
  std::vector<size_t> piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (size_t c : piv) is_piv[c] = true;
  std::vector<MatQ> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    MatQ v = MatQ::zeros(m.cols(), 1);
    v(f, 0) = 1;
    for (size_t i = 0; i < piv.size(); ++i) v(piv[i], 0) = -m(i, f);
    basis.push_back(v);
  }
  return basis;
}

Rational resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
  if (!p.is_constant() && !q.is_constant() && p.var() != q.var())
    throw std::invalid_argument("resultant of polynomials in different variables");
  if (p.is_zero() || q.is_zero()) return Rational();
  if (p.degree() == 0) return p.lead().pow(q.degree());
  if (q.degree() == 0) return q.lead().pow(p.degree());
  std::vector<Rational> a(p.coeffs()), b(q.coeffs());
  return det(sylvester(a, b, Rational()));
}

UniPoly resultant_y(const BiPoly& p, const BiPoly& q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
  if (p.is_zero() || q.is_zero()) return UniPoly(Symbol::x);
  auto a = p.coeffs_in_y(), b = q.coeffs_in_y();
  if (a.size() == 1) return a[0].pow(static_cast<unsigned>(b.size() - 1));
  if (b.size() == 1) return b[0].pow(static_cast<unsigned>(a.size() - 1));
  return det(sylvester(a, b, UniPoly(Symbol::x)), UniPoly(Symbol::x)).with_var(Symbol::x);
}

}  // namespace cmf
