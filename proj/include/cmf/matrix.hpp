#pragma once

#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmf/errors.hpp"
#include "cmf/poly.hpp"

namespace cmf {

namespace detail {
template <class T>
bool entry_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

// Dense row-major matrix over a commutative ring T. The ring is identified
// through zero_like/one_like/is_zero overloads on T.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(size_t r, size_t c, const T& fill) : r_(r), c_(c), e_(r * c, fill) {}
  Mat(size_t r, size_t c, std::vector<T> e) : r_(r), c_(c), e_(std::move(e)) {
    if (e_.size() != r * c) throw SizeMismatch("matrix entry count does not match shape");
  }

  static Mat zeros(size_t r, size_t c, const T& proto = T()) { return Mat(r, c, zero_like(proto)); }
  static Mat identity(size_t n, const T& proto = T()) {
    Mat m = zeros(n, n, proto);
    for (size_t i = 0; i < n; ++i) m(i, i) = one_like(proto);
    return m;
  }
  static Mat diag(const std::vector<T>& d, const T& proto = T()) {
    Mat m = zeros(d.size(), d.size(), proto);
    for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }
  T& operator()(size_t i, size_t j) { return e_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return e_[i * c_ + j]; }
  const std::vector<T>& entries() const { return e_; }

  Mat transpose() const {
    Mat t(c_, r_, e_.empty() ? T() : e_[0]);
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Mat block(size_t i0, size_t j0, size_t nr, size_t nc) const {
    Mat b(nr, nc, e_.empty() ? T() : e_[0]);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!detail::entry_is_zero(x)) return false;
    return true;
  }

  template <class F>
  auto map(F f) const -> Mat<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    std::vector<U> out;
    out.reserve(e_.size());
    for (const auto& x : e_) out.push_back(f(x));
    return Mat<U>(r_, c_, std::move(out));
  }

  Mat& operator+=(const Mat& o) {
    check_same(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    check_same(o);
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  Mat operator-() const {
    Mat m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw SizeMismatch("matrix product shape mismatch");
    T proto = !a.e_.empty() ? a.e_[0] : (!b.e_.empty() ? b.e_[0] : T());
    Mat m = zeros(a.r_, b.c_, proto);
    for (size_t i = 0; i < a.r_; ++i)
      for (size_t k = 0; k < a.c_; ++k) {
        const T& aik = a(i, k);
        if (detail::entry_is_zero(aik)) continue;
        for (size_t j = 0; j < b.c_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }
  friend Mat operator*(const T& s, Mat a) {
    for (auto& x : a.e_) x = s * x;
    return a;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < r_; ++i) {
      os << (i ? ", [" : "[");
      for (size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j);
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same(const Mat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw SizeMismatch("matrix shapes differ");
  }

  size_t r_ = 0, c_ = 0;
  std::vector<T> e_;
};

using MatQ = Mat<Rational>;

template <class T>
Mat<T> matrix_power(const Mat<T>& m, unsigned e) {
  Mat<T> r = Mat<T>::identity(m.rows(), m.entries().empty() ? T() : m.entries()[0]);
  for (unsigned i = 0; i < e; ++i) r = r * m;
  return r;
}

// Fraction-free Bareiss elimination; T must provide exact_div.
template <class T>
T det(Mat<T> m, const T& proto = T()) {
  if (!m.square()) throw SizeMismatch("determinant of a non-square matrix");
  size_t n = m.rows();
  T one = one_like(n ? m(0, 0) : proto);
  if (n == 0) return one;
  T prev = one;
  bool neg = false;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return zero_like(one);
      for (size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      neg = !neg;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = zero_like(one);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return neg ? -d : d;
}

// Gauss-Jordan inverse over a field; throws SingularMatrix.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
  if (!m.square()) throw SizeMismatch("inverse of a non-square matrix");
  size_t n = m.rows();
  if (n == 0) return m;
  Mat<T> a = m, inv = Mat<T>::identity(n, m(0, 0));
  for (size_t k = 0; k < n; ++k) {
    size_t p = k;
    while (p < n && is_zero(a(p, k))) ++p;
    if (p == n) {
      std::ostringstream os;
      os << det(m);
      throw SingularMatrix("singular matrix " + m.str(), os.str());
    }
    if (p != k)
      for (size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    T piv = one_like(a(k, k)) / a(k, k);
    for (size_t j = 0; j < n; ++j) {
      a(k, j) = a(k, j) * piv;
      inv(k, j) = inv(k, j) * piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == k || is_zero(a(i, k))) continue;
      T f = a(i, k);
      for (size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

// Classical adjugate via cofactors; works over any ring with exact_div.
template <class T>
Mat<T> adjugate(const Mat<T>& m) {
  if (!m.square()) throw SizeMismatch("adjugate of a non-square matrix");
  size_t n = m.rows();
  if (n == 0) return m;
  Mat<T> adj(n, n, m(0, 0));
  if (n == 1) {
    adj(0, 0) = one_like(m(0, 0));
    return adj;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Mat<T> minor(n - 1, n - 1, m(0, 0));
      for (size_t a = 0, ra = 0; a < n; ++a) {
        if (a == j) continue;
        for (size_t b = 0, cb = 0; b < n; ++b) {
          if (b == i) continue;
          minor(ra, cb++) = m(a, b);
        }
        ++ra;
      }
      T c = det(minor);
      adj(i, j) = ((i + j) % 2) ? -c : c;
    }
  return adj;
}

// p(M) by Horner's rule.
MatQ eval_poly(const UniPoly& p, const MatQ& m);
// Sum a_rs X^r Y^s; X and Y are assumed to commute.
MatQ eval_bipoly(const BiPoly& f, const MatQ& x, const MatQ& y);
// F(M, s) for a symbol s: the matrix sum_rs a_rs s^s M^r over Q[s].
Mat<UniPoly> eval_bipoly_x_matrix(const BiPoly& f, const MatQ& x, Symbol s);

// det(m - t*Id) in the given variable.
UniPoly char_poly(const MatQ& m, Symbol var = Symbol::t);
// m - s*Id as a matrix over Q(s).
Mat<RatFunc> shifted(const MatQ& m, Symbol s);
Mat<RatFunc> to_ratfunc(const MatQ& m, Symbol s);

size_t rank(MatQ m);
// Basis of the right kernel {v : m v = 0}, as columns.
std::vector<MatQ> nullspace(MatQ m);

// Sylvester resultant of two univariate polynomials in the same variable.
Rational resultant(const UniPoly& p, const UniPoly& q);
// Resultant in y of two bivariate polynomials, a polynomial in x.
UniPoly resultant_y(const BiPoly& p, const BiPoly& q);

// Sylvester matrix of coefficient lists (lowest degree first).
template <class T>
Mat<T> sylvester(const std::vector<T>& p, const std::vector<T>& q, const T& proto) {
  size_t m = p.size() - 1, n = q.size() - 1;
  Mat<T> s = Mat<T>::zeros(m + n, m + n, proto);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= m; ++j) s(i, i + j) = p[m - j];
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j <= n; ++j) s(n + i, i + j) = q[n - j];
  return s;
}

}  // namespace cmf
