#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cmf/rational.hpp"

namespace cmf {

enum class Symbol { x, y, z, t };

char symbol_char(Symbol s);

// Dense univariate polynomial, coefficients lowest degree first.
// Arithmetic between two non-constant polynomials in different variables
// throws std::invalid_argument; constants adapt to the other operand.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(Symbol v) : var_(v) {}
  UniPoly(Symbol v, std::vector<Rational> c);
  UniPoly(const Rational& c, Symbol v = Symbol::x);

  static UniPoly monomial(const Rational& c, unsigned k, Symbol v = Symbol::x);
  static UniPoly variable(Symbol v) { return monomial(1, 1, v); }

  Symbol var() const { return var_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(size_t i) const { return i < c_.size() ? c_[i] : Rational(); }
  Rational lead() const { return c_.empty() ? Rational() : c_.back(); }
  // Lowest exponent with nonzero coefficient; -1 for zero.
  int valuation() const;

  Rational eval(const Rational& a) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly with_var(Symbol v) const;
  UniPoly compose(const UniPoly& inner) const;
  UniPoly pow(unsigned e) const;
  // Drops the lowest k coefficients (exact division by var^k when they vanish).
  UniPoly shift_down(unsigned k) const;
  UniPoly shift_up(unsigned k) const;

  std::string str() const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(const UniPoly& o);
  UniPoly& operator*=(const Rational& s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const UniPoly& b) { return a *= b; }
  friend UniPoly operator*(UniPoly a, const Rational& s) { return a *= s; }
  friend UniPoly operator*(const Rational& s, UniPoly a) { return a *= s; }

  // Equality ignores the variable tag of constants.
  friend bool operator==(const UniPoly& a, const UniPoly& b);
  friend std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.str(); }

  // Euclidean division over Q; throws std::domain_error on zero divisor.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

 private:
  void trim();
  Symbol join(const UniPoly& o) const;

  Symbol var_ = Symbol::x;
  std::vector<Rational> c_;
};

UniPoly operator/(const UniPoly& a, const UniPoly& b);  // quotient
UniPoly operator%(const UniPoly& a, const UniPoly& b);  // remainder
// Monic gcd; gcd(0,0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly lcm(const UniPoly& a, const UniPoly& b);
// Throws std::domain_error if b does not divide a.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XGcd {
  UniPoly g, s, t;
};
XGcd xgcd(const UniPoly& a, const UniPoly& b);
// Rational roots via the rational root test.
std::vector<Rational> rational_roots(const UniPoly& p);

// Laurent polynomial x^shift * base with base(0) != 0 (or zero).
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const UniPoly& p, int shift = 0);

  const UniPoly& base() const { return base_; }
  int shift() const { return shift_; }
  bool is_zero() const { return base_.is_zero(); }
  // deg - val; units have width 0.
  int width() const { return base_.degree(); }
  int valuation() const { return shift_; }
  int top_degree() const { return shift_ + base_.degree(); }
  Rational coeff(int e) const;

  // Associate with monic base and zero shift.
  LaurentPoly normalized() const;
  // The unit u with *this = u * normalized().
  LaurentPoly unit_part() const;
  LaurentPoly inverse_unit() const;  // requires width 0
  LaurentPoly derivative() const;

  std::string str() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.shift_ == b.shift_ && a.base_ == b.base_;
  }
  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.str(); }

  // Canonical residue of a modulo b in Q[x,1/x]: a polynomial of degree < width(b)
  // with shift 0. b must be nonzero.
  static LaurentPoly residue(const LaurentPoly& a, const LaurentPoly& b);
  // Euclidean division by width: a = q*b + r with r = residue(a, b).
  static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b);

 private:
  UniPoly base_;
  int shift_ = 0;
};

// Sparse bivariate polynomial sum a_rs x^r y^s.
class BiPoly {
 public:
  using Key = std::pair<unsigned, unsigned>;
  BiPoly() = default;
  explicit BiPoly(std::map<Key, Rational> terms);
  static BiPoly monomial(const Rational& c, unsigned r, unsigned s);
  static BiPoly from_x(const UniPoly& p);  // p(x)
  static BiPoly from_y(const UniPoly& p);  // p(y)

  const std::map<Key, Rational>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational coeff(unsigned r, unsigned s) const;
  int degree_x() const;
  int degree_y() const;

  BiPoly partial_x() const;
  BiPoly partial_y() const;
  Rational eval(const Rational& x, const Rational& y) const;
  UniPoly eval_x(const Rational& x) const;  // polynomial in y
  UniPoly eval_y(const Rational& y) const;  // polynomial in x
  // Coefficients of y^s as polynomials in x (index s).
  std::vector<UniPoly> coeffs_in_y() const;
  // Coefficients of x^r as polynomials in y (index r).
  std::vector<UniPoly> coeffs_in_x() const;
  BiPoly swap_vars() const;

  std::string str() const;

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);
  BiPoly& operator*=(const Rational& s);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
  friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }
  friend std::ostream& operator<<(std::ostream& os, const BiPoly& p) { return os << p.str(); }

 private:
  void add_term(const Key& k, const Rational& c);
  std::map<Key, Rational> t_;
};

// Element of Q(var): numerator/denominator with monic, coprime denominator.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(const UniPoly& p) : num_(p), den_(Rational(1), p.var()) {}
  RatFunc(const Rational& c, Symbol v = Symbol::x) : num_(c, v), den_(Rational(1), v) {}
  RatFunc(const UniPoly& n, const UniPoly& d);

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }
  Symbol var() const { return num_.is_constant() ? den_.var() : num_.var(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  RatFunc normalized() const { return RatFunc(num_, den_); }

  RatFunc inverse() const;
  RatFunc derivative() const;
  Rational eval(const Rational& a) const;  // throws std::domain_error at a pole

  std::string str() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::ostream& operator<<(std::ostream& os, const RatFunc& p) { return os << p.str(); }

 private:
  UniPoly num_, den_;
};

// Ring helpers used by the generic matrix code.
inline Rational zero_like(const Rational&) { return Rational(); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& a) { return a.is_zero(); }
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

inline UniPoly zero_like(const UniPoly& p) { return UniPoly(p.var()); }
inline UniPoly one_like(const UniPoly& p) { return UniPoly(Rational(1), p.var()); }
inline bool is_zero(const UniPoly& a) { return a.is_zero(); }

inline RatFunc zero_like(const RatFunc& p) { return RatFunc(Rational(), p.var()); }
inline RatFunc one_like(const RatFunc& p) { return RatFunc(Rational(1), p.var()); }
inline bool is_zero(const RatFunc& a) { return a.is_zero(); }
inline RatFunc exact_div(const RatFunc& a, const RatFunc& b) { return a / b; }

inline LaurentPoly zero_like(const LaurentPoly&) { return LaurentPoly(); }
inline LaurentPoly one_like(const LaurentPoly&) { return LaurentPoly(UniPoly(Rational(1))); }
inline bool is_zero(const LaurentPoly& a) { return a.is_zero(); }

}  // namespace cmf
