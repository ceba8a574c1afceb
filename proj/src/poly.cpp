#include "cmf/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cmf {

char symbol_char(Symbol s) {
  switch (s) {
    case Symbol::x: return 'x';
    case Symbol::y: return 'y';
    case Symbol::z: return 'z';
    case Symbol::t: return 't';
  }
  return '?';
}

namespace {

std::string monomial_str(const Rational& c, const std::string& mono, bool first) {
  std::string out;
  Rational a = c;
  if (!first) {
    out += a.sign() < 0 ? " - " : " + ";
    a = a.abs();
  } else if (a.sign() < 0 && !mono.empty() && a == Rational(-1)) {
    return "-" + mono;
  }
  if (mono.empty()) return out + a.str();
  if (a.is_one()) return out + mono;
  if (a == Rational(-1)) return out + "-" + mono;
  return out + a.str() + "*" + mono;
}

std::string power_str(char v, long e) {
  if (e == 0) return "";
  if (e == 1) return std::string(1, v);
  return std::string(1, v) + "^" + std::to_string(e);
}

}  // namespace

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(Symbol v, std::vector<Rational> c) : var_(v), c_(std::move(c)) { trim(); }

UniPoly::UniPoly(const Rational& c, Symbol v) : var_(v) {
  if (!c.is_zero()) c_.push_back(c);
}

UniPoly UniPoly::monomial(const Rational& c, unsigned k, Symbol v) {
  UniPoly p(v);
  if (c.is_zero()) return p;
  p.c_.assign(k + 1, Rational());
  p.c_[k] = c;
  return p;
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Symbol UniPoly::join(const UniPoly& o) const {
  if (is_constant()) return o.var_;
  if (o.is_constant() || o.var_ == var_) return var_;
  throw std::invalid_argument(std::string("mixing polynomials in ") + symbol_char(var_) +
                              " and " + symbol_char(o.var_));
}

int UniPoly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<int>(i);
  return -1;
}

Rational UniPoly::eval(const Rational& a) const {
  Rational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * a + *it;
  return r;
}

UniPoly UniPoly::derivative() const {
  UniPoly d(var_);
  for (size_t i = 1; i < c_.size(); ++i) d.c_.push_back(c_[i] * Rational(static_cast<long>(i)));
  d.trim();
  return d;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  UniPoly m = *this;
  Rational l = lead().inverse();
  for (auto& c : m.c_) c *= l;
  return m;
}

UniPoly UniPoly::with_var(Symbol v) const {
  UniPoly p = *this;
  p.var_ = v;
  return p;
}

UniPoly UniPoly::compose(const UniPoly& inner) const {
  UniPoly r(inner.var());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + UniPoly(*it, inner.var());
  return r;
}

UniPoly UniPoly::pow(unsigned e) const {
  UniPoly r(Rational(1), var_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

UniPoly UniPoly::shift_down(unsigned k) const {
  if (k >= c_.size()) return UniPoly(var_);
  return UniPoly(var_, std::vector<Rational>(c_.begin() + k, c_.end()));
}

UniPoly UniPoly::shift_up(unsigned k) const {
  if (is_zero()) return *this;
  std::vector<Rational> c(k, Rational());
  c.insert(c.end(), c_.begin(), c_.end());
  return UniPoly(var_, std::move(c));
}

std::string UniPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  char v = symbol_char(var_);
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    out += monomial_str(c_[i], power_str(v, static_cast<long>(i)), first);
    first = false;
  }
  return out;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  var_ = join(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  var_ = join(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& o) {
  Symbol v = join(o);
  if (is_zero() || o.is_zero()) {
    c_.clear();
    var_ = v;
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  var_ = v;
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.c_ != b.c_) return false;
  return a.is_constant() || a.var_ == b.var_;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Symbol v = a.join(b);
  UniPoly r = a.with_var(v);
  if (a.degree() < b.degree()) return {UniPoly(v), r};
  std::vector<Rational> q(a.c_.size() - b.c_.size() + 1);
  Rational inv = b.lead().inverse();
  size_t bd = b.c_.size() - 1;
  for (size_t i = r.c_.size(); i-- > bd;) {
    if (r.c_[i].is_zero()) continue;
    Rational f = r.c_[i] * inv;
    q[i - bd] = f;
    for (size_t j = 0; j <= bd; ++j) r.c_[i - bd + j] -= f * b.c_[j];
  }
  r.trim();
  return {UniPoly(v, std::move(q)), r};
}

UniPoly operator/(const UniPoly& a, const UniPoly& b) { return UniPoly::divmod(a, b).first; }
UniPoly operator%(const UniPoly& a, const UniPoly& b) { return UniPoly::divmod(a, b).second; }

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly u = a.monic(), v = b.monic();
  while (!v.is_zero()) {
    UniPoly r = (u % v).monic();
    u = std::move(v);
    v = std::move(r);
  }
  return u;
}

UniPoly lcm(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly(a.is_constant() ? b.var() : a.var());
  return exact_div(a * b, gcd(a, b)).monic();
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = UniPoly::divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division: " + a.str() + " / " + b.str());
  return q;
}

XGcd xgcd(const UniPoly& a, const UniPoly& b) {
  Symbol v = a.is_constant() ? b.var() : a.var();
  UniPoly r0 = a, r1 = b;
  UniPoly s0(Rational(1), v), s1(v), t0(v), t1(Rational(1), v);
  while (!r1.is_zero()) {
    auto [q, r] = UniPoly::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational l = r0.lead().inverse();
  return {r0 * l, s0 * l, t0 * l};
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<Rational> rational_roots(const UniPoly& p) {
  std::vector<Rational> roots;
  if (p.is_constant()) return roots;
  UniPoly q = p;
  if (q.valuation() > 0) {
    roots.push_back(Rational());
    q = q.shift_down(static_cast<unsigned>(q.valuation()));
  }
  if (q.is_constant()) return roots;
  mpz_class den = 1;
  for (const auto& c : q.coeffs()) den = lcm(den, c.den());
  mpz_class a0 = (q.coeff(0) * Rational(mpq_class(den))).num();
  mpz_class an = (q.lead() * Rational(mpq_class(den))).num();
  for (const auto& num : positive_divisors(a0)) {
    for (const auto& d : positive_divisors(an)) {
      for (int sgn : {1, -1}) {
        Rational cand(mpq_class(num * sgn, d));
        if (q.eval(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ------------------------------------------------------------ LaurentPoly

LaurentPoly::LaurentPoly(const UniPoly& p, int shift) {
  if (p.is_zero()) return;
  int v = p.valuation();
  base_ = p.shift_down(static_cast<unsigned>(v)).with_var(Symbol::x);
  shift_ = shift + v;
}

Rational LaurentPoly::coeff(int e) const {
  int i = e - shift_;
  if (i < 0) return Rational();
  return base_.coeff(static_cast<size_t>(i));
}

LaurentPoly LaurentPoly::normalized() const {
  if (is_zero()) return *this;
  return LaurentPoly(base_.monic(), 0);
}

LaurentPoly LaurentPoly::unit_part() const {
  if (is_zero()) return LaurentPoly(UniPoly(Rational(1)));
  return LaurentPoly(UniPoly(base_.lead()), shift_);
}

LaurentPoly LaurentPoly::inverse_unit() const {
  if (is_zero() || width() != 0) throw std::domain_error("not a unit in Q[x,1/x]: " + str());
  return LaurentPoly(UniPoly(base_.lead().inverse()), -shift_);
}

LaurentPoly LaurentPoly::derivative() const {
  if (is_zero()) return *this;
  UniPoly xb = base_.derivative().shift_up(1) + base_ * Rational(shift_);
  return LaurentPoly(xb, shift_ - 1);
}

std::string LaurentPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  const auto& c = base_.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    out += monomial_str(c[i], power_str('x', shift_ + static_cast<long>(i)), first);
    first = false;
  }
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  r.base_ = -r.base_;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int m = std::min(shift_, o.shift_);
  UniPoly s = base_.shift_up(static_cast<unsigned>(shift_ - m)) +
              o.base_.shift_up(static_cast<unsigned>(o.shift_ - m));
  return *this = LaurentPoly(s, m);
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (is_zero() || o.is_zero()) return *this = LaurentPoly();
  return *this = LaurentPoly(base_ * o.base_, shift_ + o.shift_);
}

LaurentPoly LaurentPoly::residue(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("Laurent residue modulo zero");
  UniPoly B = b.base_.monic();
  if (B.degree() == 0 || a.is_zero()) return LaurentPoly();
  UniPoly r = a.base_ % B;
  UniPoly step;
  if (a.shift_ >= 0) {
    step = UniPoly::variable(Symbol::x);
  } else {
    // x^{-1} mod B from B = B0 + x*C: x*(-C/B0) = 1 mod B.
    step = B.shift_down(1) * (-B.coeff(0).inverse());
  }
  for (int i = 0; i < std::abs(a.shift_); ++i) r = (r * step) % B;
  return LaurentPoly(r, 0);
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::divmod(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = residue(a, b);
  LaurentPoly d = a - r;
  if (d.is_zero()) return {LaurentPoly(), r};
  UniPoly q = exact_div(d.base_, b.base_);
  return {LaurentPoly(q, d.shift_ - b.shift_), r};
}

// ----------------------------------------------------------------- BiPoly

BiPoly::BiPoly(std::map<Key, Rational> terms) {
  for (auto& [k, c] : terms)
    if (!c.is_zero()) t_.emplace(k, c);
}

BiPoly BiPoly::monomial(const Rational& c, unsigned r, unsigned s) {
  BiPoly p;
  p.add_term({r, s}, c);
  return p;
}

BiPoly BiPoly::from_x(const UniPoly& p) {
  BiPoly b;
  for (size_t i = 0; i < p.coeffs().size(); ++i) b.add_term({static_cast<unsigned>(i), 0}, p.coeffs()[i]);
  return b;
}

BiPoly BiPoly::from_y(const UniPoly& p) {
  BiPoly b;
  for (size_t i = 0; i < p.coeffs().size(); ++i) b.add_term({0, static_cast<unsigned>(i)}, p.coeffs()[i]);
  return b;
}

void BiPoly::add_term(const Key& k, const Rational& c) {
  if (c.is_zero()) return;
  auto it = t_.find(k);
  if (it == t_.end()) {
    t_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

bool BiPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == Key{0, 0});
}

Rational BiPoly::coeff(unsigned r, unsigned s) const {
  auto it = t_.find({r, s});
  return it == t_.end() ? Rational() : it->second;
}

int BiPoly::degree_x() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, static_cast<int>(k.first));
  return d;
}

int BiPoly::degree_y() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, static_cast<int>(k.second));
  return d;
}

BiPoly BiPoly::partial_x() const {
  BiPoly d;
  for (const auto& [k, c] : t_)
    if (k.first > 0) d.add_term({k.first - 1, k.second}, c * Rational(static_cast<long>(k.first)));
  return d;
}

BiPoly BiPoly::partial_y() const {
  BiPoly d;
  for (const auto& [k, c] : t_)
    if (k.second > 0) d.add_term({k.first, k.second - 1}, c * Rational(static_cast<long>(k.second)));
  return d;
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
  Rational r;
  for (const auto& [k, c] : t_) r += c * x.pow(k.first) * y.pow(k.second);
  return r;
}

UniPoly BiPoly::eval_x(const Rational& x) const {
  UniPoly r(Symbol::y);
  for (const auto& [k, c] : t_) r += UniPoly::monomial(c * x.pow(k.first), k.second, Symbol::y);
  return r;
}

UniPoly BiPoly::eval_y(const Rational& y) const {
  UniPoly r(Symbol::x);
  for (const auto& [k, c] : t_) r += UniPoly::monomial(c * y.pow(k.second), k.first, Symbol::x);
  return r;
}

std::vector<UniPoly> BiPoly::coeffs_in_y() const {
  std::vector<UniPoly> out(static_cast<size_t>(degree_y() + 1), UniPoly(Symbol::x));
  for (const auto& [k, c] : t_) out[k.second] += UniPoly::monomial(c, k.first, Symbol::x);
  return out;
}

std::vector<UniPoly> BiPoly::coeffs_in_x() const {
  std::vector<UniPoly> out(static_cast<size_t>(degree_x() + 1), UniPoly(Symbol::y));
  for (const auto& [k, c] : t_) out[k.first] += UniPoly::monomial(c, k.second, Symbol::y);
  return out;
}

BiPoly BiPoly::swap_vars() const {
  BiPoly s;
  for (const auto& [k, c] : t_) s.add_term({k.second, k.first}, c);
  return s;
}

std::string BiPoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    std::string m = power_str('x', it->first.first);
    std::string my = power_str('y', it->first.second);
    if (!m.empty() && !my.empty()) m += "*";
    m += my;
    out += monomial_str(it->second, m, first);
    first = false;
  }
  return out;
}

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  for (const auto& [k, c] : o.t_) add_term(k, -c);
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  BiPoly r;
  for (const auto& [ka, ca] : t_)
    for (const auto& [kb, cb] : o.t_) r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
  return *this = std::move(r);
}

BiPoly& BiPoly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c *= s;
  return *this;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const UniPoly& n, const UniPoly& d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  Symbol v = n.is_constant() ? d.var() : n.var();
  if (!d.is_constant() && !n.is_constant() && d.var() != n.var())
    throw std::invalid_argument("numerator and denominator in different variables");
  if (n.is_zero()) {
    num_ = UniPoly(v);
    den_ = UniPoly(Rational(1), v);
    return;
  }
  UniPoly g = gcd(n, d);
  UniPoly nn = exact_div(n, g), dd = exact_div(d, g);
  Rational l = dd.lead().inverse();
  num_ = (nn * l).with_var(v);
  den_ = (dd * l).with_var(v);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::derivative() const {
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RatFunc::eval(const Rational& a) const {
  Rational d = den_.eval(a);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole of " + str());
  return num_.eval(a) / d;
}

std::string RatFunc::str() const {
  if (is_polynomial()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
  return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) return *this = RatFunc(num_ * o.num_);
  return *this = RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

}  // namespace cmf
