#include "cmf/szego.hpp"

#include "cmf/errors.hpp"

namespace cmf {

namespace {

const UniPoly kZero{Symbol::z};

void add_at(std::vector<UniPoly>& v, size_t j, const UniPoly& p) {
  if (v.size() <= j) v.resize(j + 1, kZero);
  v[j] += p;
}

// Coefficients of h^j in f(z + h).
std::vector<UniPoly> shift_expansion(const UniPoly& f) {
  std::vector<UniPoly> out;
  UniPoly g = f.with_var(Symbol::z);
  for (unsigned j = 0; !g.is_zero(); ++j) {
    add_at(out, j, g * factorial(j).inverse());
    g = g.derivative();
  }
  return out;
}

// Truncated series in z and h, total degree <= N.
class Series {
 public:
  explicit Series(unsigned N) : N_(N), c_((N + 1) * (N + 1)) {}

  unsigned order() const { return N_; }
  Rational& at(unsigned i, unsigned j) { return c_[i * (N_ + 1) + j]; }
  const Rational& at(unsigned i, unsigned j) const { return c_[i * (N_ + 1) + j]; }

  static Series from_rows(const std::vector<UniPoly>& rows, unsigned N) {
    Series s(N);
    for (unsigned j = 0; j < rows.size() && j <= N; ++j)
      for (unsigned i = 0; i + j <= N; ++i) s.at(i, j) = rows[j].coeff(i);
    return s;
  }

  Series operator*(const Series& o) const {
    Series r(N_);
    for (unsigned i = 0; i <= N_; ++i)
      for (unsigned j = 0; i + j <= N_; ++j) {
        if (at(i, j).is_zero()) continue;
        for (unsigned k = 0; i + j + k <= N_; ++k)
          for (unsigned l = 0; i + j + k + l <= N_; ++l)
            if (!o.at(k, l).is_zero()) r.at(i + k, j + l) += at(i, j) * o.at(k, l);
      }
    return r;
  }
  Series operator+(const Series& o) const {
    Series r = *this;
    for (size_t t = 0; t < c_.size(); ++t) r.c_[t] += o.c_[t];
    return r;
  }
  Series scaled(const Rational& s) const {
    Series r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  // sum_k coef[k] u^k where u = this / c0 - 1
  Series compose_unit(const Rational& c0, Rational (*coef)(unsigned)) const {
    Series u = scaled(c0.inverse());
    u.at(0, 0) -= Rational(1);
    Series out(N_), p(N_);
    p.at(0, 0) = Rational(1);
    for (unsigned k = 0; k <= N_; ++k) {
      out = out + p.scaled(coef(k));
      p = p * u;
    }
    return out;
  }

 private:
  unsigned N_;
  std::vector<Rational> c_;
};

Rational geometric(unsigned k) { return k % 2 ? Rational(-1) : Rational(1); }

// binomial(1/2, k)
Rational half_binomial(unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= (Rational(1, 2) - Rational(static_cast<long>(i))) / Rational(static_cast<long>(i + 1));
  return r;
}

// sqrt(w'(z) w'(z + h)) / ((w(z + h) - w(z)) / h) - 1
Series gamma_defect(const UniPoly& w, unsigned order) {
  UniPoly dw = w.with_var(Symbol::z).derivative();
  Rational c = dw.coeff(0);
  if (c.is_zero()) throw PreconditionError("parameter change has w'(0) = 0", w.str());
  std::vector<UniPoly> wexp = shift_expansion(w);
  std::vector<UniPoly> q(wexp.begin() + std::min<size_t>(1, wexp.size()), wexp.end());
  Series Q = Series::from_rows(q, order);
  Series P = Series::from_rows({dw}, order) * Series::from_rows(shift_expansion(dw), order);
  // the branch with sqrt(w'(z) w'(z)) = w'(z)
  Series root = P.compose_unit(c * c, half_binomial).scaled(c);
  Series inv = Q.compose_unit(c, geometric).scaled(c.inverse());
  Series r = root * inv;
  r.at(0, 0) -= Rational(1);
  return r;
}

}  // namespace

UniPoly HalfFormOp::apply(const UniPoly& f) const {
  UniPoly g = f.with_var(Symbol::z);
  return a * g.derivative() + b * g;
}

std::vector<UniPoly> diagonal_expansion(const BiPoly& phi) {
  std::vector<UniPoly> out;
  for (const auto& [key, c] : phi.terms()) {
    auto [r, s] = key;
    for (unsigned j = 0; j <= s; ++j) add_at(out, j, UniPoly::monomial(c * binomial(s, j), r + s - j, Symbol::z));
  }
  return out;
}

UniPoly residue_action(const LocalKernel& K, const UniPoly& f) {
  if (K.m == 0) throw PreconditionError("pole order must be at least 1");
  std::vector<UniPoly> fe = shift_expansion(f), pe = diagonal_expansion(K.phi);
  UniPoly out = kZero;
  for (unsigned j = 0; j < K.m; ++j) {
    unsigned l = K.m - 1 - j;
    if (j < fe.size() && l < pe.size()) out += fe[j] * pe[l];
  }
  return out;
}

HalfFormOp extract_operator(const LocalKernel& K) {
  if (K.m != 2) throw PreconditionError("extract_operator needs pole order 2, got " + std::to_string(K.m));
  std::vector<UniPoly> pe = diagonal_expansion(K.phi);
  pe.resize(std::max<size_t>(pe.size(), 2), kZero);
  return {pe[0], pe[1]};
}

LocalKernel kernel_from_operator(const HalfFormOp& op) {
  BiPoly a = BiPoly::from_x(op.a.with_var(Symbol::x)), b = BiPoly::from_x(op.b.with_var(Symbol::x));
  BiPoly diff = BiPoly::monomial(1, 0, 1) - BiPoly::monomial(1, 1, 0);
  return {a + b * diff, 2};
}

bool gamma_skew_check(const UniPoly& w, unsigned order) {
  if (order < 2) throw PreconditionError("truncation order must be at least 2");
  Series r = gamma_defect(w, order);
  for (unsigned j = 0; j <= 1; ++j)
    for (unsigned i = 0; i + j <= order; ++i)
      if (!r.at(i, j).is_zero()) return false;
  return true;
}

UniPoly gamma_correction(const UniPoly& w, unsigned order) {
  if (order < 2) throw PreconditionError("truncation order must be at least 2");
  Series r = gamma_defect(w, order);
  std::vector<Rational> c;
  for (unsigned i = 0; i + 2 <= order; ++i) c.push_back(r.at(i, 2));
  return UniPoly(Symbol::z, c);
}

}  // namespace cmf
