#include "cmf/lattice.hpp"

#include <algorithm>
#include <optional>

#include "cmf/errors.hpp"

namespace cmf {

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
  auto [q, r] = LaurentPoly::divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact Laurent division");
  return q;
}

namespace {

template <class E>
struct Euclid;

template <>
struct Euclid<UniPoly> {
  static int size(const UniPoly& a) { return a.degree(); }
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) { return {a / b, a % b}; }
  static UniPoly unit_inverse(const UniPoly& a) { return UniPoly(a.lead().inverse()); }
  static UniPoly one() { return UniPoly(Rational(1)); }
  static const std::vector<Rational>& coeffs(const UniPoly& a) { return a.coeffs(); }
  static UniPoly scaled(const UniPoly& a, const Rational& s) { return a * s; }
};

template <>
struct Euclid<LaurentPoly> {
  static int size(const LaurentPoly& a) { return a.width(); }
  static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b) {
    return LaurentPoly::divmod(a, b);
  }
  static LaurentPoly unit_inverse(const LaurentPoly& a) { return a.unit_part().inverse_unit(); }
  static LaurentPoly one() { return LaurentPoly(UniPoly(Rational(1))); }
  static const std::vector<Rational>& coeffs(const LaurentPoly& a) { return a.base().coeffs(); }
  static LaurentPoly scaled(const LaurentPoly& a, const Rational& s) { return LaurentPoly(a.base() * s, a.shift()); }
};

template <class E>
void row_swap(Mat<E>& m, size_t a, size_t b) {
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

// row a -= q * row b
template <class E>
void row_sub(Mat<E>& m, size_t a, size_t b, const E& q) {
  for (size_t j = 0; j < m.cols(); ++j)
    if (!m(b, j).is_zero()) m(a, j) -= q * m(b, j);
}

template <class E>
void row_scale(Mat<E>& m, size_t a, const E& u) {
  for (size_t j = 0; j < m.cols(); ++j) m(a, j) = u * m(a, j);
}

// Rescales row a of H (and U) by the positive rational making its
// coefficients coprime integers; a unit, so the span is unchanged.
template <class E>
void make_primitive(Mat<E>& H, Mat<E>& U, size_t a, bool with_u) {
  using T = Euclid<E>;
  mpz_class g = 0, l = 1;
  for (size_t j = 0; j < H.cols(); ++j)
    for (const auto& c : T::coeffs(H(a, j))) {
      if (c.is_zero()) continue;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    }
  if (g == 0 || (g == 1 && l == 1)) return;
  Rational s(mpq_class(l, g));
  for (size_t j = 0; j < H.cols(); ++j)
    if (!H(a, j).is_zero()) H(a, j) = T::scaled(H(a, j), s);
  if (with_u)
    for (size_t j = 0; j < U.cols(); ++j)
      if (!U(a, j).is_zero()) U(a, j) = T::scaled(U(a, j), s);
}

template <class E>
HnfResult<E> hnf_impl(const Mat<E>& m, bool with_u = true) {
  using T = Euclid<E>;
  HnfResult<E> res;
  res.H = m;
  size_t r = m.rows();
  res.U = with_u ? Mat<E>::zeros(r, r, T::one()) : Mat<E>();
  for (size_t i = 0; with_u && i < r; ++i) res.U(i, i) = T::one();
  Mat<E>& H = res.H;
  Mat<E>& U = res.U;
  for (size_t i = 0; i < r; ++i) make_primitive(H, U, i, with_u);
  size_t pr = 0;
  for (size_t j = 0; j < m.cols() && pr < r; ++j) {
    while (true) {
      size_t best = r;
      for (size_t i = pr; i < r; ++i)
        if (!H(i, j).is_zero() && (best == r || T::size(H(i, j)) < T::size(H(best, j)))) best = i;
      if (best == r) break;
      if (best != pr) {
        row_swap(H, pr, best);
        if (with_u) row_swap(U, pr, best);
      }
      bool clean = true;
      for (size_t i = pr + 1; i < r; ++i) {
        if (H(i, j).is_zero()) continue;
        E q = T::divmod(H(i, j), H(pr, j)).first;
        row_sub(H, i, pr, q);
        if (with_u) row_sub(U, i, pr, q);
        make_primitive(H, U, i, with_u);
        if (!H(i, j).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (H(pr, j).is_zero()) continue;
    E u = T::unit_inverse(H(pr, j));
    row_scale(H, pr, u);
    if (with_u) row_scale(U, pr, u);
    for (size_t i = 0; i < pr; ++i) {
      if (H(i, j).is_zero()) continue;
      E q = T::divmod(H(i, j), H(pr, j)).first;
      row_sub(H, i, pr, q);
      if (with_u) row_sub(U, i, pr, q);
    }
    res.pivot_cols.push_back(j);
    ++pr;
  }
  res.rank = pr;
  return res;
}

Mat<UniPoly> to_poly(const Mat<LaurentPoly>& m) {
  return m.map([](const LaurentPoly& e) {
    if (e.is_zero()) return UniPoly(Symbol::x);
    if (e.shift() < 0) throw InvariantBreach("negative power of x in a polynomial module: " + e.str());
    return e.base().shift_up(static_cast<unsigned>(e.shift()));
  });
}

Mat<LaurentPoly> scaled(const Mat<LaurentPoly>& m, const UniPoly& f) {
  LaurentPoly s(f);
  return m.map([&](const LaurentPoly& e) { return s * e; });
}

// Nonzero rows of the Hermite form, as Laurent entries.
Mat<LaurentPoly> canonical_rows(const FiltrationModule& m, const UniPoly& scale_by) {
  Mat<LaurentPoly> rows = scaled(m.rows, scale_by);
  if (m.laurent) {
    auto h = hnf_impl(rows, false);
    return h.H.block(0, 0, h.rank, h.H.cols());
  }
  auto h = hnf_impl(to_poly(rows), false);
  return h.H.block(0, 0, h.rank, h.H.cols()).map([](const UniPoly& u) { return LaurentPoly(u); });
}


// ---- local elimination over Q[t]/t^M, t = x - a

using Trunc = std::vector<Rational>;  // coefficients of t^0 .. t^(M-1)
using LRow = std::vector<Trunc>;

int val(const Trunc& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (!s[i].is_zero()) return static_cast<int>(i);
  return static_cast<int>(s.size());
}

// Coefficients of p(a + t) below t^M, by repeated synthetic division.
Trunc taylor(const UniPoly& p, const Rational& a, int M) {
  Trunc out(M);
  std::vector<Rational> q = p.coeffs();
  for (int i = 0; i < M && !q.empty(); ++i) {
    Rational r = q.back();
    for (size_t j = q.size() - 1; j-- > 0;) {
      Rational c = q[j];
      q[j] = r;
      r = c + a * r;
    }
    out[i] = r;
    q.pop_back();
  }
  return out;
}

// dst -= q * src, q given below t^(M - shift) and applied as t^shift q.
void axpy(Trunc& dst, const Trunc& q, int shift, const Trunc& src) {
  int M = static_cast<int>(dst.size());
  for (int i = 0; i + shift < M; ++i) {
    if (q[i].is_zero()) continue;
    for (int j = 0; i + shift + j < M; ++j)
      if (!src[j].is_zero()) dst[i + shift + j] -= q[i] * src[j];
  }
}

Trunc mul(const Trunc& a, const Trunc& b) {
  Trunc out(a.size());
  axpy(out, a, 0, b);
  for (auto& c : out) c = -c;
  return out;
}

Trunc unit_inverse(const Trunc& u) {
  int M = static_cast<int>(u.size());
  Trunc inv(M);
  Rational u0 = u[0].inverse();
  inv[0] = u0;
  for (int i = 1; i < M; ++i) {
    Rational s;
    for (int j = 1; j <= i; ++j)
      if (!u[j].is_zero()) s += u[j] * inv[i - j];
    inv[i] = -s * u0;
  }
  return inv;
}

struct LocalForm {
  std::vector<int> v;  // pivot valuations, M for the implicit t^M e_j
  std::vector<LRow> H;
};

// Echelon form of rows + t^M (R/t^M)^ncols; with `reduce`, pivots become t^v
// and entries above them are reduced below t^v, which makes H canonical.
LocalForm local_hnf(std::vector<LRow> rows, size_t ncols, int M, bool reduce) {
  LocalForm f;
  size_t top = 0;
  for (size_t j = 0; j < ncols; ++j) {
    size_t best = rows.size();
    int bv = M;
    for (size_t i = top; i < rows.size(); ++i) {
      int w = val(rows[i][j]);
      if (w < bv) bv = w, best = i;
    }
    f.v.push_back(bv);
    if (best == rows.size()) {
      f.H.push_back(LRow(ncols, Trunc(M)));
      continue;
    }
    std::swap(rows[top], rows[best]);
    LRow& P = rows[top];
    if (reduce) {
      Trunc u(P[j].begin() + bv, P[j].end());
      u.resize(M);
      Trunc ui = unit_inverse(u);
      for (auto& e : P) e = mul(e, ui);
    }
    for (size_t i = top + 1; i < rows.size(); ++i) {
      Trunc& e = rows[i][j];
      if (val(e) == M) continue;
      Trunc q(e.begin() + bv, e.end());
      q.resize(M);
      if (!reduce) {
        // P[j] = t^bv u: divide by the unit u.
        Trunc u(P[j].begin() + bv, P[j].end());
        u.resize(M);
        q = mul(q, unit_inverse(u));
      }
      for (size_t c = j; c < ncols; ++c) axpy(rows[i][c], q, 0, P[c]);
    }
    if (reduce) {
      for (auto& R : f.H) {
        Trunc& e = R[j];
        if (val(e) == M) continue;
        Trunc q(M);
        bool any = false;
        for (int i = bv; i < M; ++i)
          if (!e[i].is_zero()) q[i - bv] = e[i], any = true;
        if (any)
          for (size_t c = j; c < ncols; ++c) axpy(R[c], q, 0, P[c]);
      }
    }
    f.H.push_back(P);
    ++top;
  }
  return f;
}

// Polynomial rows, each Laurent row moved into Q[x] by a power of x.
std::vector<std::vector<UniPoly>> poly_rows(const FiltrationModule& m) {
  std::vector<std::vector<UniPoly>> out;
  for (size_t i = 0; i < m.rows.rows(); ++i) {
    int lo = 0;
    bool any = false;
    for (size_t j = 0; j < m.rows.cols(); ++j) {
      const LaurentPoly& e = m.rows(i, j);
      if (e.is_zero()) continue;
      lo = any ? std::min(lo, e.shift()) : e.shift();
      any = true;
    }
    if (!any) continue;
    if (!m.laurent) lo = 0;
    std::vector<UniPoly> r;
    for (size_t j = 0; j < m.rows.cols(); ++j) {
      const LaurentPoly& e = m.rows(i, j);
      if (e.is_zero()) {
        r.emplace_back(Symbol::x);
      } else {
        if (e.shift() < lo) throw InvariantBreach("negative power of x in a polynomial module: " + e.str());
        r.push_back(e.base().shift_up(static_cast<unsigned>(e.shift() - lo)));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

UniPoly strip_x(const UniPoly& p) {
  int v = p.valuation();
  return v > 0 ? p.shift_down(static_cast<unsigned>(v)) : p;
}

unsigned multiplicity(UniPoly p, const Rational& a) {
  unsigned m = 0;
  UniPoly lin(Symbol::x, {-a, Rational(1)});
  while (!p.is_zero() && p.eval(a).is_zero()) p = p / lin, ++m;
  return m;
}

// Distinct rational roots when f splits over Q (nonzero roots on the torus).
std::optional<std::vector<Rational>> split_roots(const UniPoly& f, bool laurent) {
  UniPoly g = laurent ? strip_x(f) : f;
  if (g.is_constant()) return std::vector<Rational>{};
  UniPoly sf = (g / gcd(g, g.derivative())).monic();
  mpz_class den = 1;
  for (const auto& c : sf.coeffs()) den = lcm(den, c.den());
  for (const Rational& c : {sf.coeff(0), sf.lead()})
    if (mpz_sizeinbase(mpq_class(c.raw() * den).get_num_mpz_t(), 2) > 48) return std::nullopt;
  auto roots = rational_roots(sf);
  if (static_cast<int>(roots.size()) != sf.degree()) return std::nullopt;
  return roots;
}

struct LocalData {
  std::vector<std::vector<UniPoly>> rows;
  UniPoly D, c;
};

// Order-0 rows give c with c/D in the module; the span then contains c^(k+1) D_k.
std::optional<LocalData> local_data(const FiltrationModule& m, bool need_integral) {
  LocalData d;
  d.rows = poly_rows(m);
  d.D = m.laurent ? strip_x(m.denominator) : m.denominator;
  size_t k = m.k;
  UniPoly c(Symbol::x);
  for (const auto& r : d.rows) {
    bool order0 = true;
    for (size_t j = 0; j < k && order0; ++j) order0 = r[j].is_zero();
    if (!order0) continue;
    UniPoly e = m.laurent ? strip_x(r[k]) : r[k];
    auto [q, rem] = UniPoly::divmod(e, d.D);
    if (!rem.is_zero()) {
      if (need_integral) throw PreconditionError("span leaves D_k at order 0", r[k].str());
      return std::nullopt;
    }
    c = c.is_zero() ? q.monic() : gcd(c, q);
  }
  if (c.is_zero()) return std::nullopt;
  d.c = m.laurent ? strip_x(c) : c;
  return d;
}

std::vector<LRow> expand(const LocalData& d, const Rational& a, int M) {
  std::vector<LRow> out;
  for (const auto& r : d.rows) {
    LRow row;
    for (const auto& e : r) row.push_back(taylor(e, a, M));
    out.push_back(std::move(row));
  }
  return out;
}

// Lengths of D_k / module at each root; PreconditionError when not integral.
std::optional<long> local_codim(const FiltrationModule& m) {
  auto d = local_data(m, true);
  if (!d) return std::nullopt;
  auto roots = split_roots(d->D * d->c, m.laurent);
  if (!roots) return std::nullopt;
  long total = 0;
  for (const auto& a : *roots) {
    int B = static_cast<int>(multiplicity(d->D, a));
    int M = B + static_cast<int>((m.k + 1) * multiplicity(d->c, a));
    if (M == 0) continue;
    auto f = local_hnf(expand(*d, a, M), m.k + 1, M, false);
    for (size_t j = 0; j < f.v.size(); ++j) {
      if (f.v[j] < B)
        throw PreconditionError("span leaves D_k at order " + std::to_string(m.k - j) + " near x = " + a.str());
      total += f.v[j] - B;
    }
  }
  return total;
}

std::optional<bool> local_equal(const FiltrationModule& a, const FiltrationModule& b) {
  auto da = local_data(a, false), db = local_data(b, false);
  if (!da || !db) return std::nullopt;
  auto roots = split_roots(da->D * da->c * db->D * db->c, a.laurent);
  if (!roots) return std::nullopt;
  size_t n = a.k + 1;
  for (const auto& r : *roots) {
    int Ba = static_cast<int>(multiplicity(da->D, r)), Bb = static_cast<int>(multiplicity(db->D, r));
    int B = std::max(Ba, Bb);
    int A = static_cast<int>(n * std::max(multiplicity(da->c, r), multiplicity(db->c, r)));
    int M = A + B;
    if (M == 0) continue;
    auto form = [&](const LocalData& d, int own) {
      auto rows = expand(d, r, M);
      for (auto& row : rows)
        for (auto& e : row) {
          e.insert(e.begin(), B - own, Rational());
          e.resize(M);
        }
      return local_hnf(std::move(rows), n, M, true);
    };
    LocalForm fa = form(*da, Ba), fb = form(*db, Bb);
    if (fa.v != fb.v || fa.H != fb.H) return false;
  }
  return true;
}

}  // namespace

HnfResult<UniPoly> hnf(const Mat<UniPoly>& m) { return hnf_impl(m); }
HnfResult<LaurentPoly> hnf(const Mat<LaurentPoly>& m) { return hnf_impl(m); }

FiltrationModule span_filtration(const std::vector<DiffOp>& gens, bool laurent, unsigned k) {
  FiltrationModule fm;
  fm.laurent = laurent;
  fm.k = k;
  std::vector<DiffOp> ops;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.ring()->kind == RingKind::Hyperelliptic)
      throw UnsupportedModel("filtration lattices need coefficients in Q[x] or Q[x,1/x]");
    unsigned o = g.order();
    if (o > k) continue;
    for (unsigned s = 0; s + o <= k; ++s) ops.push_back(s == 0 ? g : DiffOp::d(g.ring(), s) * g);
  }
  UniPoly D(Rational(1));
  for (const auto& op : ops)
    for (const auto& c : op.coeffs()) D = lcm(D, c.d());
  fm.denominator = D;
  fm.rows = Mat<LaurentPoly>::zeros(ops.size(), k + 1);
  for (size_t i = 0; i < ops.size(); ++i) {
    const auto& c = ops[i].coeffs();
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j].is_zero()) continue;
      fm.rows(i, k - j) = LaurentPoly(c[j].a() * exact_div(D, c[j].d()));
    }
  }
  return fm;
}

FiltrationModule span_filtration(const FractionalIdeal& I, unsigned k) {
  bool laurent = I.curve.kind() == CurveKind::Torus;
  if (I.curve.kind() != CurveKind::AffineLine && !laurent)
    throw UnsupportedModel("codimension lattices need AffineLine or Torus, got " + I.curve.str());
  return span_filtration(I.ops(), laurent, k);
}

std::optional<long> codim_at(const FiltrationModule& m, LatticeMethod how) {
  if (how != LatticeMethod::Global) {
    if (auto c = local_codim(m)) return c;
    if (how == LatticeMethod::Local) throw UnsupportedModel("no split order-0 element for local elimination");
  }
  size_t n = m.k + 1;
  LaurentPoly D(m.denominator);
  long total = 0;
  if (m.laurent) {
    auto h = hnf_impl(m.rows, false);
    if (h.rank < n) return std::nullopt;
    for (size_t i = 0; i < n; ++i) {
      const LaurentPoly& p = h.H(i, i);
      if (!LaurentPoly::residue(p, D).is_zero())
        throw PreconditionError("span leaves D_k at order " + std::to_string(m.k - i), p.str());
      total += p.width() - D.width();
    }
    return total;
  }
  auto h = hnf_impl(to_poly(m.rows), false);
  if (h.rank < n) return std::nullopt;
  for (size_t i = 0; i < n; ++i) {
    const UniPoly& p = h.H(i, i);
    if (!(p % m.denominator).is_zero())
      throw PreconditionError("span leaves D_k at order " + std::to_string(m.k - i), p.str());
    total += p.degree() - m.denominator.degree();
  }
  return total;
}

CodimReport codim(const FractionalIdeal& I, unsigned kmax) {
  CodimReport rep;
  for (const auto& g : I.generators)
    if (g.op && !g.op->is_zero()) rep.settled_from = std::max(rep.settled_from, g.op->order());
  std::optional<long> prev, prev_settled;
  for (unsigned k = 0; k <= kmax; ++k) {
    CodimRow row{k, codim_at(span_filtration(I, k))};
    if (row.codim) {
      if (prev && *row.codim > *prev) rep.monotone = false;
      prev = row.codim;
      if (k >= rep.settled_from) {
        if (prev_settled && *row.codim > *prev_settled) rep.monotone_settled = false;
        prev_settled = row.codim;
      }
    }
    rep.rows.push_back(row);
  }
  size_t s = rep.rows.size();
  if (s >= 3) {
    const auto &a = rep.rows[s - 3].codim, &b = rep.rows[s - 2].codim, &c = rep.rows[s - 1].codim;
    if (a && b && c && *a == *b && *b == *c) rep.stabilized = *c;
  }
  return rep;
}

unsigned default_kmax(const CMPoint& p, const FractionalIdeal& I) {
  unsigned o = 0;
  for (const auto& g : I.generators)
    if (g.op && !g.op->is_zero()) o = std::max(o, g.op->order());
  return static_cast<unsigned>(2 * p.n) + o + 2;
}

unsigned default_kmax(const FractionalIdeal& I) {
  unsigned o = 0;
  for (const auto& g : I.generators)
    if (g.op && !g.op->is_zero()) o = std::max(o, g.op->order());
  return 3 * o + 2;
}

bool module_equal(const FiltrationModule& a, const FiltrationModule& b, LatticeMethod how) {
  if (a.k != b.k || a.laurent != b.laurent) throw SizeMismatch("modules live in different filtration pieces");
  if (how != LatticeMethod::Global) {
    if (auto e = local_equal(a, b)) return *e;
    if (how == LatticeMethod::Local) throw UnsupportedModel("no split order-0 element for local elimination");
  }
  UniPoly L = lcm(a.denominator, b.denominator);
  return canonical_rows(a, exact_div(L, a.denominator)) == canonical_rows(b, exact_div(L, b.denominator));
}

FractionalIdeal conjugate_by_x(const FractionalIdeal& I, long r) {
  if (I.curve.kind() != CurveKind::Torus) throw PreconditionError("x^r is a unit only on the torus");
  FractionalIdeal out;
  out.curve = I.curve;
  RingPtr ring = CoeffRing::of(I.curve);
  int e = static_cast<int>(r);
  DiffOp left(RingElem::from_laurent(ring, LaurentPoly(UniPoly(Rational(1)), e)));
  DiffOp right(RingElem::from_laurent(ring, LaurentPoly(UniPoly(Rational(1)), -e)));
  for (const auto& g : I.ops()) {
    IdealGenerator ng;
    ng.kind = "conjugated";
    ng.op = left * g * right;
    out.generators.push_back(ng);
  }
  return out;
}

}  // namespace cmf
