#include "cmf/cmspace.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cmf/errors.hpp"

namespace cmf {

// First-order jets Q[e]/(e^2), for linearizing the relations.
struct Dual {
  Rational a, b;
  Dual() = default;
  Dual(const Rational& x) : a(x) {}
  Dual(const Rational& x, const Rational& y) : a(x), b(y) {}
  Dual operator-() const { return {-a, -b}; }
  Dual& operator+=(const Dual& o) { a += o.a; b += o.b; return *this; }
  Dual& operator-=(const Dual& o) { a -= o.a; b -= o.b; return *this; }
  friend Dual operator+(Dual x, const Dual& y) { return x += y; }
  friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend bool operator==(const Dual&, const Dual&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Dual& d) { return os << d.a << "+" << d.b << "e"; }
};

inline Dual zero_like(const Dual&) { return Dual(); }
inline Dual one_like(const Dual&) { return Dual(Rational(1)); }
inline bool is_zero(const Dual& d) { return d.a.is_zero() && d.b.is_zero(); }

namespace {

template <class T>
Mat<T> lift(const MatQ& m) {
  return m.map([](const Rational& q) { return T(q); });
}

template <class T>
class Powers {
 public:
  explicit Powers(const Mat<T>& m) : p_{Mat<T>::identity(m.rows())}, m_(m) {}
  const Mat<T>& operator()(unsigned k) {
    while (p_.size() <= k) p_.push_back(p_.back() * m_);
    return p_[k];
  }

 private:
  std::vector<Mat<T>> p_;
  Mat<T> m_;
};

template <class T>
Mat<T> poly_at(const UniPoly& p, const Mat<T>& m) {
  size_t n = m.rows();
  Mat<T> r = Mat<T>::zeros(n, n), id = Mat<T>::identity(n);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) r = r * m + T(*it) * id;
  return r;
}

template <class T>
Mat<T> bipoly_at(const BiPoly& f, Powers<T>& xp, Powers<T>& yp, size_t n) {
  Mat<T> r = Mat<T>::zeros(n, n);
  for (const auto& [k, c] : f.terms()) r += T(c) * (xp(k.first) * yp(k.second));
  return r;
}

// Polynomial ring element a(X) + b(X) Y.
template <class T>
Mat<T> elem_at(const RingElem& e, const Mat<T>& X, const Mat<T>& Y) {
  if (!e.in_coordinate_ring() || e.d().degree() > 0)
    throw PreconditionError("bundle data must be polynomial", e.str());
  Mat<T> r = poly_at(e.a(), X);
  if (!e.b().is_zero()) r += poly_at(e.b(), X) * Y;
  return r;
}

template <class T>
Mat<T> word_sum(const CommutatorSum& s, Powers<T>& xp, Powers<T>& yp, const Mat<T>& D, size_t n) {
  Mat<T> r = Mat<T>::zeros(n, n);
  for (const auto& t : s) r += T(t.coeff) * (xp(t.lx) * yp(t.ly) * D * xp(t.rx) * yp(t.ry));
  return r;
}

template <class T>
struct Data {
  size_t n = 0;
  Mat<T> X, Y, Z;
  std::vector<Mat<T>> vs, ws;
};

template <class T>
Data<T> lift(const CMPoint& p) {
  Data<T> d;
  d.n = p.n;
  d.X = lift<T>(p.X);
  d.Y = lift<T>(p.Y_or_zero());
  d.Z = lift<T>(p.Z);
  for (const auto& v : p.vs) d.vs.push_back(lift<T>(v));
  for (const auto& w : p.ws) d.ws.push_back(lift<T>(w));
  return d;
}

using Named = std::vector<std::string>;

// Polynomial relations of the point; names returned through `names`.
template <class T>
std::vector<Mat<T>> residuals(const CMPoint& shape, const DerivationData& dd, const Data<T>& p, Named* names) {
  size_t n = p.n;
  bool plane = shape.curve.is_plane();
  std::vector<Mat<T>> out;
  auto add = [&](const std::string& name, Mat<T> m) {
    if (names) names->push_back(name);
    out.push_back(std::move(m));
  };
  Powers<T> xp(p.X), yp(p.Y);
  Mat<T> D = Mat<T>::identity(n);
  for (size_t i = 0; i < p.vs.size(); ++i) D += p.vs[i] * p.ws[i];
  if (plane) {
    add("F(X,Y) = 0", bipoly_at(shape.curve.F(), xp, yp, n));
    add("[X,Y] = 0", p.X * p.Y - p.Y * p.X);
  }
  add("[Z,X] = Delta words", p.Z * p.X - p.X * p.Z - word_sum(dd.zx, xp, yp, D, n));
  if (plane) add("[Z,Y] = Delta words", p.Z * p.Y - p.Y * p.Z - word_sum(dd.zy, xp, yp, D, n));
  Mat<T> tr = Mat<T>::zeros(1, 1);
  for (size_t i = 0; i < p.vs.size(); ++i) tr += p.ws[i] * p.vs[i];
  tr(0, 0) += T(Rational(static_cast<long>(n)));
  add("sum w_i v_i = -n", tr);
  if (shape.bundle) {
    const auto& b = *shape.bundle;
    size_t m = b.v.size();
    Mat<T> rv = Mat<T>::zeros(n, m), rw = Mat<T>::zeros(m, n);
    for (size_t k = 0; k < m; ++k) {
      Mat<T> sv = p.vs[k], sw = p.ws[k];
      for (size_t i = 0; i < m; ++i) {
        Mat<T> c = elem_at(b.w[i] * b.v[k], p.X, p.Y);
        sv -= c * p.vs[i];
        sw -= p.ws[i] * elem_at(b.v[i] * b.w[k], p.X, p.Y);
      }
      for (size_t j = 0; j < n; ++j) {
        rv(j, k) = sv(j, 0);
        rw(k, j) = sw(0, j);
      }
    }
    add("v_k = sum (w_i v_k) v_i", rv);
    add("w_k = sum w_i (v_i w_k)", rw);
  }
  return out;
}

void check_shapes(const CMPoint& p) {
  size_t n = p.n;
  auto sq = [n](const MatQ& m, const char* what) {
    if (m.rows() != n || m.cols() != n) throw SizeMismatch(std::string(what) + " must be n x n");
  };
  sq(p.X, "X");
  sq(p.Z, "Z");
  if (p.curve.is_plane()) {
    if (!p.Y) throw SizeMismatch("plane-curve point needs Y");
    sq(*p.Y, "Y");
  } else if (p.Y) {
    throw SizeMismatch("Y given for a curve without a second coordinate");
  }
  if (p.vs.empty() || p.vs.size() != p.ws.size()) throw SizeMismatch("need matching nonempty v and w lists");
  size_t m = p.bundle ? p.bundle->v.size() : 1;
  if (p.vs.size() != m) throw SizeMismatch("number of v/w pairs does not match the bundle");
  for (const auto& v : p.vs)
    if (v.rows() != n || v.cols() != 1) throw SizeMismatch("v must be n x 1");
  for (const auto& w : p.ws)
    if (w.rows() != 1 || w.cols() != n) throw SizeMismatch("w must be 1 x n");
}

Rational dd_y(const CurveModel& c, const Rational& x, const Rational& a, const Rational& b) {
  if (!c.is_plane()) return Rational(1);
  if (a != b) return (c.F().eval(x, a) - c.F().eval(x, b)) / (a - b);
  return c.F().partial_y().eval(x, a);
}

void check_points(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas,
                  bool distinct_y) {
  if (pts.size() != alphas.size()) throw PreconditionError("need one alpha per point");
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& [x, y] = pts[i];
    if (c.kind() == CurveKind::Torus && x.is_zero()) throw PreconditionError("torus point with x = 0");
    if (c.is_plane() && !c.contains(x, y))
      throw PreconditionError("point (" + x.str() + ", " + y.str() + ") not on curve",
                              "F = " + c.F().eval(x, y).str());
    for (size_t j = 0; j < i; ++j) {
      if (pts[j].first == x) throw PreconditionError("repeated x coordinate " + x.str());
      if (distinct_y && c.is_plane() && pts[j].second == y)
        throw PreconditionError("repeated y coordinate " + y.str());
    }
  }
}

CMPoint base_point(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas) {
  CMPoint p;
  p.curve = c;
  p.n = pts.size();
  std::vector<Rational> xs, ys;
  for (const auto& q : pts) {
    xs.push_back(q.first);
    ys.push_back(q.second);
  }
  p.X = MatQ::diag(xs);
  if (c.is_plane()) p.Y = MatQ::diag(ys);
  p.Z = MatQ::diag(alphas);
  return p;
}

CMPoint moser_like(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas,
                   bool literal) {
  check_points(c, pts, alphas, literal);
  CMPoint p = base_point(c, pts, alphas);
  size_t n = p.n;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& [xi, yi] = pts[i];
      const auto& [xj, yj] = pts[j];
      if (literal && c.is_plane())
        p.Z(i, j) = c.F().eval(xj, yi) / ((xi - xj) * (yi - yj));
      else
        p.Z(i, j) = dd_y(c, xj, yi, yj) / (xi - xj);
    }
  p.vs = {MatQ(n, 1, Rational(1))};
  p.ws = {MatQ(1, n, Rational(-1))};
  return p;
}

void fill_columns(MatQ& J, size_t col, const std::vector<MatQ>& parts) {
  size_t r = 0;
  for (const auto& m : parts)
    for (const auto& e : m.entries()) J(r++, col) = e;
}

size_t total_entries(const std::vector<MatQ>& parts) {
  size_t s = 0;
  for (const auto& m : parts) s += m.entries().size();
  return s;
}

// Dimension of the kernel of a linear map given on the standard basis.
size_t kernel_dim(size_t unknowns, const std::function<std::vector<MatQ>(const std::vector<Rational>&)>& f) {
  if (unknowns == 0) return 0;
  std::vector<Rational> e(unknowns);
  std::vector<MatQ> probe = f(e);
  size_t rows = total_entries(probe);
  if (rows == 0) return unknowns;
  MatQ J = MatQ::zeros(rows, unknowns);
  for (size_t k = 0; k < unknowns; ++k) {
    std::fill(e.begin(), e.end(), Rational());
    e[k] = 1;
    fill_columns(J, k, f(e));
  }
  return unknowns - rank(J);
}

MatQ unpack(const std::vector<Rational>& e, size_t& off, size_t r, size_t c) {
  MatQ m = MatQ::zeros(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m(i, j) = e[off++];
  return m;
}

}  // namespace

void LineBundle::validate() const {
  if (v.empty() || v.size() != w.size()) throw PreconditionError("bundle needs matching nonempty v and w lists");
  RingElem s(v[0].ring());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].in_coordinate_ring()) throw PreconditionError("bundle generator outside the coordinate ring", v[i].str());
    s += w[i] * v[i];
    for (size_t k = 0; k < v.size(); ++k)
      if (!(w[i] * v[k]).in_coordinate_ring())
        throw PreconditionError("w_i v_k must lie in the coordinate ring", (w[i] * v[k]).str());
  }
  if (s != RingElem(v[0].ring(), Rational(1))) throw PreconditionError("sum w_i v_i must be 1", s.str());
}

MatQ CMPoint::delta() const {
  MatQ D = MatQ::identity(n);
  for (size_t i = 0; i < vs.size(); ++i) D += vs[i] * ws[i];
  return D;
}

const RelationCheck* RelationReport::first_failure() const {
  for (const auto& r : relations)
    if (!r.pass) return &r;
  return nullptr;
}

RelationReport verify_relations(const CMPoint& p) {
  check_shapes(p);
  RelationReport rep;
  DerivationData dd = derivation_data(p.curve);
  Named names;
  auto res = residuals<Rational>(p, dd, lift<Rational>(p), &names);
  for (size_t i = 0; i < res.size(); ++i) rep.relations.push_back({names[i], res[i].is_zero(), res[i]});
  if (p.curve.kind() == CurveKind::Torus) {
    Rational d = det(p.X);
    rep.relations.push_back({"X invertible", !d.is_zero(), MatQ(1, 1, {d})});
  }
  for (const auto& r : rep.relations) rep.pass = rep.pass && r.pass;
  return rep;
}

CMPoint generic_point(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas) {
  return moser_like(c, pts, alphas, true);
}

CMPoint moser_point(const CurveModel& c, const std::vector<Point>& pts, const std::vector<Rational>& alphas) {
  return moser_like(c, pts, alphas, false);
}

CMPoint bundle_point(const CurveModel& c, const LineBundle& b, const std::vector<Point>& pts,
                     const std::vector<Rational>& alphas) {
  b.validate();
  check_points(c, pts, alphas, false);
  CMPoint p = base_point(c, pts, alphas);
  p.bundle = b;
  size_t n = p.n, m = b.v.size();
  for (size_t i = 0; i < m; ++i) {
    MatQ v = MatQ::zeros(n, 1), w = MatQ::zeros(1, n);
    for (size_t j = 0; j < n; ++j) {
      try {
        v(j, 0) = b.v[i].eval(pts[j].first, pts[j].second);
        w(0, j) = -b.w[i].eval(pts[j].first, pts[j].second);
      } catch (const std::domain_error&) {
        throw PreconditionError("point (" + pts[j].first.str() + ", " + pts[j].second.str() +
                                ") is a pole of the bundle data");
      }
    }
    p.vs.push_back(v);
    p.ws.push_back(w);
  }
  MatQ D = p.delta();
  for (size_t j = 0; j < n; ++j)
    for (size_t l = 0; l < n; ++l) {
      if (j == l) continue;
      const auto& [xj, yj] = pts[j];
      const auto& [xl, yl] = pts[l];
      p.Z(j, l) = D(j, l) * dd_y(c, xl, yj, yl) / (xl - xj);
    }
  return p;
}

BModule as_bmodule(const CMPoint& p) {
  if (p.bundle) throw PreconditionError("B-module diagnostics assume the trivial bundle");
  check_shapes(p);
  BModule m;
  m.n = p.n;
  m.n_inf = 1;
  m.actions.push_back(p.X);
  if (p.Y) m.actions.push_back(*p.Y);
  m.phi = p.vs[0];
  return m;
}

QuiverRep as_rep(const CMPoint& p) {
  check_shapes(p);
  QuiverRep r;
  r.n = p.n;
  r.n_inf = 1;
  r.endos.push_back(p.X);
  if (p.Y) r.endos.push_back(*p.Y);
  r.endos.push_back(p.Z);
  r.in = p.vs;
  r.out = p.ws;
  return r;
}

QuiverRep direct_sum(const QuiverRep& a, const QuiverRep& b) {
  if (a.endos.size() != b.endos.size() || a.in.size() != b.in.size() || a.out.size() != b.out.size())
    throw SizeMismatch("direct sum of representations of different quivers");
  QuiverRep s;
  s.n = a.n + b.n;
  s.n_inf = a.n_inf + b.n_inf;
  auto bd = [](const MatQ& x, const MatQ& y) {
    MatQ m = MatQ::zeros(x.rows() + y.rows(), x.cols() + y.cols());
    for (size_t i = 0; i < x.rows(); ++i)
      for (size_t j = 0; j < x.cols(); ++j) m(i, j) = x(i, j);
    for (size_t i = 0; i < y.rows(); ++i)
      for (size_t j = 0; j < y.cols(); ++j) m(x.rows() + i, x.cols() + j) = y(i, j);
    return m;
  };
  for (size_t i = 0; i < a.endos.size(); ++i) s.endos.push_back(bd(a.endos[i], b.endos[i]));
  for (size_t i = 0; i < a.in.size(); ++i) s.in.push_back(bd(a.in[i], b.in[i]));
  for (size_t i = 0; i < a.out.size(); ++i) s.out.push_back(bd(a.out[i], b.out[i]));
  return s;
}

size_t commutant_dim(const QuiverRep& r) {
  size_t n = r.n, ni = r.n_inf;
  return kernel_dim(n * n + ni * ni, [&](const std::vector<Rational>& e) {
    size_t off = 0;
    MatQ A = unpack(e, off, n, n), C = unpack(e, off, ni, ni);
    std::vector<MatQ> eq;
    for (const auto& E : r.endos) eq.push_back(A * E - E * A);
    for (const auto& v : r.in) eq.push_back(A * v - v * C);
    for (const auto& w : r.out) eq.push_back(C * w - w * A);
    return eq;
  });
}

size_t commutant_dim(const CMPoint& p) { return commutant_dim(as_rep(p)); }

bool trace_lift_check(const BModule& m, const std::pair<Rational, Rational>& weight) {
  return (weight.first * Rational(static_cast<long>(m.n)) + weight.second * Rational(static_cast<long>(m.n_inf)))
      .is_zero();
}

size_t hom_A_dim(const BModule& U, const BModule& V) {
  if (U.actions.size() != V.actions.size()) throw SizeMismatch("modules over different rings");
  return kernel_dim(V.n * U.n, [&](const std::vector<Rational>& e) {
    size_t off = 0;
    MatQ f = unpack(e, off, V.n, U.n);
    std::vector<MatQ> eq;
    for (size_t i = 0; i < U.actions.size(); ++i) eq.push_back(f * U.actions[i] - V.actions[i] * f);
    return eq;
  });
}

size_t hom_dim(const CurveModel&, const BModule& U, const BModule& V) {
  if (U.actions.size() != V.actions.size()) throw SizeMismatch("modules over different rings");
  return kernel_dim(V.n * U.n + V.n_inf * U.n_inf, [&](const std::vector<Rational>& e) {
    size_t off = 0;
    MatQ f = unpack(e, off, V.n, U.n), fi = unpack(e, off, V.n_inf, U.n_inf);
    std::vector<MatQ> eq;
    for (size_t i = 0; i < U.actions.size(); ++i) eq.push_back(f * U.actions[i] - V.actions[i] * f);
    eq.push_back(f * U.phi - V.phi * fi);
    return eq;
  });
}

size_t derivation_dim(const CurveModel& c, const BModule& U, const BModule& V) {
  size_t g = U.actions.size(), cell = V.n * U.n;
  if (!c.is_plane()) return g * cell;
  const MatQ &XU = U.actions[0], &YU = U.actions[1], &XV = V.actions[0], &YV = V.actions[1];
  Powers<Rational> xu(XU), yu(YU), xv(XV), yv(YV);
  return kernel_dim(2 * cell, [&](const std::vector<Rational>& e) {
    size_t off = 0;
    MatQ D1 = unpack(e, off, V.n, U.n), D2 = unpack(e, off, V.n, U.n);
    // delta(xy - yx) and delta(F) with delta(ab) = a_V delta(b) + delta(a) b_U
    MatQ comm = XV * D2 + D1 * YU - YV * D1 - D2 * XU;
    MatQ dF = MatQ::zeros(V.n, U.n);
    for (const auto& [k, a] : c.F().terms()) {
      auto [r, s] = k;
      for (unsigned i = 0; i < r; ++i) dF += a * (xv(i) * D1 * xu(r - 1 - i) * yu(s));
      for (unsigned j = 0; j < s; ++j) dF += a * (xv(r) * yv(j) * D2 * yu(s - 1 - j));
    }
    return std::vector<MatQ>{comm, dF};
  });
}

size_t ext1_A_dim(const CurveModel& c, const BModule& U, const BModule& V) {
  size_t inner = U.n * V.n - hom_A_dim(U, V);
  return derivation_dim(c, U, V) - inner;
}

size_t ext1_dim(const CurveModel& c, const BModule& U, const BModule& V) {
  long homA = static_cast<long>(hom_A_dim(U, V));
  long homB = static_cast<long>(hom_dim(c, U, V));
  long e = static_cast<long>(U.n_inf * V.n) - (homA + static_cast<long>(U.n_inf * V.n_inf) - homB) +
           static_cast<long>(ext1_A_dim(c, U, V));
  if (e < 0) throw InvariantBreach("negative Ext^1 dimension from the exact sequence");
  return static_cast<size_t>(e);
}

long euler_char(const BModule& U, const BModule& V) {
  return static_cast<long>(U.n_inf) * (static_cast<long>(V.n_inf) - static_cast<long>(V.n));
}

BModule random_bmodule(const CurveModel& c, size_t n, size_t n_inf, std::mt19937_64& rng,
                       const std::vector<Point>& pts) {
  auto pick = [&rng](long lo, long hi) { return Rational(lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1))); };
  if (c.is_plane() && pts.empty()) throw PreconditionError("random plane-curve modules need sample points");
  MatQ X = MatQ::zeros(n, n), Y = MatQ::zeros(n, n);
  size_t i = 0;
  while (i < n) {
    size_t b = 1 + rng() % (n - i);
    Point q;
    if (c.is_plane()) {
      q = pts[rng() % pts.size()];
      if (c.F().partial_y().eval(q.first, q.second).is_zero()) b = 1;
    } else {
      q.first = c.kind() == CurveKind::Torus ? pick(1, 2) : pick(0, 1);
    }
    MatQ Xb = MatQ::identity(b);
    Xb = q.first * Xb;
    for (size_t k = 0; k + 1 < b; ++k) Xb(k, k + 1) = 1;
    if (c.is_plane()) {
      // Newton iteration for y(x) along the nilpotent part.
      MatQ Yb = q.second * MatQ::identity(b), Fy_inv;
      BiPoly Fy = c.F().partial_y();
      for (size_t it = 1; it < b; ++it) Yb = Yb - eval_bipoly(c.F(), Xb, Yb) * inverse(eval_bipoly(Fy, Xb, Yb));
      for (size_t r = 0; r < b; ++r)
        for (size_t s = 0; s < b; ++s) Y(i + r, i + s) = Yb(r, s);
    }
    for (size_t r = 0; r < b; ++r)
      for (size_t s = 0; s < b; ++s) X(i + r, i + s) = Xb(r, s);
    i += b;
  }
  MatQ S;
  do {
    S = MatQ::zeros(n, n);
    for (size_t r = 0; r < n; ++r)
      for (size_t s = 0; s < n; ++s) S(r, s) = pick(-2, 2);
  } while (det(S).is_zero());
  MatQ Si = inverse(S);
  BModule m;
  m.n = n;
  m.n_inf = n_inf;
  m.actions.push_back(S * X * Si);
  if (c.is_plane()) m.actions.push_back(S * Y * Si);
  m.phi = MatQ::zeros(n, n_inf);
  for (size_t r = 0; r < n; ++r)
    for (size_t s = 0; s < n_inf; ++s) m.phi(r, s) = pick(-1, 1);
  return m;
}

TangentReport tangent(const CMPoint& p) {
  check_shapes(p);
  DerivationData dd = derivation_data(p.curve);
  Data<Dual> base = lift<Dual>(p);
  std::vector<Mat<Dual>*> mats{&base.X};
  if (p.curve.is_plane()) mats.push_back(&base.Y);
  mats.push_back(&base.Z);
  for (auto& v : base.vs) mats.push_back(&v);
  for (auto& w : base.ws) mats.push_back(&w);
  size_t nvars = 0;
  for (auto* m : mats) nvars += m->entries().size();
  TangentReport rep;
  rep.variables = nvars;
  rep.gauge = p.n * p.n;
  if (nvars == 0) return rep;
  std::vector<MatQ> cols;
  size_t rows = 0;
  MatQ J;
  size_t col = 0;
  for (auto* m : mats)
    for (size_t i = 0; i < m->rows(); ++i)
      for (size_t j = 0; j < m->cols(); ++j) {
        (*m)(i, j).b = 1;
        auto res = residuals<Dual>(p, dd, base, nullptr);
        (*m)(i, j).b = 0;
        std::vector<MatQ> parts;
        for (const auto& r : res) parts.push_back(r.map([](const Dual& d) { return d.b; }));
        if (col == 0) {
          rows = total_entries(parts);
          J = MatQ::zeros(rows, nvars);
        }
        fill_columns(J, col++, parts);
      }
  rep.equations = rows;
  rep.tangent_dim = nvars - rank(J);
  return rep;
}

size_t tangent_dim(const CMPoint& p) { return tangent(p).tangent_dim; }

CMPoint lambda_act(const CMPoint& p, long r) {
  if (p.curve.kind() != CurveKind::Torus)
    throw PreconditionError("x^r is not a unit in the coordinate ring of " + p.curve.str());
  CMPoint q = p;
  if (r != 0) q.Z += Rational(r) * inverse(p.X);
  return q;
}

CMPoint omega_twist(const CMPoint& p, const OneForm& w) {
  if (!(w.curve == p.curve)) throw PreconditionError("one-form and point live on different curves");
  if (w.x_power < 0 && p.curve.kind() != CurveKind::Torus)
    throw PreconditionError("negative powers of x need the torus");
  if (w.g.degree_y() > 0 && !p.curve.is_plane()) throw PreconditionError("y-terms need a plane curve");
  CMPoint q = p;
  MatQ g = eval_bipoly(w.g, p.X, p.Y_or_zero());
  MatQ xp = matrix_power(w.x_power < 0 ? inverse(p.X) : p.X, static_cast<unsigned>(std::abs(w.x_power)));
  q.Z += g * xp;
  return q;
}

}  // namespace cmf
