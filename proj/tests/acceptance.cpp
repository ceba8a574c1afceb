#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "battery.hpp"
#include "cmf/errors.hpp"
#include "cmf/json_io.hpp"
#include "oracle.hpp"

using namespace cmf;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

struct Row {
  Outcome out;
  double seconds = 0;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

std::vector<Point> take(std::vector<Point> pts, size_t n) { return {pts.begin(), pts.begin() + n}; }

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

CMPoint line_point(size_t n) {
  return generic_point(CurveModel::affine_line(), take({pt(0, 0), pt(1, 0), pt(3, 0)}, n), battery::alphas(n));
}

CMPoint torus_point(size_t n) {
  return generic_point(CurveModel::torus(), take({pt(1, 0), pt(2, 0), {Rational(-1, 2), Rational(0)}}, n),
                       battery::alphas(n));
}

std::vector<Point> cubic_sample() { return {pt(-1, 0), pt(0, 1), pt(0, -1), pt(2, 3), pt(2, -3)}; }

Outcome relations() {
  Outcome o;
  size_t count = 0;
  for (const auto& c : battery::points()) {
    ++count;
    RelationReport r = verify_relations(c.point);
    if (!r.pass) fail(o, c.label + ": " + r.first_failure()->name);
  }
  if (o.pass) o.detail = std::to_string(count) + " points, every residual zero";
  return o;
}

Outcome commutant() {
  Outcome o;
  size_t count = 0;
  for (const auto& c : battery::points()) {
    ++count;
    size_t d = commutant_dim(c.point);
    if (d != 1) fail(o, c.label + ": commutant " + std::to_string(d));
  }
  if (o.pass) o.detail = std::to_string(count) + " points, commutant 1";
  return o;
}

Outcome dimension() {
  Outcome o;
  std::ostringstream dims;
  for (const auto& c : battery::points()) {
    TangentReport t = tangent(c.point);
    size_t n = c.point.n;
    if (t.tangent_dim != n * n + 2 * n || t.moduli_dim() != static_cast<long>(2 * n))
      fail(o, c.label + ": tangent " + std::to_string(t.tangent_dim));
    dims << (dims.tellp() ? " " : "") << t.tangent_dim;
  }
  if (o.pass) o.detail = "tangent dims " + dims.str() + " = n^2+2n, moduli 2n";
  return o;
}

Outcome euler() {
  Outcome o;
  std::mt19937_64 rng(0);
  std::vector<std::pair<CurveModel, std::vector<Point>>> curves{
      {CurveModel::affine_line(), {}}, {CurveModel::torus(), {}}, {battery::cubic(), cubic_sample()}};
  long sum = 0;
  for (int t = 0; t < 100; ++t) {
    const auto& [c, pts] = curves[t % 3];
    size_t nu = rng() % 4, iu = rng() % 4, nv = rng() % 4, iv = rng() % 4;
    BModule U = random_bmodule(c, nu, iu, rng, pts), V = random_bmodule(c, nv, iv, rng, pts);
    long lhs = static_cast<long>(hom_dim(c, U, V)) - static_cast<long>(ext1_dim(c, U, V));
    long chi = euler_char(U, V);
    sum += chi;
    if (lhs != chi)
      fail(o, "pair " + std::to_string(t) + " on " + c.str() + ": hom - ext1 = " + std::to_string(lhs) +
                  ", euler " + std::to_string(chi));
  }
  if (o.pass) o.detail = "100 pairs, seed 0, sum of euler " + std::to_string(sum);
  return o;
}

Outcome trace_lift() {
  Outcome o;
  std::mt19937_64 rng(1);
  size_t checked = 0;
  for (const auto& c : battery::points()) {
    BModule m = as_bmodule(c.point);
    ++checked;
    if (m.n_inf != 1 || !trace_lift_check(m, c.point.weight())) fail(o, c.label + ": dims (n,1) rejected");
  }
  for (size_t n = 1; n <= 3; ++n)
    for (const auto& c : {CurveModel::affine_line(), CurveModel::torus(), battery::cubic()}) {
      std::vector<Point> pts = c.is_plane() ? cubic_sample() : std::vector<Point>{};
      std::pair<Rational, Rational> w{Rational(1), Rational(-static_cast<long>(n))};
      checked += 2;
      if (!trace_lift_check(random_bmodule(c, n, 1, rng, pts), w)) fail(o, "random dims (n,1) rejected");
      if (trace_lift_check(random_bmodule(c, n, 0, rng, pts), w)) fail(o, "dims (n,0) accepted");
    }
  if (o.pass) o.detail = std::to_string(checked) + " modules classified as expected";
  return o;
}

Outcome regularity() {
  Outcome o;
  size_t count = 0;
  for (const auto& c : battery::points()) {
    if (c.point.curve.is_plane() && !c.point.curve.is_hyperelliptic()) continue;
    try {
      FractionalIdeal I = ideal_generators(c.point);
      for (const auto& g : I.generators) {
        if (g.kind != "det(Z-z)*kappa") continue;
        ++count;
        if (!g.op) fail(o, c.label + ": no normal form");
        else if (g.op->order() != c.point.n) fail(o, c.label + ": order " + std::to_string(g.op->order()));
      }
    } catch (const InvariantBreach& e) {
      fail(o, c.label + ": " + e.what());
    }
  }
  if (o.pass) o.detail = std::to_string(count) + " generators normal-ordered, order n";
  return o;
}

Outcome codimension() {
  Outcome o;
  std::ostringstream seq;
  for (bool torus : {false, true})
    for (size_t n = 1; n <= 2; ++n) {
      std::string label = std::string(torus ? "torus" : "line") + " n=" + std::to_string(n);
      CMPoint p = torus ? torus_point(n) : line_point(n);
      FractionalIdeal I = ideal_generators(p);
      unsigned kmax = static_cast<unsigned>(2 * n + 6);
      CodimReport rep = codim(I, kmax);
      if (!rep.stabilized || *rep.stabilized != static_cast<long>(n)) fail(o, label + ": not stabilized at n");
      auto gens = I.ops();
      for (unsigned k : {static_cast<unsigned>(n), kmax}) {
        long want = oracle::window_codim(gens, k, torus);
        if (rep.rows[k].codim != want) fail(o, label + " k=" + std::to_string(k) + ": oracle " + std::to_string(want));
      }
      seq << (seq.tellp() ? "; " : "") << label << " -> " << (rep.stabilized ? std::to_string(*rep.stabilized) : "-");
    }
  if (o.pass) o.detail = seq.str() + " (oracle agrees at k = n and k = kmax)";
  return o;
}

Outcome equivariance() {
  Outcome o;
  size_t count = 0;
  for (size_t n = 1; n <= 3; ++n)
    for (long r : {-1L, 1L}) {
      CMPoint p = torus_point(n);
      FractionalIdeal I = ideal_generators(p);
      unsigned k = default_kmax(p, I);
      ++count;
      if (!module_equal(span_filtration(conjugate_by_x(I, r), k), span_filtration(ideal_generators(lambda_act(p, r)), k)))
        fail(o, "n=" + std::to_string(n) + " r=" + std::to_string(r));
    }
  if (o.pass) o.detail = std::to_string(count) + " torus cases equal at k = kmax";
  return o;
}

Outcome group_laws() {
  Outcome o;
  size_t count = 0;
  for (const auto& c : battery::points()) {
    const CMPoint& p = c.point;
    BiPoly g1 = BiPoly::monomial(Rational(1, 2), 2, 0) + BiPoly::monomial(Rational(-1), 0, 0);
    BiPoly g2 = BiPoly::monomial(Rational(3), 1, 0);
    if (p.curve.is_plane()) g2 += BiPoly::monomial(Rational(1), 1, 1);
    ++count;
    if (!(omega_twist(p, {p.curve, BiPoly(), 0}) == p)) fail(o, c.label + ": twist identity");
    if (!(omega_twist(omega_twist(p, {p.curve, g1, 0}), {p.curve, g2, 0}) == omega_twist(p, {p.curve, g1 + g2, 0})))
      fail(o, c.label + ": twist composition");
    if (!(omega_twist(omega_twist(p, {p.curve, g1, 0}), {p.curve, -g1, 0}) == p)) fail(o, c.label + ": twist inverse");
    if (p.curve.kind() != CurveKind::Torus) continue;
    if (!(lambda_act(p, 0) == p)) fail(o, c.label + ": unit identity");
    if (!(lambda_act(lambda_act(p, 2), -3) == lambda_act(p, -1))) fail(o, c.label + ": unit composition");
    if (!(lambda_act(lambda_act(p, 4), -4) == p)) fail(o, c.label + ": unit inverse");
  }
  if (o.pass) o.detail = std::to_string(count) + " points, identity/composition/inverse hold";
  return o;
}

Outcome residues() {
  Outcome o;
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 50; ++t) {
    std::map<BiPoly::Key, Rational> terms;
    for (unsigned r = 0; r <= 5; ++r)
      for (unsigned s = 0; s <= 5; ++s)
        if (int v = coef(rng); v != 0) terms[{r, s}] = Rational(v);
    LocalKernel K{BiPoly(terms), 2};
    HalfFormOp op = extract_operator(K);
    for (unsigned k = 0; k <= 5; ++k) {
      UniPoly f = UniPoly::monomial(1, k, Symbol::z);
      if (!(residue_action(K, f) == op.apply(f))) fail(o, "kernel " + std::to_string(t) + " on z^" + std::to_string(k));
    }
  }
  UniPoly z = UniPoly::variable(Symbol::z);
  for (const UniPoly& w : {z, z * Rational(2), z + z * z})
    if (!gamma_skew_check(w)) fail(o, "gamma check for w = " + w.str());
  if (o.pass) o.detail = "50 kernels agree on z^0..z^5; gamma checks pass for z, 2z, z+z^2";
  return o;
}

std::vector<Criterion> criteria() {
  return {
      {1, "relation verification", 5, relations},
      {2, "commutant is one-dimensional", 5, commutant},
      {3, "tangent dimension n^2+2n", 30, dimension},
      {4, "euler characteristic", 30, euler},
      {5, "trace lifting criterion", 1, trace_lift},
      {6, "kappa regularity", 10, regularity},
      {7, "codimension n", 120, codimension},
      {8, "torus equivariance", 60, equivariance},
      {9, "group laws", 5, group_laws},
      {10, "residue calculus", 10, residues},
  };
}

std::vector<Row> run_suite(const std::vector<Criterion>& cs) {
  std::vector<Row> rows;
  for (const auto& c : cs) {
    Row r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      r.out = c.run();
    } catch (const std::exception& e) {
      r.out = {false, std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "  [%d done in %.2f s]\n", c.id, r.seconds);
    rows.push_back(r);
  }
  return rows;
}

std::string report(const std::vector<Criterion>& cs, const std::vector<Row>& rows) {
  std::ostringstream s;
  for (size_t i = 0; i < cs.size(); ++i)
    s << cs[i].id << " " << (rows[i].out.pass ? "pass" : "fail") << " " << rows[i].out.detail << "\n";
  return s.str();
}

}  // namespace

int main() {
  auto cs = criteria();
  auto first = run_suite(cs);
  auto second = run_suite(cs);
  bool all = true;
  for (size_t i = 0; i < cs.size(); ++i) {
    bool ok = first[i].out.pass && first[i].seconds < cs[i].budget_s;
    all = all && ok;
    std::printf("%s %2d %s: %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", cs[i].id, cs[i].name.c_str(),
                first[i].out.detail.c_str(), first[i].seconds, cs[i].budget_s);
  }
  std::string a = report(cs, first), b = report(cs, second);
  bool same = a == b;
  all = all && same;
  std::printf("%s 11 determinism: %s\n", same ? "PASS" : "FAIL",
              same ? "two in-process runs produced byte-identical reports" : "reports differ between runs");
  return all ? 0 : 1;
}
