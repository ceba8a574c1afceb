#include <gtest/gtest.h>

#include <random>

#include "battery.hpp"
#include "cmf/errors.hpp"

using namespace cmf;

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

std::vector<MatQ*> entries_of(CMPoint& p) {
  std::vector<MatQ*> m{&p.X};
  if (p.Y) m.push_back(&*p.Y);
  m.push_back(&p.Z);
  for (auto& v : p.vs) m.push_back(&v);
  for (auto& w : p.ws) m.push_back(&w);
  return m;
}

std::vector<Rational> flat_residual(const CMPoint& p) {
  std::vector<Rational> out;
  for (const auto& r : verify_relations(p).relations) {
    if (r.name == "X invertible") continue;
    out.insert(out.end(), r.residual.entries().begin(), r.residual.entries().end());
  }
  return out;
}

// Jacobian from exact interpolation of t -> residual(p + t e) at t = 0..D.
size_t oracle_tangent_dim(const CMPoint& p0) {
  const int D = 8;
  // L_k'(0) for nodes 0..D
  std::vector<Rational> w(D + 1);
  for (int k = 0; k <= D; ++k) {
    Rational s;
    for (int j = 0; j <= D; ++j) {
      if (j == k) continue;
      Rational prod(1);
      for (int m = 0; m <= D; ++m) {
        if (m == k) continue;
        prod *= m == j ? Rational(1) / Rational(k - m) : Rational(-m) / Rational(k - m);
      }
      s += prod;
    }
    w[k] = s;
  }
  CMPoint p = p0;
  auto mats = entries_of(p);
  size_t nvars = 0;
  for (auto* m : mats) nvars += m->entries().size();
  if (nvars == 0) return 0;
  size_t rows = flat_residual(p).size();
  MatQ J = MatQ::zeros(rows, nvars);
  size_t col = 0;
  for (auto* m : mats)
    for (size_t i = 0; i < m->rows(); ++i)
      for (size_t j = 0; j < m->cols(); ++j, ++col) {
        Rational orig = (*m)(i, j);
        for (int k = 0; k <= D; ++k) {
          (*m)(i, j) = orig + Rational(k);
          auto r = flat_residual(p);
          for (size_t row = 0; row < rows; ++row) J(row, col) += w[k] * r[row];
        }
        (*m)(i, j) = orig;
      }
  return nvars - rank(J);
}

}  // namespace

TEST(Verify, EmptyPointPasses) {
  CMPoint p;
  p.curve = CurveModel::affine_line();
  p.vs = {MatQ::zeros(0, 1)};
  p.ws = {MatQ::zeros(1, 0)};
  EXPECT_TRUE(verify_relations(p).pass);
  EXPECT_EQ(commutant_dim(p), 1u);
  EXPECT_EQ(tangent_dim(p), 0u);
  EXPECT_EQ(tangent(p).moduli_dim(), 0);
}

TEST(Verify, LineSingleton) {
  CMPoint p;
  p.curve = CurveModel::affine_line();
  p.n = 1;
  p.X = MatQ(1, 1, Rational(0));
  p.Z = MatQ(1, 1, Rational(0));
  p.vs = {MatQ(1, 1, Rational(1))};
  p.ws = {MatQ(1, 1, Rational(-1))};
  EXPECT_TRUE(verify_relations(p).pass);
  p.ws = {MatQ(1, 1, Rational(1))};
  auto rep = verify_relations(p);
  EXPECT_FALSE(rep.pass);
  ASSERT_NE(rep.first_failure(), nullptr);
  EXPECT_EQ(rep.first_failure()->name, "[Z,X] = Delta words");
  EXPECT_EQ(rep.first_failure()->residual(0, 0), Rational(-2));
}

TEST(Verify, ShapeErrors) {
  CMPoint p = generic_point(CurveModel::affine_line(), {pt(0, 0), pt(1, 0)}, {Rational(0), Rational(0)});
  CMPoint q = p;
  q.Z = MatQ::zeros(3, 3);
  EXPECT_THROW(verify_relations(q), SizeMismatch);
  q = p;
  q.ws.clear();
  EXPECT_THROW(verify_relations(q), SizeMismatch);
  q = p;
  q.Y = MatQ::zeros(2, 2);
  EXPECT_THROW(verify_relations(q), SizeMismatch);
  CMPoint h = generic_point(battery::cubic(), {pt(0, 1)}, {Rational(0)});
  h.Y.reset();
  EXPECT_THROW(verify_relations(h), SizeMismatch);
}

TEST(GenericPoint, WorkedCubicEntries) {
  CMPoint p = generic_point(battery::cubic(), {pt(0, 1), pt(2, 3)}, {Rational(0), Rational(0)});
  EXPECT_EQ(p.Z(0, 1), Rational(-2));
  EXPECT_EQ(p.Z(1, 0), Rational(2));
  EXPECT_EQ(p.X, MatQ::diag({Rational(0), Rational(2)}));
  EXPECT_EQ(*p.Y, MatQ::diag({Rational(1), Rational(3)}));
  EXPECT_TRUE(verify_relations(p).pass);
  EXPECT_EQ(commutant_dim(p), 1u);
  EXPECT_EQ(tangent_dim(p), 8u);
  EXPECT_EQ(tangent(p).moduli_dim(), 4);
}

TEST(GenericPoint, SingletonReducesToTrace) {
  CMPoint p = generic_point(battery::cubic(), {pt(2, -3)}, {Rational(5, 7)});
  EXPECT_EQ(p.Z, MatQ(1, 1, Rational(5, 7)));
  EXPECT_TRUE(verify_relations(p).pass);
  EXPECT_EQ((p.ws[0] * p.vs[0])(0, 0), Rational(-1));
}

TEST(GenericPoint, LineSingletonTangent) {
  CMPoint p = generic_point(CurveModel::affine_line(), {pt(4, 0)}, {Rational(1)});
  auto t = tangent(p);
  EXPECT_EQ(t.tangent_dim, 3u);
  EXPECT_EQ(t.moduli_dim(), 2);
  EXPECT_EQ(t.variables, 4u);
}

TEST(GenericPoint, Preconditions) {
  auto c = battery::cubic();
  EXPECT_THROW(generic_point(c, {pt(0, 1), pt(0, -1)}, {Rational(0), Rational(0)}), PreconditionError);
  EXPECT_THROW(generic_point(c, {pt(0, 1), pt(2, 1)}, {Rational(0), Rational(0)}), PreconditionError);
  EXPECT_THROW(generic_point(c, {pt(1, 1)}, {Rational(0)}), PreconditionError);
  EXPECT_THROW(generic_point(c, {pt(0, 1)}, {}), PreconditionError);
  EXPECT_THROW(generic_point(CurveModel::torus(), {pt(0, 0)}, {Rational(0)}), PreconditionError);
  // equal y is fine for the divided-difference form
  CMPoint m = moser_point(battery::split_cubic(), {pt(0, 0), pt(1, 0)}, {Rational(0), Rational(0)});
  EXPECT_TRUE(verify_relations(m).pass);
  EXPECT_THROW(generic_point(battery::split_cubic(), {pt(0, 0), pt(1, 0)}, {Rational(0), Rational(0)}),
               PreconditionError);
}

TEST(GenericPoint, MoserAgreesWithLiteralFormula) {
  std::vector<Point> pts{pt(0, 1), pt(2, 3), pt(-1, 0)};
  auto a = battery::alphas(3);
  EXPECT_EQ(generic_point(battery::cubic(), pts, a), moser_point(battery::cubic(), pts, a));
}

TEST(Battery, RelationsCommutantTangent) {
  for (const auto& c : battery::points()) {
    SCOPED_TRACE(c.label);
    const CMPoint& p = c.point;
    ASSERT_TRUE(verify_relations(p).pass);
    EXPECT_EQ(commutant_dim(p), 1u);
    size_t n = p.n;
    auto t = tangent(p);
    EXPECT_EQ(t.tangent_dim, n * n + 2 * n);
    EXPECT_EQ(t.moduli_dim(), static_cast<long>(2 * n));
  }
}

TEST(Battery, TangentMatchesInterpolationOracle) {
  for (const auto& c : battery::points()) {
    SCOPED_TRACE(c.label);
    EXPECT_EQ(tangent_dim(c.point), oracle_tangent_dim(c.point));
  }
}

TEST(Commutant, DiagonalArgumentForTwoPoints) {
  // A commuting with diag(0,2) is diagonal; Z12 != 0 forces equal entries; v forces C = A.
  CMPoint p = generic_point(battery::cubic(), {pt(0, 1), pt(2, 3)}, {Rational(0), Rational(0)});
  QuiverRep r = as_rep(p);
  MatQ A = MatQ::identity(2);
  EXPECT_TRUE((A * r.endos.back() - r.endos.back() * A).is_zero());
  EXPECT_EQ(commutant_dim(r), 1u);
}

TEST(Commutant, DirectSumHasProjections) {
  for (const auto& c : battery::points()) {
    SCOPED_TRACE(c.label);
    QuiverRep r = as_rep(c.point);
    EXPECT_GE(commutant_dim(direct_sum(r, r)), 2u);
  }
}

TEST(TraceLift, Examples) {
  BModule m;
  m.n = 3;
  m.n_inf = 1;
  EXPECT_TRUE(trace_lift_check(m, {Rational(1), Rational(-3)}));
  m.n_inf = 0;
  EXPECT_FALSE(trace_lift_check(m, {Rational(1), Rational(-3)}));
  EXPECT_TRUE(trace_lift_check(m, {Rational(0), Rational(0)}));
}

TEST(TraceLift, InvariantUnderActions) {
  CMPoint p = generic_point(CurveModel::torus(), {pt(1, 0), pt(2, 0)}, {Rational(0), Rational(1)});
  for (const CMPoint& q : {p, lambda_act(p, 3), omega_twist(p, {p.curve, BiPoly::monomial(Rational(2), 1, 0), -1})}) {
    BModule b = as_bmodule(q);
    EXPECT_TRUE(trace_lift_check(b, q.weight()));
  }
}

TEST(Euler, ClosedForm) {
  BModule U, V;
  U.n = V.n = 3;
  U.n_inf = V.n_inf = 1;
  EXPECT_EQ(euler_char(U, V), -2);
  U.n_inf = 0;
  EXPECT_EQ(euler_char(U, V), 0);
}

TEST(Euler, SimpleModuleExt) {
  // Ext^1 between a point module and itself is the tangent line.
  BModule k;
  k.n = 1;
  k.n_inf = 0;
  k.actions = {MatQ(1, 1, Rational(2))};
  k.phi = MatQ::zeros(1, 0);
  auto line = CurveModel::affine_line();
  EXPECT_EQ(hom_A_dim(k, k), 1u);
  EXPECT_EQ(ext1_A_dim(line, k, k), 1u);
  BModule q = k;
  q.actions = {MatQ(1, 1, Rational(2)), MatQ(1, 1, Rational(3))};
  EXPECT_EQ(derivation_dim(battery::cubic(), q, q), 1u);
  EXPECT_EQ(ext1_A_dim(battery::cubic(), q, q), 1u);
  BModule other = k;
  other.actions = {MatQ(1, 1, Rational(5))};
  EXPECT_EQ(hom_A_dim(k, other), 0u);
  EXPECT_EQ(ext1_A_dim(line, k, other), 0u);
}

TEST(Euler, RandomModulesMatchClosedForm) {
  std::mt19937_64 rng(7);
  std::vector<Point> cubic_pts{pt(-1, 0), pt(0, 1), pt(0, -1), pt(2, 3), pt(2, -3)};
  std::vector<std::pair<CurveModel, std::vector<Point>>> curves{
      {CurveModel::affine_line(), {}}, {CurveModel::torus(), {}}, {battery::cubic(), cubic_pts}};
  for (const auto& [c, pts] : curves)
    for (int trial = 0; trial < 25; ++trial) {
      size_t nu = rng() % 4, nv = rng() % 4, iu = rng() % 4, iv = rng() % 4;
      BModule U = random_bmodule(c, nu, iu, rng, pts), V = random_bmodule(c, nv, iv, rng, pts);
      if (c.is_plane()) {
        for (const auto* m : {&U, &V}) {
          ASSERT_TRUE(eval_bipoly(c.F(), m->actions[0], m->actions[1]).is_zero());
          ASSERT_TRUE((m->actions[0] * m->actions[1] - m->actions[1] * m->actions[0]).is_zero());
        }
      }
      SCOPED_TRACE(c.str() + " dims " + std::to_string(nu) + "," + std::to_string(iu) + " / " +
                   std::to_string(nv) + "," + std::to_string(iv));
      EXPECT_EQ(hom_A_dim(U, V), ext1_A_dim(c, U, V));
      long lhs = static_cast<long>(hom_dim(c, U, V)) - static_cast<long>(ext1_dim(c, U, V));
      EXPECT_EQ(lhs, euler_char(U, V));
    }
}

TEST(Euler, RandomModuleBlocksAreJordan) {
  std::mt19937_64 rng(11);
  BModule m = random_bmodule(CurveModel::torus(), 3, 1, rng);
  EXPECT_FALSE(det(m.actions[0]).is_zero());
  UniPoly cp = char_poly(m.actions[0]);
  for (const auto& r : rational_roots(cp)) EXPECT_FALSE(r.is_zero());
}

TEST(Actions, LambdaOnTorus) {
  CMPoint p = generic_point(CurveModel::torus(), {pt(1, 0)}, {Rational(0)});
  EXPECT_EQ(lambda_act(p, 1).Z, MatQ(1, 1, Rational(1)));
  EXPECT_EQ(lambda_act(p, 0), p);
  CMPoint q = generic_point(CurveModel::torus(), {pt(1, 0), pt(2, 0), pt(-1, 2)}, battery::alphas(3));
  EXPECT_EQ(lambda_act(lambda_act(q, 1), -1), q);
  EXPECT_TRUE(verify_relations(lambda_act(q, 5)).pass);
  EXPECT_THROW(lambda_act(generic_point(CurveModel::affine_line(), {pt(1, 0)}, {Rational(0)}), 1),
               PreconditionError);
}

TEST(Actions, OmegaTwist) {
  auto line = CurveModel::affine_line();
  CMPoint p = generic_point(line, {pt(3, 0)}, {Rational(2)});
  EXPECT_EQ(omega_twist(p, {line, BiPoly(), 0}), p);
  EXPECT_EQ(omega_twist(p, {line, BiPoly::monomial(Rational(1), 1, 0), 0}).Z, MatQ(1, 1, Rational(5)));
  for (const auto& c : battery::points()) {
    SCOPED_TRACE(c.label);
    const CMPoint& q = c.point;
    BiPoly g1 = BiPoly::monomial(Rational(1, 2), 2, 0) + BiPoly::monomial(Rational(-1), 0, 0);
    BiPoly g2 = BiPoly::monomial(Rational(3), 1, 0);
    if (q.curve.is_plane()) g2 += BiPoly::monomial(Rational(1), 1, 1);
    CMPoint a = omega_twist(omega_twist(q, {q.curve, g1, 0}), {q.curve, g2, 0});
    EXPECT_EQ(a, omega_twist(q, {q.curve, g1 + g2, 0}));
    EXPECT_TRUE(verify_relations(a).pass);
  }
}

TEST(Actions, LambdaIsTwistByLogDerivative) {
  CMPoint p = generic_point(CurveModel::torus(), {pt(1, 0), pt(3, 0)}, {Rational(0), Rational(1)});
  OneForm dlog{p.curve, BiPoly::monomial(Rational(4), 0, 0), -1};
  EXPECT_EQ(lambda_act(p, 4), omega_twist(p, dlog));
  EXPECT_THROW(omega_twist(generic_point(CurveModel::affine_line(), {pt(1, 0)}, {Rational(0)}),
                           {CurveModel::affine_line(), BiPoly::monomial(Rational(1), 0, 0), -1}),
               PreconditionError);
}

TEST(Bundle, ValidationAndPoint) {
  LineBundle b = battery::cubic_bundle();
  EXPECT_NO_THROW(b.validate());
  CMPoint p = bundle_point(battery::cubic(), b, {pt(0, 1), pt(2, 3)}, {Rational(0), Rational(1)});
  auto rep = verify_relations(p);
  for (const auto& r : rep.relations) EXPECT_TRUE(r.pass) << r.name << " " << r.residual.str();
  EXPECT_EQ(p.vs.size(), 2u);
  // Delta has zero diagonal since sum w_i v_i = 1 pointwise.
  MatQ D = p.delta();
  EXPECT_TRUE(D(0, 0).is_zero());
  EXPECT_TRUE(D(1, 1).is_zero());
  CMPoint bad = p;
  bad.vs[1](0, 0) += Rational(1);
  EXPECT_FALSE(verify_relations(bad).pass);
  EXPECT_THROW(bundle_point(battery::cubic(), b, {pt(-1, 0)}, {Rational(0)}), PreconditionError);
  LineBundle broken = b;
  broken.w[0] = broken.w[0] * RingElem(broken.w[0].ring(), Rational(2));
  EXPECT_THROW(broken.validate(), PreconditionError);
}

TEST(Bundle, TrivialBundleMatchesMoser) {
  RingPtr r = CoeffRing::of(battery::cubic());
  LineBundle triv{{RingElem(r, Rational(1))}, {RingElem(r, Rational(1))}};
  std::vector<Point> pts{pt(0, 1), pt(2, 3)};
  CMPoint b = bundle_point(battery::cubic(), triv, pts, battery::alphas(2));
  CMPoint m = moser_point(battery::cubic(), pts, battery::alphas(2));
  EXPECT_EQ(b.Z, m.Z);
  EXPECT_EQ(b.vs, m.vs);
  EXPECT_EQ(b.ws, m.ws);
}
