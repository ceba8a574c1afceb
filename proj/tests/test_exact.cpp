#include <gtest/gtest.h>

#include <random>

#include "cmf/matrix.hpp"

using namespace cmf;

namespace {

UniPoly X(std::vector<Rational> c) { return UniPoly(Symbol::x, std::move(c)); }
const UniPoly x = UniPoly::variable(Symbol::x);

MatQ random_mat(std::mt19937_64& rng, size_t n, int lo = -4, int hi = 4) {
  MatQ m = MatQ::zeros(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = Rational(lo + static_cast<long>(rng() % (hi - lo + 1)));
  return m;
}

// Laplace expansion along the first row.
Rational cofactor_det(const MatQ& m) {
  size_t n = m.rows();
  if (n == 0) return 1;
  Rational d;
  for (size_t j = 0; j < n; ++j) {
    MatQ minor = MatQ::zeros(n - 1, n - 1);
    for (size_t a = 1; a < n; ++a)
      for (size_t b = 0, c = 0; b < n; ++b)
        if (b != j) minor(a - 1, c++) = m(a, b);
    Rational t = m(0, j) * cofactor_det(minor);
    d += (j % 2) ? -t : t;
  }
  return d;
}

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("-8").str(), "-8");
  EXPECT_EQ(Rational::parse("0/5").str(), "0");
  EXPECT_THROW(Rational::parse("2/-3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, CanonicalForm) {
  Rational r(10, -4);
  EXPECT_EQ(r.num(), -5);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(r.raw()), r);
}

TEST(UniPoly, ArithmeticAndDivision) {
  UniPoly p = x * x - Rational(1);
  auto [q, r] = UniPoly::divmod(p, x - Rational(1));
  EXPECT_EQ(q, x + Rational(1));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(gcd(p, x * x + x * Rational(2) + Rational(1)), x + Rational(1));
  EXPECT_EQ(p.derivative(), x * Rational(2));
  EXPECT_EQ(p.eval(3), Rational(8));
  EXPECT_THROW(UniPoly::variable(Symbol::x) + UniPoly::variable(Symbol::y), std::invalid_argument);
}

TEST(UniPoly, XGcdBezout) {
  UniPoly a = x.pow(4) - Rational(1), b = x.pow(3) + x * Rational(2) + Rational(3);
  XGcd g = xgcd(a, b);
  EXPECT_EQ(g.s * a + g.t * b, g.g);
  EXPECT_EQ(g.g, gcd(a, b));
}

TEST(UniPoly, RationalRoots) {
  UniPoly p = (x * Rational(2) - Rational(3)) * (x + Rational(1)) * x * (x * x + Rational(1));
  auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], Rational(-1));
  EXPECT_EQ(roots[1], Rational(0));
  EXPECT_EQ(roots[2], Rational(3, 2));
}

TEST(RatFunc, NormalizationIdempotent) {
  RatFunc f(x * x * Rational(2) - Rational(2), x * Rational(4) - Rational(4));
  EXPECT_EQ(f.den(), UniPoly(Rational(1)));
  EXPECT_EQ(f.num(), (x + Rational(1)) * Rational(1, 2));
  EXPECT_EQ(f.normalized(), f);
  EXPECT_EQ(f.normalized().normalized(), f.normalized());
  RatFunc g(x + Rational(1), x * Rational(3));
  EXPECT_TRUE(g.den().lead().is_one());
  EXPECT_EQ(g.normalized(), g);
  EXPECT_EQ((g - g).is_zero(), true);
  EXPECT_EQ(g.derivative(), RatFunc(UniPoly(Rational(-1, 3)), x * x));
}

TEST(LaurentPoly, EuclideanByWidth) {
  LaurentPoly a(x.pow(5) + Rational(3), -2);  // x^3 + 3x^-2
  LaurentPoly b(x * x - Rational(2));
  auto [q, r] = LaurentPoly::divmod(a, b);
  EXPECT_EQ(q * b + r, a);
  EXPECT_LT(r.width(), b.width());
  EXPECT_EQ(r.shift() >= 0, true);
  // x^k (x - 1) is associated with x - 1.
  EXPECT_EQ(LaurentPoly(x - Rational(1), 4).normalized(), LaurentPoly(x - Rational(1)));
  EXPECT_EQ(LaurentPoly(x, 0).width(), 0);
  EXPECT_EQ(LaurentPoly(UniPoly(Rational(3)), -2).inverse_unit() * LaurentPoly(UniPoly(Rational(3)), -2),
            LaurentPoly(UniPoly(Rational(1))));
  // Residues of associates agree.
  EXPECT_EQ(LaurentPoly::residue(LaurentPoly(x.pow(3) + Rational(5), -4), b),
            LaurentPoly::residue(LaurentPoly(x.pow(3) + Rational(5), -4), b * LaurentPoly(x * Rational(7), 3)));
}

TEST(BiPoly, PartialsAndSlices) {
  // F = y^2 - x^3 - 1
  BiPoly F = BiPoly::monomial(1, 0, 2) - BiPoly::monomial(1, 3, 0) - BiPoly::monomial(1, 0, 0);
  EXPECT_EQ(F.partial_x(), BiPoly::monomial(-3, 2, 0));
  EXPECT_EQ(F.partial_y(), BiPoly::monomial(2, 0, 1));
  EXPECT_EQ(F.eval(2, 3), Rational(0));
  EXPECT_EQ(F.eval_x(0), UniPoly(Symbol::y, {-1, 0, 1}));
  auto cy = F.coeffs_in_y();
  ASSERT_EQ(cy.size(), 3u);
  EXPECT_EQ(cy[0], X({-1, 0, 0, -1}));
}

TEST(Det, SpecExamples) {
  EXPECT_EQ(det(MatQ::identity(2)), Rational(1));
  Mat<UniPoly> tri(2, 2, {x, UniPoly(Rational(1)), UniPoly(Symbol::x), x});
  EXPECT_EQ(det(tri), x * x);
  Mat<UniPoly> m(2, 2, {x, x + Rational(1), x - Rational(1), x});
  EXPECT_EQ(det(m), UniPoly(Rational(1)));
  EXPECT_THROW(det(MatQ::zeros(2, 3)), SizeMismatch);
}

TEST(Det, MatchesCofactorExpansion) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    MatQ m = random_mat(rng, 1 + trial % 5);
    EXPECT_EQ(det(m), cofactor_det(m));
  }
}

TEST(Det, AdjugateIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    MatQ m = random_mat(rng, 3);
    EXPECT_EQ(m * adjugate(m), det(m) * MatQ::identity(3));
  }
}

TEST(Inverse, ExactAndSingular) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    MatQ m = random_mat(rng, 4);
    if (det(m).is_zero()) continue;
    EXPECT_EQ(m * inverse(m), MatQ::identity(4));
  }
  MatQ s(2, 2, {1, 2, 2, 4});
  try {
    inverse(s);
    FAIL();
  } catch (const SingularMatrix& e) {
    EXPECT_EQ(e.determinant, "0");
  }
  Mat<RatFunc> r = shifted(MatQ::identity(2), Symbol::z);
  EXPECT_EQ(r * inverse(r), Mat<RatFunc>::identity(2, RatFunc(Rational(1), Symbol::z)));
}

TEST(CharPoly, SpecExamples) {
  EXPECT_EQ(char_poly(MatQ::zeros(0, 0)), UniPoly(Rational(1)));
  EXPECT_EQ(char_poly(MatQ::diag({2, 3})), UniPoly(Symbol::t, {6, -5, 1}));
  EXPECT_EQ(char_poly(MatQ::identity(2)), UniPoly(Symbol::t, {1, -2, 1}));
}

TEST(CharPoly, CayleyHamilton) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    size_t n = 1 + trial % 4;
    MatQ m = random_mat(rng, n);
    EXPECT_TRUE(eval_poly(char_poly(m), m).is_zero());
  }
}

TEST(Resultant, Basics) {
  // Res(x - a, x - b) = a - b for monic linear factors.
  EXPECT_EQ(resultant(x - Rational(2), x - Rational(5)), Rational(-3));
  EXPECT_EQ(resultant(x * x - Rational(1), x - Rational(1)), Rational(0));
  EXPECT_NE(resultant(x * x + Rational(1), x - Rational(1)), Rational(0));
  EXPECT_THROW(resultant(UniPoly(), UniPoly()), std::invalid_argument);
  // Res_y(y^2 - x^3 - 1, 2y) vanishes exactly on x^3 = -1.
  BiPoly F = BiPoly::monomial(1, 0, 2) - BiPoly::monomial(1, 3, 0) - BiPoly::monomial(1, 0, 0);
  UniPoly r = resultant_y(F, F.partial_y());
  EXPECT_EQ(r.degree(), 3);
  EXPECT_TRUE(r.eval(-1).is_zero());
  EXPECT_FALSE(r.eval(1).is_zero());
}

TEST(Nullspace, DimensionAndKernel) {
  MatQ m(2, 3, {1, 2, 3, 2, 4, 6});
  auto ns = nullspace(m);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE((m * v).is_zero());
  EXPECT_EQ(rank(m), 1u);
}
