#pragma once

#include <optional>
#include <vector>

#include "cmf/forge.hpp"
#include "cmf/matrix.hpp"

namespace cmf {

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);

template <class E>
struct HnfResult {
  Mat<E> H, U;  // U * m = H
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
};

// Row Hermite form over Q[x]: monic pivots, entries above a pivot reduced
// below its degree, zero rows last.
HnfResult<UniPoly> hnf(const Mat<UniPoly>& m);
// Same over Q[x,1/x]: pivots normalized to monic base with zero shift,
// entries above reduced to canonical residues.
HnfResult<LaurentPoly> hnf(const Mat<LaurentPoly>& m);

// Q[x]- (or Q[x,1/x]-) span of coefficient rows (1/denominator) * row.
// Column 0 holds the coefficient of d^k, column k that of d^0.
struct FiltrationModule {
  bool laurent = false;
  unsigned k = 0;
  UniPoly denominator{Rational(1)};
  Mat<LaurentPoly> rows;
};

// Rows d^s g_j for s <= k - order(g_j), over the common denominator.
FiltrationModule span_filtration(const FractionalIdeal& I, unsigned k);
FiltrationModule span_filtration(const std::vector<DiffOp>& gens, bool laurent, unsigned k);

struct CodimRow {
  unsigned k = 0;
  std::optional<long> codim;  // empty until the span has full rank
};

struct CodimReport {
  std::vector<CodimRow> rows;
  std::optional<long> stabilized;  // last three k agree
  bool monotone = true;            // non-increasing after the first full-rank k
  // Before the top-order generator enters, the span only sees the lower ones
  // and its index grows like n(k+1). These track k >= max generator order.
  unsigned settled_from = 0;
  bool monotone_settled = true;
};

// Global: Hermite form of the whole span. Local: when the span holds an
// order-0 polynomial c and c and the denominator split over Q, the module
// differs from D_k only at their roots, and it is reduced there modulo a power
// of (x - a) that it contains. Auto takes Local when it applies.
enum class LatticeMethod { Auto, Global, Local };

// sum over orders j of (size(pivot_j) - size(denominator)); empty if not full
// rank. Throws PreconditionError when a symbol ideal is not integral and
// UnsupportedModel when Local is forced but does not apply.
std::optional<long> codim_at(const FiltrationModule& m, LatticeMethod how = LatticeMethod::Auto);
CodimReport codim(const FractionalIdeal& I, unsigned kmax);
unsigned default_kmax(const CMPoint& p, const FractionalIdeal& I);
// Without the point, n is read off as the top generator order.
unsigned default_kmax(const FractionalIdeal& I);

bool module_equal(const FiltrationModule& a, const FiltrationModule& b, LatticeMethod how = LatticeMethod::Auto);

// x^r g x^-r for every generator; torus only.
FractionalIdeal conjugate_by_x(const FractionalIdeal& I, long r);

}  // namespace cmf
