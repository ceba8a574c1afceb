#pragma once

#include <vector>

#include "cmf/poly.hpp"

namespace cmf {

// phi(z1, z2) dz2 / (z2 - z1)^m; BiPoly x is z1, y is z2.
struct LocalKernel {
  BiPoly phi;
  unsigned m = 2;
};

// f dz^1/2 -> (a f' + b f) dz^1/2, polynomials in z.
struct HalfFormOp {
  UniPoly a{Symbol::z}, b{Symbol::z};
  UniPoly apply(const UniPoly& f) const;
  friend bool operator==(const HalfFormOp&, const HalfFormOp&) = default;
};

// Coefficients of h^j in phi(z, z + h), as polynomials in z.
std::vector<UniPoly> diagonal_expansion(const BiPoly& phi);

// Coefficient of h^(m-1) in f(z + h) phi(z, z + h).
UniPoly residue_action(const LocalKernel& K, const UniPoly& f);

// m = 2 only: a = phi(z, z), b = h-coefficient of phi(z, z + h).
HalfFormOp extract_operator(const LocalKernel& K);
// phi = a(z1) + b(z1) (z2 - z1), m = 2.
LocalKernel kernel_from_operator(const HalfFormOp& op);

// Compares sqrt(w'(z1) w'(z2)) / (w(z1) - w(z2)) with 1/(z1 - z2) in
// Q[[z, h]] (z2 = z + h) truncated at total degree `order`. True when the
// difference vanishes on the first neighbourhood of the diagonal.
bool gamma_skew_check(const UniPoly& w, unsigned order = 6);

// The h^2 coefficient of sqrt(w'(z) w'(z+h)) h / (w(z+h) - w(z)), as a
// series in z up to degree order - 2.
UniPoly gamma_correction(const UniPoly& w, unsigned order = 6);

}  // namespace cmf
