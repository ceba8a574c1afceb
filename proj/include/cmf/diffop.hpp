#pragma once

#include <string>
#include <vector>

#include "cmf/ring.hpp"

namespace cmf {

// sum_i c_i d^i with derivative powers on the right.
class DiffOp {
 public:
  explicit DiffOp(RingPtr r) : ring_(std::move(r)) {}
  DiffOp(RingPtr r, std::vector<RingElem> coeffs);
  DiffOp(const RingElem& f) : DiffOp(f.ring(), {f}) {}

  static DiffOp d(RingPtr r, unsigned power = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<RingElem>& coeffs() const { return c_; }
  RingElem coeff(size_t i) const { return i < c_.size() ? c_[i] : RingElem(ring_); }
  bool is_zero() const { return c_.empty(); }
  // Throws std::domain_error on the zero operator.
  unsigned order() const;
  RingElem principal_symbol() const;

  RingElem apply(const RingElem& f) const;
  std::string str() const;

  DiffOp operator-() const;
  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.c_ == b.c_; }
  friend std::ostream& operator<<(std::ostream& os, const DiffOp& p) { return os << p.str(); }

 private:
  void trim();
  RingPtr ring_;
  std::vector<RingElem> c_;
};

DiffOp mul(const DiffOp& a, const DiffOp& b);

// D_k as the free module with basis 1, d, ..., d^k over the coefficient ring.
struct FiltrationBasis {
  RingKind ring;
  unsigned k;
  unsigned rank() const { return k + 1; }
  std::vector<std::string> labels() const;
};

// Throws UnsupportedModel off AffineLine / Torus.
FiltrationBasis filtration_basis(const CoeffRing& ring, unsigned k);

}  // namespace cmf
