#include "cmf/diffop.hpp"

#include <stdexcept>

#include "cmf/errors.hpp"

namespace cmf {

DiffOp::DiffOp(RingPtr r, std::vector<RingElem> coeffs) : ring_(std::move(r)), c_(std::move(coeffs)) { trim(); }

DiffOp DiffOp::d(RingPtr r, unsigned power) {
  std::vector<RingElem> c(power + 1, RingElem(r));
  c[power] = RingElem(r, Rational(1));
  return DiffOp(r, std::move(c));
}

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

unsigned DiffOp::order() const {
  if (is_zero()) throw std::domain_error("order of the zero operator");
  return static_cast<unsigned>(c_.size() - 1);
}

RingElem DiffOp::principal_symbol() const {
  if (is_zero()) throw std::domain_error("principal symbol of the zero operator");
  return c_.back();
}

RingElem DiffOp::apply(const RingElem& f) const {
  RingElem out(ring_), g = f;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) g = g.derivative();
    if (!c_[i].is_zero()) out += c_[i] * g;
  }
  return out;
}

std::string DiffOp::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string d = i == 0 ? "" : (i == 1 ? "d" : "d^" + std::to_string(i));
    std::string c = c_[i].str();
    if (d.empty()) out += "(" + c + ")";
    else if (c == "1") out += d;
    else out += "(" + c + ")*" + d;
  }
  return out;
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), RingElem(ring_));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) { return *this += -o; }

// d^i f = sum_k C(i,k) d^k(f) d^(i-k)
DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() || b.is_zero()) return DiffOp(a.ring_);
  size_t na = a.c_.size(), nb = b.c_.size();
  std::vector<RingElem> out(na + nb - 1, RingElem(a.ring_));
  for (size_t j = 0; j < nb; ++j) {
    std::vector<RingElem> dk{b.c_[j]};
    for (size_t k = 1; k < na; ++k) dk.push_back(dk.back().derivative());
    for (size_t i = 0; i < na; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t k = 0; k <= i; ++k) {
        if (dk[k].is_zero()) continue;
        out[i - k + j] += a.c_[i] * dk[k] * RingElem(a.ring_, binomial(static_cast<unsigned>(i), static_cast<unsigned>(k)));
      }
    }
  }
  return DiffOp(a.ring_, std::move(out));
}

DiffOp mul(const DiffOp& a, const DiffOp& b) { return a * b; }

std::vector<std::string> FiltrationBasis::labels() const {
  std::vector<std::string> l;
  for (unsigned i = 0; i <= k; ++i) l.push_back(i == 0 ? "1" : (i == 1 ? "d" : "d^" + std::to_string(i)));
  return l;
}

FiltrationBasis filtration_basis(const CoeffRing& ring, unsigned k) {
  if (ring.kind == RingKind::Hyperelliptic)
    throw UnsupportedModel("filtration bases are free only over Q[x] and Q[x,1/x]");
  return {ring.kind, k};
}

}  // namespace cmf
