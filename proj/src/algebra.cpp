#include <fittkit/algebra.hpp>

#include <sstream>

namespace fittkit {

RatVector GroupAlgebra::multiply(const RatVector& x, const RatVector& y) const {
  const std::size_t n = group_->order();
  if (x.size() != n || y.size() != n) throw MathError("group algebra element has the wrong length");
  RatVector out(n, Rational(0));
  for (std::size_t a = 0; a < n; ++a) {
    if (is_zero(x[a])) continue;
    for (std::size_t b = 0; b < n; ++b)
      if (!is_zero(y[b])) out[group_->mul(a, b)] += x[a] * y[b];
  }
  return out;
}

RatVector GroupAlgebra::one() const {
  RatVector e(group_->order(), Rational(0));
  e[group_->identity()] = 1;
  return e;
}

RatVector MatrixAlgebra::multiply(const RatVector& x, const RatVector& y) const {
  if (x.size() != n_ * n_ || y.size() != n_ * n_) throw MathError("matrix algebra element has the wrong length");
  RatVector out(n_ * n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const Rational& a = x[i * n_ + k];
      if (is_zero(a)) continue;
      for (std::size_t j = 0; j < n_; ++j) out[i * n_ + j] += a * y[k * n_ + j];
    }
  return out;
}

RatVector MatrixAlgebra::one() const {
  RatVector e(n_ * n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i) e[i * n_ + i] = 1;
  return e;
}

AlgebraElement::AlgebraElement(AlgebraPtr alg, RatVector coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
  if (!alg_) throw MathError("algebra element without an algebra");
  if (c_.size() != alg_->dimension()) throw MathError("algebra element has the wrong number of coefficients");
}

AlgebraElement AlgebraElement::basis(const AlgebraPtr& alg, std::size_t i, const Rational& c) {
  RatVector v(alg->dimension(), Rational(0));
  if (i >= v.size()) throw MathError("basis index out of range");
  v[i] = c;
  return AlgebraElement(alg, std::move(v));
}

namespace {

void require_same(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.structure() != b.structure()) throw MathError("elements of different algebras");
}

}  // namespace

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  RatVector c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
  return AlgebraElement(a.alg_, std::move(c));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  RatVector c = a.c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
  return AlgebraElement(a.alg_, std::move(c));
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same(a, b);
  return AlgebraElement(a.alg_, a.alg_->multiply(a.c_, b.c_));
}

AlgebraElement operator*(const Rational& s, const AlgebraElement& a) {
  RatVector c = a.c_;
  for (auto& x : c) x *= s;
  return AlgebraElement(a.alg_, std::move(c));
}

AlgebraElement AlgebraElement::operator-() const { return Rational(-1) * *this; }

std::string AlgebraElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (is_zero(c_[i])) continue;
    if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
    else if (sgn(c_[i]) < 0) os << "-";
    Rational a = abs(c_[i]);
    if (a != 1) os << fittkit::to_string(a) << "*";
    os << alg_->label(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AlgebraMatrix algebra_identity(const AlgebraPtr& alg, std::size_t n) {
  return AlgebraMatrix::identity(n, AlgebraElement::zero(alg), AlgebraElement::one(alg));
}

AlgebraMatrix algebra_zero(const AlgebraPtr& alg, std::size_t r, std::size_t c) {
  if (r == 0) return AlgebraMatrix::with_cols(c);
  return AlgebraMatrix(r, c, AlgebraElement::zero(alg));
}

AlgebraMatrix scale(const AlgebraElement& s, const AlgebraMatrix& m) {
  AlgebraMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = s * m(i, j);
  return out;
}

}  // namespace fittkit
