#pragma once

#include <fittkit/group.hpp>
#include <fittkit/lattice.hpp>

#include <memory>
#include <string>

namespace fittkit {

// Finite-dimensional associative Q-algebra with a distinguished basis.
class AlgebraStructure {
 public:
  virtual ~AlgebraStructure() = default;
  virtual std::size_t dimension() const = 0;
  virtual RatVector multiply(const RatVector& x, const RatVector& y) const = 0;
  virtual RatVector one() const = 0;
  virtual std::string label(std::size_t i) const = 0;
};

class GroupAlgebra : public AlgebraStructure {
 public:
  explicit GroupAlgebra(GroupPtr group) : group_(std::move(group)) {}
  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  std::size_t dimension() const override { return group_->order(); }
  RatVector multiply(const RatVector& x, const RatVector& y) const override;
  RatVector one() const override;
  std::string label(std::size_t i) const override { return "g" + std::to_string(i); }

 private:
  GroupPtr group_;
};

// n x n rational matrices, basis E_ij at index i * n + j.
class MatrixAlgebra : public AlgebraStructure {
 public:
  explicit MatrixAlgebra(std::size_t n) : n_(n) {}
  std::size_t size() const { return n_; }
  std::size_t dimension() const override { return n_ * n_; }
  RatVector multiply(const RatVector& x, const RatVector& y) const override;
  RatVector one() const override;
  std::string label(std::size_t i) const override { return "E" + std::to_string(i / n_ + 1) + std::to_string(i % n_ + 1); }

 private:
  std::size_t n_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraStructure>;

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraPtr alg, RatVector coeffs);
  static AlgebraElement zero(const AlgebraPtr& alg) { return AlgebraElement(alg, RatVector(alg->dimension(), Rational(0))); }
  static AlgebraElement one(const AlgebraPtr& alg) { return AlgebraElement(alg, alg->one()); }
  static AlgebraElement basis(const AlgebraPtr& alg, std::size_t i, const Rational& c = 1);

  const AlgebraPtr& structure() const { return alg_; }
  const RatVector& coeffs() const { return c_; }
  const Rational& coeff(std::size_t i) const { return c_[i]; }
  std::size_t dimension() const { return c_.size(); }

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(const Rational& s, const AlgebraElement& a);
  AlgebraElement operator-() const;
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  RatVector c_;
};

inline bool is_zero(const AlgebraElement& x) {
  for (const auto& c : x.coeffs())
    if (!is_zero(c)) return false;
  return true;
}
inline AlgebraElement zero_like(const AlgebraElement& x) { return AlgebraElement::zero(x.structure()); }
inline AlgebraElement one_like(const AlgebraElement& x) { return AlgebraElement::one(x.structure()); }

using AlgebraMatrix = Matrix<AlgebraElement>;

AlgebraMatrix algebra_identity(const AlgebraPtr& alg, std::size_t n);
AlgebraMatrix algebra_zero(const AlgebraPtr& alg, std::size_t r, std::size_t c);
AlgebraMatrix scale(const AlgebraElement& s, const AlgebraMatrix& m);  // s * m entrywise (left)

}  // namespace fittkit
