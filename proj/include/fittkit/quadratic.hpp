#pragma once

#include <fittkit/lattice.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fittkit {

// a + b sqrt(d) in Q(sqrt(d)).
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long d, Rational a, Rational b = 0) : d_(d), a_(std::move(a)), b_(std::move(b)) {}

  long radicand() const { return d_; }
  const Rational& rational_part() const { return a_; }
  const Rational& root_part() const { return b_; }
  RatVector coords() const { return {a_, b_}; }
  bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

  QuadNumber conjugate() const { return QuadNumber(d_, a_, -b_); }
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }
  QuadNumber inverse() const;

  friend QuadNumber operator+(const QuadNumber& x, const QuadNumber& y);
  friend QuadNumber operator-(const QuadNumber& x, const QuadNumber& y);
  friend QuadNumber operator*(const QuadNumber& x, const QuadNumber& y);
  QuadNumber operator-() const { return QuadNumber(d_, -a_, -b_); }
  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.d_ == y.d_ || is_zero(x.b_));
  }

  std::string to_string() const;

 private:
  long d_ = -1;
  Rational a_ = 0;
  Rational b_ = 0;
};

inline bool is_zero(const QuadNumber& x) { return is_zero(x.rational_part()) && is_zero(x.root_part()); }
inline QuadNumber zero_like(const QuadNumber& x) { return QuadNumber(x.radicand(), 0); }
inline QuadNumber one_like(const QuadNumber& x) { return QuadNumber(x.radicand(), 1); }
inline QuadNumber exact_div(const QuadNumber& x, const QuadNumber& y) { return x * y.inverse(); }

// Z[sqrt(d)] for the imaginary presets d = -1, -2, -5, -6; these are the maximal orders.
class QuadraticOrder {
 public:
  explicit QuadraticOrder(long d);
  long radicand() const { return d_; }
  QuadNumber element(Rational a, Rational b = 0) const { return QuadNumber(d_, std::move(a), std::move(b)); }
  QuadNumber root() const { return element(0, 1); }
  bool contains(const QuadNumber& x) const { return x.radicand() == d_ && x.is_integral(); }
  // basis 1, sqrt(d)
  const StructureAlgebra& algebra() const;
  std::string name() const;
  friend bool operator==(const QuadraticOrder& a, const QuadraticOrder& b) { return a.d_ == b.d_; }

 private:
  long d_;
};

// Nonzero fractional ideal, stored as its Z-lattice in coordinates 1, sqrt(d).
class QuadIdeal {
 public:
  static QuadIdeal generated_by(const QuadraticOrder& order, const std::vector<QuadNumber>& gens);
  static QuadIdeal principal(const QuadraticOrder& order, const QuadNumber& x) { return generated_by(order, {x}); }
  static QuadIdeal unit(const QuadraticOrder& order) { return principal(order, order.element(1)); }
  // Z-span given directly; throws unless it is a nonzero R-module.
  static QuadIdeal from_lattice(const QuadraticOrder& order, const IntegerLattice& lattice);

  const QuadraticOrder& order() const { return order_; }
  const IntegerLattice& lattice() const { return lattice_; }
  // Z-basis, which also generates the ideal over the order.
  std::vector<QuadNumber> generator_pair() const;
  bool contains(const QuadNumber& x) const;
  bool is_integral() const;
  Rational norm() const;  // [R : I] for integral I, multiplicative in general
  QuadIdeal conjugate() const;
  QuadIdeal inverse() const;
  friend QuadIdeal operator*(const QuadIdeal& a, const QuadIdeal& b);
  friend QuadIdeal operator+(const QuadIdeal& a, const QuadIdeal& b);
  friend bool operator==(const QuadIdeal& a, const QuadIdeal& b) {
    return a.order_ == b.order_ && a.lattice_ == b.lattice_;
  }
  std::string to_string() const;

 private:
  QuadIdeal(QuadraticOrder order, IntegerLattice lattice) : order_(order), lattice_(std::move(lattice)) {}
  QuadraticOrder order_;
  IntegerLattice lattice_;
};

struct PrincipalSearch {
  bool decided = false;
  std::optional<QuadNumber> generator;  // set when principal
};

// Norm-form search for a generator with |coordinates| <= bound; decided once bound covers the whole norm ellipse.
PrincipalSearch is_principal(const QuadIdeal& ideal, const Integer& bound);

}  // namespace fittkit
