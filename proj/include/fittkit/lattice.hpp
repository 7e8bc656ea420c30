#pragma once

#include <fittkit/matrix.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fittkit {

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = std::vector<Rational>;

IntMatrix int_zero_matrix(std::size_t r, std::size_t c);
RatMatrix rat_zero_matrix(std::size_t r, std::size_t c);
RatMatrix rat_identity(std::size_t n);
RatMatrix to_rational(const IntMatrix& m);
Integer common_denominator(const RatMatrix& m);
Integer common_denominator(const RatVector& v);

// Gaussian elimination over Q.
std::size_t rank(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
// Some x with x * m = target (row vectors), if one exists.
std::optional<RatVector> solve_left(const RatMatrix& m, const RatVector& target);
RatVector row_times(const RatVector& x, const RatMatrix& m);

struct HnfResult {
  IntMatrix h;  // U * A, first `rank` rows nonzero in row Hermite normal form
  IntMatrix u;  // unimodular
  std::size_t rank = 0;
};
HnfResult hnf_transform(const IntMatrix& a);
// The nonzero HNF rows: positive pivots, entries above a pivot reduced into [0, pivot).
IntMatrix hnf_rows(const IntMatrix& a);

struct SnfResult {
  std::vector<Integer> diag;  // min(rows, cols) entries, d1 | d2 | ..., zeros last
  IntMatrix u, v, v_inv;      // u * a * v = diag
};
SnfResult snf(const IntMatrix& a);

// Row basis (in HNF) of {x in Z^rows : x * a = 0}.
IntMatrix integer_left_kernel(const IntMatrix& a);

// Z-span of (basis rows) / denominator inside Q^dimension.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t dimension);  // zero lattice
  static IntegerLattice standard(std::size_t n);
  static IntegerLattice from_generators(const RatMatrix& gens);
  static IntegerLattice from_generators(std::size_t dimension, const std::vector<RatVector>& gens);
  static IntegerLattice from_scaled_rows(Integer denominator, const IntMatrix& rows);

  std::size_t dimension() const { return n_; }
  std::size_t rank() const { return basis_.rows(); }
  bool is_zero() const { return rank() == 0; }
  bool is_full_rank() const { return rank() == n_; }
  const Integer& denominator() const { return d_; }
  const IntMatrix& basis() const { return basis_; }
  RatMatrix generators() const;
  RatVector generator(std::size_t i) const;

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t n_;
  Integer d_ = 1;
  IntMatrix basis_;
};

// A lattice seen over Z localized at p. The stored representative is the
// unique lattice that agrees with the input at p and with the saturation of
// its span (scaled by a p-power) everywhere else, so it prints canonically.
class LocalLattice {
 public:
  LocalLattice(Integer p, const IntegerLattice& lattice);
  static LocalLattice standard(Integer p, std::size_t n) { return LocalLattice(std::move(p), IntegerLattice::standard(n)); }
  static LocalLattice zero(Integer p, std::size_t n) { return LocalLattice(std::move(p), IntegerLattice(n)); }

  const Integer& prime() const { return p_; }
  const IntegerLattice& lattice() const { return l_; }
  std::size_t dimension() const { return l_.dimension(); }
  std::size_t rank() const { return l_.rank(); }
  bool is_zero() const { return l_.is_zero(); }

  // Representation equality; agrees with lattice_equal_local by construction.
  friend bool operator==(const LocalLattice& a, const LocalLattice& b) { return a.p_ == b.p_ && a.l_ == b.l_; }

 private:
  Integer p_;
  IntegerLattice l_;
};

// Commutative associative Q-algebra given by structure constants.
class StructureAlgebra {
 public:
  // constants[(i * n + j) * n + k] is the coefficient of basis_k in basis_i * basis_j.
  StructureAlgebra(std::vector<std::string> labels, std::vector<Rational> constants,
                   std::optional<RatMatrix> trace_form = std::nullopt);
  static StructureAlgebra rationals();
  // Componentwise product on Q^n.
  static StructureAlgebra diagonal(std::size_t n);

  std::size_t dimension() const { return n_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * n_ + j) * n_ + k]; }
  RatVector multiply(const RatVector& x, const RatVector& y) const;
  // Matrix of x -> x * y acting on row vectors.
  RatMatrix right_mult_matrix(const RatVector& y) const;
  Rational trace(const RatVector& x) const;
  const RatMatrix& trace_form() const { return trace_form_; }
  std::optional<RatVector> one() const;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
  std::vector<Rational> c_;
  RatMatrix trace_form_;
};

enum class CombineMode { sum, product, conductor };

bool lattice_membership(const RatVector& x, const IntegerLattice& lattice);
bool lattice_membership(const RatVector& x, const LocalLattice& lattice);

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b);
IntegerLattice lattice_product(const IntegerLattice& a, const IntegerLattice& b, const StructureAlgebra& alg);
IntegerLattice lattice_scale(const IntegerLattice& a, const Rational& c);
// {x in domain : x * t in target}; t has domain.dimension() rows and target.dimension() columns.
IntegerLattice lattice_preimage(const IntegerLattice& domain, const RatMatrix& t, const IntegerLattice& target);
IntegerLattice lattice_intersection(const IntegerLattice& a, const IntegerLattice& b);

LocalLattice lattice_combine(const LocalLattice& a, const LocalLattice& b, CombineMode mode,
                             const StructureAlgebra* alg = nullptr);
LocalLattice lattice_intersection(const LocalLattice& a, const LocalLattice& b);
LocalLattice lattice_dual(const LocalLattice& l, const StructureAlgebra& alg);
LocalLattice lattice_scale(const LocalLattice& a, const Rational& c);
LocalLattice lattice_image(const LocalLattice& a, const RatMatrix& t);  // row span of generators * t
bool lattice_equal_local(const LocalLattice& a, const LocalLattice& b);
bool lattice_contains_local(const LocalLattice& big, const LocalLattice& small);
// p-adic valuation of [big : small] for lattices of equal rank with small inside big.
long local_index_exponent(const LocalLattice& big, const LocalLattice& small);

std::string describe(const IntegerLattice& l);

}  // namespace fittkit
