#pragma once

#include <fittkit/quadratic.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fittkit {

enum class RingKind { integers, localized, residues, quadratic, quadratic_residues };

// The commutative base rings with lattice-representable ideals.
class BaseRing {
 public:
  static BaseRing integers();
  static BaseRing localized(Integer p);
  static BaseRing residues(Integer n);
  static BaseRing quadratic(QuadraticOrder order);
  static BaseRing quadratic_residues(QuadraticOrder order, Integer n);

  RingKind kind() const { return kind_; }
  bool is_quadratic() const { return kind_ == RingKind::quadratic || kind_ == RingKind::quadratic_residues; }
  const Integer& prime() const;    // localized only
  const Integer& modulus() const;  // residue rings only
  const QuadraticOrder& order() const;
  long radicand() const { return order_.radicand(); }
  std::size_t coordinate_rank() const { return is_quadratic() ? 2 : 1; }
  const StructureAlgebra& algebra() const;
  RatVector coords(const QuadNumber& x) const;
  QuadNumber element(Rational a, Rational b = 0) const { return QuadNumber(radicand(), std::move(a), std::move(b)); }
  bool contains(const QuadNumber& x) const;
  std::string name() const;

  friend bool operator==(const BaseRing& a, const BaseRing& b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.order_ == b.order_;
  }

 private:
  BaseRing(RingKind kind, Integer n, QuadraticOrder order) : kind_(kind), n_(std::move(n)), order_(order) {}
  RingKind kind_;
  Integer n_;              // prime or modulus, 0 otherwise
  QuadraticOrder order_;   // only meaningful for the quadratic kinds
};

using RingElement = QuadNumber;
using RingMatrix = Matrix<RingElement>;

// Ideal of a base ring, kept as a canonical lattice in Q^rank (residue rings: the preimage ideal upstairs).
class CommIdeal {
 public:
  static CommIdeal generated_by(const BaseRing& ring, const std::vector<RingElement>& gens);
  static CommIdeal zero(const BaseRing& ring) { return generated_by(ring, {}); }
  static CommIdeal unit(const BaseRing& ring) { return generated_by(ring, {ring.element(1)}); }

  const BaseRing& ring() const { return ring_; }
  const IntegerLattice& lattice() const { return lattice_; }
  const std::vector<RingElement>& generators() const { return gens_; }
  bool contains(const RingElement& x) const;
  bool contains(const CommIdeal& other) const;
  bool is_zero() const;
  bool is_unit() const;
  std::string to_string() const;

  friend CommIdeal operator*(const CommIdeal& a, const CommIdeal& b);
  friend CommIdeal operator+(const CommIdeal& a, const CommIdeal& b);
  CommIdeal power(unsigned k) const;
  friend bool operator==(const CommIdeal& a, const CommIdeal& b) { return a.ring_ == b.ring_ && a.lattice_ == b.lattice_; }

 private:
  CommIdeal(BaseRing ring, IntegerLattice lattice, std::vector<RingElement> gens)
      : ring_(std::move(ring)), lattice_(std::move(lattice)), gens_(std::move(gens)) {}
  BaseRing ring_;
  IntegerLattice lattice_;
  std::vector<RingElement> gens_;
};

// R^a -> R^b given by an a x b matrix (rows are relations).
class CommPresentation {
 public:
  CommPresentation(BaseRing ring, RingMatrix h);
  static CommPresentation over_integers(const IntMatrix& h);
  static CommPresentation over(const BaseRing& ring, const RatMatrix& h);

  const BaseRing& ring() const { return ring_; }
  const RingMatrix& matrix() const { return h_; }
  std::size_t relations() const { return h_.rows(); }
  std::size_t generators() const { return h_.cols(); }
  RatMatrix rational_matrix() const;  // throws for quadratic rings

 private:
  BaseRing ring_;
  RingMatrix h_;
};

enum class FittMethod { automatic, minors };

CommIdeal fitting_ideal(const CommPresentation& pres, FittMethod method = FittMethod::automatic);
CommIdeal higher_fitting(const CommPresentation& pres, std::size_t i, FittMethod method = FittMethod::automatic);
CommIdeal annihilator_finite(const CommPresentation& pres);

struct RingMap {
  enum class Kind { reduce, localize } kind;
  Integer n;  // modulus or prime
  static RingMap reduction(Integer n) { return {Kind::reduce, std::move(n)}; }
  static RingMap localization(Integer p) { return {Kind::localize, std::move(p)}; }
};

BaseRing map_ring(const BaseRing& ring, const RingMap& hom);
CommPresentation map_entries(const CommPresentation& pres, const RingMap& hom);
CommIdeal map_ideal(const CommIdeal& ideal, const RingMap& hom);

CommPresentation direct_sum(const CommPresentation& a, const CommPresentation& b);
// Invariant factors of the cokernel over Z, 1s dropped, zeros for free summands.
std::vector<Integer> abelian_invariants(const IntMatrix& h);

}  // namespace fittkit
