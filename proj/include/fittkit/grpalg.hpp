#pragma once

#include <fittkit/algebra.hpp>

#include <memory>
#include <string>
#include <vector>

namespace fittkit {

using GroupAlgebraElement = AlgebraElement;
using GroupAlgebraPtr = std::shared_ptr<const GroupAlgebra>;
using CycMatrix = Matrix<CyclotomicNumber>;

GroupAlgebraPtr make_group_algebra(GroupPtr group);
const FiniteGroup& group_of(const GroupAlgebraElement& x);  // throws unless x lives in a group algebra

GroupAlgebraElement group_element(const GroupAlgebraPtr& alg, std::size_t g, const Rational& c = 1);
GroupAlgebraElement norm_element(const GroupAlgebraPtr& alg);  // sum of all g
GroupAlgebraElement sharp(const GroupAlgebraElement& x);     // g -> g^-1
Rational augment(const GroupAlgebraElement& x);
// transpose(sharp(h)) entrywise
AlgebraMatrix sharp_transpose(const AlgebraMatrix& h);

struct Irrep {
  unsigned dimension = 0;
  unsigned conductor = 1;
  std::vector<CycMatrix> images;              // one per group element
  std::vector<CyclotomicNumber> character;    // one per conjugacy class
  std::vector<unsigned> stabilizer;           // residues k with sigma_k fixing the character

  std::size_t orbit_size() const;
  const CycMatrix& image(std::size_t g) const { return images.at(g); }
};

// Extends generator images (aligned with g.generators()) to the whole group.
// Throws if the images are inconsistent with the multiplication table.
Irrep irrep_from_generators(const FiniteGroup& g, unsigned conductor, const std::vector<CycMatrix>& generator_images);
// Conjugate every matrix entry by sigma_k.
Irrep galois_conjugate(const Irrep& rep, unsigned k);

struct WedderburnReport {
  bool ok = true;
  std::vector<std::string> failures;
};

WedderburnReport validate_wedderburn(const FiniteGroup& g, const std::vector<Irrep>& irreps);

class WedderburnData {
 public:
  // Abelian groups, dihedral, quaternion8, symmetric(3), symmetric(4), affine(p).
  static WedderburnData builtin(GroupPtr g);
  // One irrep per Galois orbit, in any order and any orbit member. Validated; throws with the report on failure.
  static WedderburnData from_irreps(GroupPtr g, std::vector<Irrep> irreps);

  const FiniteGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const GroupAlgebraPtr& algebra() const { return algebra_; }
  unsigned conductor() const { return conductor_; }
  std::size_t components() const { return irreps_.size(); }
  const Irrep& irrep(std::size_t i) const { return irreps_.at(i); }
  const GroupAlgebraElement& idempotent(std::size_t i) const { return idempotents_.at(i); }

  // Centre coordinates: component i contributes field_degree(i) coordinates starting at offset(i),
  // with respect to a Z-basis of the ring of integers of its character field.
  std::size_t center_dimension() const { return center_dim_; }
  std::size_t offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t field_degree(std::size_t i) const { return integral_bases_.at(i).size(); }
  const std::vector<CyclotomicNumber>& integral_basis(std::size_t i) const { return integral_bases_.at(i); }
  RatVector field_coords(std::size_t i, const CyclotomicNumber& x) const;  // throws if x is outside the field
  CyclotomicNumber field_value(std::size_t i, const RatVector& coords) const;
  const StructureAlgebra& center_algebra() const { return *center_; }
  // Z-span of the class sums, i.e. the centre of Z[G] in these coordinates.
  const IntegerLattice& center_of_group_ring() const { return group_ring_center_; }

  RatVector tuple_coords(const std::vector<CyclotomicNumber>& values) const;
  std::vector<CyclotomicNumber> coords_tuple(const RatVector& coords) const;
  GroupAlgebraElement central_element(const RatVector& coords) const;
  // For central x: the scalar by which x acts on each component.
  RatVector central_coords(const GroupAlgebraElement& x) const;

 private:
  WedderburnData() = default;
  void finish();
  GroupPtr group_;
  GroupAlgebraPtr algebra_;
  unsigned conductor_ = 1;
  std::vector<Irrep> irreps_;
  std::vector<GroupAlgebraElement> idempotents_;
  std::vector<std::vector<CyclotomicNumber>> integral_bases_;
  std::vector<RatMatrix> basis_matrices_;
  std::vector<std::size_t> offsets_;
  std::size_t center_dim_ = 0;
  std::shared_ptr<StructureAlgebra> center_;
  IntegerLattice group_ring_center_{0};
};

// Value of a central element of the algebra (e.g. a reduced norm), one entry per component.
class CentralTuple {
 public:
  CentralTuple() = default;
  // Checks that each entry is fixed by the stabilizer of its component.
  CentralTuple(const WedderburnData& data, std::vector<CyclotomicNumber> values);

  std::size_t size() const { return values_.size(); }
  const CyclotomicNumber& operator[](std::size_t i) const { return values_.at(i); }
  const std::vector<CyclotomicNumber>& values() const { return values_; }
  friend CentralTuple operator*(const CentralTuple& a, const CentralTuple& b);
  friend bool operator==(const CentralTuple& a, const CentralTuple& b) { return a.values_ == b.values_; }
  std::string to_string() const;

 private:
  std::vector<CyclotomicNumber> values_;
};

// Entrywise image of h under rep, as a (b d) x (b d) matrix.
CycMatrix embed(const AlgebraMatrix& h, const Irrep& rep);
CentralTuple nrd(const AlgebraMatrix& h, const WedderburnData& data);
// Coefficients from X^0 up, monic of degree b * d_i.
std::vector<std::vector<CyclotomicNumber>> reduced_charpoly(const AlgebraMatrix& h, const WedderburnData& data);
AlgebraMatrix generalized_adjoint(const AlgebraMatrix& h, const WedderburnData& data);
// The tuple as an element of Q[G] (sum of value_i e_i).
GroupAlgebraElement tuple_element(const CentralTuple& t, const WedderburnData& data);
// Image under the involution g -> g^-1 extended to the centre: complex conjugation per component.
CentralTuple conjugate_tuple(const CentralTuple& t, const WedderburnData& data);

}  // namespace fittkit
