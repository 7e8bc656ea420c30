#pragma once

#include <fittkit/exact.hpp>

#include <memory>
#include <string>
#include <vector>

namespace fittkit {

enum class GroupFamily { cyclic, dihedral, symmetric, quaternion, affine, table };

// A finite group stored by its multiplication table.
class FiniteGroup {
 public:
  static FiniteGroup cyclic(unsigned n);
  static FiniteGroup dihedral(unsigned order);  // order 2n: sigma^i tau^j has index i + n j
  static FiniteGroup symmetric(unsigned n);     // n <= 4, permutations in lexicographic order
  static FiniteGroup quaternion8();             // i^a j^b has index a + 4 b
  static FiniteGroup affine(unsigned q);        // q prime or 2^n; x -> a x + b has index b + q (a - 1)
  // "cyclic(4)", "C4", "dihedral(6)", "D6", "S3", "symmetric(4)", "Q8", "quaternion8", "affine(5)", "Aff(5)"
  static FiniteGroup builtin(const std::string& descriptor);
  // Rows are left factors. Throws unless the table is a group law.
  static FiniteGroup from_table(std::string name, const std::vector<std::vector<std::size_t>>& table,
                                std::vector<std::size_t> generators = {});

  std::size_t order() const { return n_; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  unsigned element_order(std::size_t a) const { return orders_[a]; }
  const std::vector<std::size_t>& generators() const { return generators_; }
  unsigned exponent() const { return exponent_; }
  const std::string& name() const { return name_; }
  GroupFamily family() const { return family_; }
  unsigned family_parameter() const { return parameter_; }
  bool is_abelian() const;
  const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }
  std::size_t class_index(std::size_t x) const { return class_index_[x]; }

 private:
  FiniteGroup() = default;
  static FiniteGroup build(std::string name, GroupFamily family, unsigned parameter, std::size_t n,
                           std::vector<std::size_t> table, std::vector<std::size_t> generators);
  std::string name_;
  GroupFamily family_ = GroupFamily::table;
  unsigned parameter_ = 0;
  std::size_t n_ = 0;
  std::vector<std::size_t> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
  std::vector<unsigned> orders_;
  std::vector<std::size_t> generators_;
  unsigned exponent_ = 1;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_index_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// GF(q) for q prime or q = 2^n with n <= 4; elements are 0..q-1 (bit patterns of polynomials over GF(2)).
class FiniteField {
 public:
  explicit FiniteField(unsigned q);
  unsigned size() const { return q_; }
  unsigned add(unsigned x, unsigned y) const;
  unsigned mul(unsigned x, unsigned y) const;
  unsigned primitive_element() const;

 private:
  unsigned q_;
  unsigned modulus_ = 0;  // reduction polynomial in characteristic 2, 0 for prime fields
};

// Image of each field point under the affine map with index x in FiniteGroup::affine(q).
std::vector<unsigned> affine_permutation(const FiniteGroup& g, std::size_t x);

// Sorted element indices.
std::vector<std::size_t> commutator_subgroup(const FiniteGroup& g);
// Classes sorted by their smallest element; each class sorted.
std::vector<std::vector<std::size_t>> conjugacy_classes(const FiniteGroup& g);
std::size_t class_of(const FiniteGroup& g, std::size_t x);
// Exhaustive search over images of the generators of a.
bool isomorphic(const FiniteGroup& a, const FiniteGroup& b);
// Permutation of {0..n-1} for an element of a symmetric group builtin.
std::vector<unsigned> permutation_of(const FiniteGroup& g, std::size_t x);

}  // namespace fittkit
