#pragma once

#include <fittkit/grpalg.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fittkit {

enum class OrderKind { group_ring, matrix_ring, congruence_hereditary };

// A Z_(p)-order with an explicit Z-basis inside a semisimple Q-algebra, together with
// the coordinates of its centre.
class Order {
 public:
  static std::shared_ptr<const Order> group_ring(std::shared_ptr<const WedderburnData> data, Integer p);
  static std::shared_ptr<const Order> group_ring(GroupPtr g, Integer p);
  static std::shared_ptr<const Order> matrix_ring(std::size_t n, Integer p);
  // {[[a, b], [c, d]] : p | b} inside M_2(Z_(p))
  static std::shared_ptr<const Order> congruence_hereditary(Integer p);

  OrderKind kind() const { return kind_; }
  const Integer& prime() const { return p_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t dimension() const { return algebra_->dimension(); }
  std::string name() const;
  const WedderburnData* wedderburn() const { return data_.get(); }
  // Global representative of the order; its Z-basis is used for sampling and spans.
  const IntegerLattice& lattice() const { return lattice_; }
  AlgebraElement basis_element(std::size_t k) const;
  bool contains(const AlgebraElement& x) const;
  AlgebraElement element(const RatVector& coeffs) const;  // throws unless the element lies in the order

  std::size_t center_dimension() const { return center_->dimension(); }
  const StructureAlgebra& center_algebra() const { return *center_; }
  const std::shared_ptr<const StructureAlgebra>& center_algebra_ptr() const { return center_; }
  const LocalLattice& center() const { return center_order_; }      // centre of the order
  const LocalLattice& maximal_center() const { return center_max_; }  // centre of a maximal order
  AlgebraElement central_element(const RatVector& coords) const;
  RatVector central_coords(const AlgebraElement& x) const;  // x must be central

  RatVector nrd(const AlgebraMatrix& h) const;  // centre coordinates
  AlgebraMatrix adjoint(const AlgebraMatrix& h) const;
  std::string describe_center(const RatVector& coords) const;

 private:
  Order(OrderKind kind, Integer p);
  OrderKind kind_;
  Integer p_;
  AlgebraPtr algebra_;
  std::shared_ptr<const WedderburnData> data_;
  std::size_t matrix_size_ = 0;
  IntegerLattice lattice_;
  LocalLattice local_;
  std::shared_ptr<const StructureAlgebra> center_;
  LocalLattice center_order_;
  LocalLattice center_max_;
};

using OrderPtr = std::shared_ptr<const Order>;

// Lambda^a -> Lambda^b, x -> x * h; the module presented is Lambda^b / (row space).
class PresentationNC {
 public:
  PresentationNC(OrderPtr order, AlgebraMatrix h);
  static PresentationNC identity(OrderPtr order, std::size_t b);
  // rows may be empty; b fixes the shape then
  static PresentationNC from_rows(OrderPtr order, const std::vector<std::vector<AlgebraElement>>& rows, std::size_t b);

  const OrderPtr& order() const { return order_; }
  const AlgebraMatrix& matrix() const { return h_; }
  std::size_t relations() const { return h_.rows(); }
  std::size_t generators() const { return h_.cols(); }

 private:
  OrderPtr order_;
  AlgebraMatrix h_;
};

struct FittingInvariantNC {
  std::vector<RatVector> nrd_generators;  // centre coordinates
  LocalLattice lattice;
  bool is_zero = false;
  bool max_certified = false;
  bool integrality_applied = false;
};

// integrality: a certified integrality ring to multiply by.
FittingInvariantNC fitt_presentation(const PresentationNC& pres, const LocalLattice* integrality = nullptr);

PresentationNC pad_presentation(const PresentationNC& pres, std::size_t b);  // block diagonal with an identity
PresentationNC join_presentations(const PresentationNC& first, const PresentationNC& second);
PresentationNC direct_sum(const PresentationNC& first, const PresentationNC& second);
// Presentation of Lambda^b / K, K the left submodule generated by the rows.
PresentationNC presentation_of_submodule(const OrderPtr& order, const std::vector<std::vector<AlgebraElement>>& rows,
                                         std::size_t b);
// Z-lattice (global) of the left submodule generated by the rows, inside Q^(b * dim).
IntegerLattice row_module_lattice(const Order& order, const std::vector<std::vector<AlgebraElement>>& rows, std::size_t b);

struct CenterCoords {
  std::shared_ptr<const StructureAlgebra> algebra;
  LocalLattice order_center;
  LocalLattice maximal;
};
CenterCoords maximal_center(const Order& order);

struct SamplerOptions {
  std::size_t max_size = 2;
  long coeff_bound = 2;
  std::size_t samples = 48;  // random matrices per size
  std::uint64_t seed = 1;
};

// Fixed candidates first, then seeded random matrices; size-major, lexicographic within a size.
std::vector<AlgebraMatrix> sample_matrices(const Order& order, const SamplerOptions& options);

struct IntegralityBounds {
  LocalLattice lower;
  bool certified = false;
  std::size_t matrices_used = 0;
};
IntegralityBounds integrality_ring_bounds(const Order& order, const SamplerOptions& options);

struct DenominatorBounds {
  LocalLattice lower;
  LocalLattice upper;
  bool certified = false;
  std::size_t matrices_used = 0;
};
DenominatorBounds denominator_bounds(const Order& order, const SamplerOptions& options);

struct ConductorComponent {
  Rational factor;          // |G| / chi(1)
  LocalLattice trace_dual;  // in the component's field coordinates
  LocalLattice lattice;     // factor * trace_dual
};
struct ConductorData {
  std::vector<ConductorComponent> components;
  LocalLattice aggregate;  // in centre coordinates
};
ConductorData central_conductor(const Order& order);
LocalLattice conductor_variant(const Order& order);

PresentationNC dual_presentation(const PresentationNC& pres);
// Throws if the cokernel is infinite.
bool verify_annihilation(const PresentationNC& pres, const RatVector& central_coords);

struct AdditivityReport {
  LocalLattice product;
  LocalLattice direct_sum;
  bool equal = false;
};
// direct_sum_presentation: another presentation of the direct sum of the two modules; when absent the
// block-diagonal presentation is used.
AdditivityReport additivity_compare(const PresentationNC& first, const PresentationNC& second,
                                    const std::optional<PresentationNC>& direct_sum_presentation = std::nullopt);

// Image of a centre lattice under the involution induced by g -> g^-1.
LocalLattice sharp_lattice(const Order& order, const LocalLattice& l);

// For a finite module top / bottom (Lambda-stable lattices in Q^(b * dim)), a presentation of it.
PresentationNC presentation_of_quotient(const OrderPtr& order, const IntegerLattice& top, const IntegerLattice& bottom,
                                        std::size_t b);

// Chain 0 -> M -> C -> C' -> M' -> 0 with C = coker(q), C' = coker(q'), the middle map x -> x f.
// Commutative group rings only.
struct FourTermReport {
  LocalLattice dual_kernel;  // Fitt of the dual of M, twisted back by sharp
  LocalLattice cokernel;     // Fitt of M'
  LocalLattice lhs;          // dual_kernel * Fitt(C')
  LocalLattice rhs;          // cokernel * Fitt(C)
  bool equal = false;
};
FourTermReport four_term_check(const OrderPtr& order, const AlgebraMatrix& q, const AlgebraMatrix& q_prime,
                               const AlgebraMatrix& f);

}  // namespace fittkit
