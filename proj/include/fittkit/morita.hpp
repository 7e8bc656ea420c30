#pragma once

#include <fittkit/commfit.hpp>

#include <optional>
#include <vector>

namespace fittkit {

// One summand of a progenerator: the base ring itself, or an invertible ideal of a quadratic order.
using Summand = std::optional<QuadIdeal>;

// R^a with the summands given; P = R^(n-1) + a for the endomorphism orders.
class Progenerator {
 public:
  static Progenerator free(BaseRing ring, std::size_t rank);
  static Progenerator twisted(const QuadIdeal& twist);  // R + a over the ideal's order

  const BaseRing& ring() const { return ring_; }
  std::size_t rank() const { return summands_.size(); }
  const std::vector<Summand>& summands() const { return summands_; }

 private:
  Progenerator(BaseRing ring, std::vector<Summand> summands) : ring_(std::move(ring)), summands_(std::move(summands)) {}
  BaseRing ring_;
  std::vector<Summand> summands_;
};

// End_R(P) acting on row vectors of P from the right: entry (k, l) lies in I_k^-1 I_l.
class EndOrder {
 public:
  explicit EndOrder(Progenerator p) : p_(std::move(p)) {}
  static EndOrder matrix_ring(BaseRing ring, std::size_t n) { return EndOrder(Progenerator::free(std::move(ring), n)); }
  static EndOrder twisted(const QuadIdeal& twist) { return EndOrder(Progenerator::twisted(twist)); }

  const Progenerator& progenerator() const { return p_; }
  const BaseRing& ring() const { return p_.ring(); }
  std::size_t size() const { return p_.rank(); }
  bool entry_allowed(std::size_t k, std::size_t l, const RingElement& x) const;
  bool contains(const RingMatrix& x) const;
  RingMatrix one() const;
  // Z-basis of the allowed entries at (k, l).
  std::vector<RingElement> entry_basis(std::size_t k, std::size_t l) const;

 private:
  Progenerator p_;
};

// a x b matrix over End(P), stored flattened as (a n) x (b n); the module is Lambda^b / Lambda^a h.
class MoritaPresentation {
 public:
  MoritaPresentation(EndOrder order, RingMatrix flat);
  // scalar s times the identity of Lambda, as a 1 x 1 presentation
  static MoritaPresentation scalar(const EndOrder& order, const RingElement& s);

  const EndOrder& order() const { return order_; }
  const RingMatrix& flat() const { return flat_; }
  std::size_t relations() const { return flat_.rows() / order_.size(); }
  std::size_t generators() const { return flat_.cols() / order_.size(); }
  RingMatrix entry(std::size_t i, std::size_t j) const;

 private:
  EndOrder order_;
  RingMatrix flat_;
};

MoritaPresentation direct_sum(const MoritaPresentation& a, const MoritaPresentation& b);
// Stack b's rows under a's (same generator count).
MoritaPresentation stack_relations(const MoritaPresentation& a, const MoritaPresentation& b);

// R-presentation of the quotient of (I_1 + ... + I_m) by the R-span of the given vectors.
// Each non-free summand contributes its Z-basis as generators.
CommPresentation present_ideal_quotient(const BaseRing& ring, const std::vector<Summand>& summands,
                                        const std::vector<std::vector<RingElement>>& relations);

// P (x)_Lambda coker(h) as an R-module.
CommPresentation transport_presentation(const MoritaPresentation& pres);
CommIdeal morita_fitt(const MoritaPresentation& pres);
// coker(h) viewed as an R-module; matrix rings only.
CommPresentation restriction_presentation(const MoritaPresentation& pres);

// Hom_R(P, R/b) as an R-module.
CommPresentation hom_quotient_presentation(const Progenerator& p, const CommIdeal& b);
// The two-sided ideal Hom(P, bP) = b Lambda, giving Lambda / b Lambda as a 1-generator presentation.
MoritaPresentation ideal_quotient_presentation(const EndOrder& order, const CommIdeal& b);

// a (x)_R coker(h) presented directly.
CommPresentation twist_presentation(const CommPresentation& pres, const QuadIdeal& twist);
bool twist_check(const CommPresentation& pres, const QuadIdeal& twist);

}  // namespace fittkit
