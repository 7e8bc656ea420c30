#include <fittkit/commfit.hpp>

namespace fittkit {

BaseRing BaseRing::integers() { return BaseRing(RingKind::integers, 0, QuadraticOrder(-1)); }

BaseRing BaseRing::localized(Integer p) {
  if (!is_prime(p)) throw MathError("localization needs a prime, got " + to_string(p));
  return BaseRing(RingKind::localized, std::move(p), QuadraticOrder(-1));
}

BaseRing BaseRing::residues(Integer n) {
  if (n < 2) throw MathError("residue ring modulus must be at least 2");
  return BaseRing(RingKind::residues, std::move(n), QuadraticOrder(-1));
}

BaseRing BaseRing::quadratic(QuadraticOrder order) { return BaseRing(RingKind::quadratic, 0, order); }

BaseRing BaseRing::quadratic_residues(QuadraticOrder order, Integer n) {
  if (n < 2) throw MathError("residue ring modulus must be at least 2");
  return BaseRing(RingKind::quadratic_residues, std::move(n), order);
}

const Integer& BaseRing::prime() const {
  if (kind_ != RingKind::localized) throw MathError(name() + " has no distinguished prime");
  return n_;
}

const Integer& BaseRing::modulus() const {
  if (kind_ != RingKind::residues && kind_ != RingKind::quadratic_residues) throw MathError(name() + " is not a residue ring");
  return n_;
}

const QuadraticOrder& BaseRing::order() const {
  if (!is_quadratic()) throw MathError(name() + " is not a quadratic order");
  return order_;
}

const StructureAlgebra& BaseRing::algebra() const {
  static const StructureAlgebra q = StructureAlgebra::rationals();
  return is_quadratic() ? order_.algebra() : q;
}

RatVector BaseRing::coords(const QuadNumber& x) const {
  if (is_quadratic()) return x.coords();
  if (!is_zero(x.root_part())) throw MathError(x.to_string() + " is not in " + name());
  return {x.rational_part()};
}

bool BaseRing::contains(const QuadNumber& x) const {
  switch (kind_) {
    case RingKind::integers:
    case RingKind::residues:
      return is_zero(x.root_part()) && x.rational_part().get_den() == 1;
    case RingKind::localized:
      return is_zero(x.root_part()) && !mpz_divisible_p(x.rational_part().get_den_mpz_t(), n_.get_mpz_t());
    case RingKind::quadratic:
    case RingKind::quadratic_residues:
      return (x.radicand() == order_.radicand() || is_zero(x.root_part())) && x.is_integral();
  }
  return false;
}

std::string BaseRing::name() const {
  switch (kind_) {
    case RingKind::integers:
      return "Z";
    case RingKind::localized:
      return "Z_(" + to_string(n_) + ")";
    case RingKind::residues:
      return "Z/" + to_string(n_);
    case RingKind::quadratic:
      return order_.name();
    case RingKind::quadratic_residues:
      return order_.name() + "/" + to_string(n_);
  }
  return "?";
}

namespace {

// Canonical lattice of the ideal generated by gens.
IntegerLattice ideal_lattice(const BaseRing& ring, const std::vector<RingElement>& gens) {
  std::vector<RatVector> rows;
  const std::size_t n = ring.coordinate_rank();
  auto add = [&](const RingElement& g) {
    rows.push_back(ring.coords(g));
    if (ring.is_quadratic()) rows.push_back(ring.coords(g * ring.order().root()));
  };
  for (const auto& g : gens) {
    if (!ring.contains(g)) throw MathError(g.to_string() + " is not in " + ring.name());
    add(g);
  }
  if (ring.kind() == RingKind::residues || ring.kind() == RingKind::quadratic_residues)
    add(ring.element(Rational(ring.modulus())));
  IntegerLattice l = IntegerLattice::from_generators(n, rows);
  if (ring.kind() == RingKind::localized) return LocalLattice(ring.prime(), l).lattice();
  return l;
}

bool member(const BaseRing& ring, const IntegerLattice& l, const RatVector& x) {
  if (ring.kind() == RingKind::localized) return lattice_membership(x, LocalLattice(ring.prime(), l));
  return lattice_membership(x, l);
}

std::vector<RingElement> basis_elements(const BaseRing& ring, const IntegerLattice& l) {
  std::vector<RingElement> out;
  for (std::size_t i = 0; i < l.rank(); ++i) {
    RatVector g = l.generator(i);
    out.push_back(ring.element(g[0], g.size() > 1 ? g[1] : Rational(0)));
  }
  return out;
}

void require_same_ring(const BaseRing& a, const BaseRing& b) {
  if (!(a == b)) throw MathError("ideals over different rings: " + a.name() + " and " + b.name());
}

}  // namespace

CommIdeal CommIdeal::generated_by(const BaseRing& ring, const std::vector<RingElement>& gens) {
  IntegerLattice l = ideal_lattice(ring, gens);
  return CommIdeal(ring, l, basis_elements(ring, l));
}

bool CommIdeal::contains(const RingElement& x) const {
  if (!ring_.contains(x)) return false;
  return member(ring_, lattice_, ring_.coords(x));
}

bool CommIdeal::contains(const CommIdeal& other) const {
  require_same_ring(ring_, other.ring_);
  for (std::size_t i = 0; i < other.lattice_.rank(); ++i)
    if (!member(ring_, lattice_, other.lattice_.generator(i))) return false;
  return true;
}

bool CommIdeal::is_zero() const { return *this == zero(ring_); }

bool CommIdeal::is_unit() const { return contains(ring_.element(1)); }

std::string CommIdeal::to_string() const {
  if (is_zero()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

CommIdeal operator*(const CommIdeal& a, const CommIdeal& b) {
  require_same_ring(a.ring_, b.ring_);
  std::vector<RingElement> g;
  for (const auto& x : a.gens_)
    for (const auto& y : b.gens_) g.push_back(x * y);
  return CommIdeal::generated_by(a.ring_, g);
}

CommIdeal operator+(const CommIdeal& a, const CommIdeal& b) {
  require_same_ring(a.ring_, b.ring_);
  std::vector<RingElement> g = a.gens_;
  g.insert(g.end(), b.gens_.begin(), b.gens_.end());
  return CommIdeal::generated_by(a.ring_, g);
}

CommIdeal CommIdeal::power(unsigned k) const {
  CommIdeal out = unit(ring_);
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

CommPresentation::CommPresentation(BaseRing ring, RingMatrix h) : ring_(std::move(ring)), h_(std::move(h)) {
  if (h_.rows() == 0 || h_.cols() == 0) throw MathError("a presentation needs at least one relation and one generator");
  for (std::size_t i = 0; i < h_.rows(); ++i)
    for (std::size_t j = 0; j < h_.cols(); ++j)
      if (!ring_.contains(h_(i, j)))
        throw MathError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + h_(i, j).to_string() +
                        " is not in " + ring_.name());
  if (ring_.is_quadratic())
    for (std::size_t i = 0; i < h_.rows(); ++i)
      for (std::size_t j = 0; j < h_.cols(); ++j)
        h_(i, j) = ring_.element(h_(i, j).rational_part(), h_(i, j).root_part());
}

CommPresentation CommPresentation::over_integers(const IntMatrix& h) { return over(BaseRing::integers(), to_rational(h)); }

CommPresentation CommPresentation::over(const BaseRing& ring, const RatMatrix& h) {
  RingMatrix m = h.rows() == 0 ? RingMatrix::with_cols(h.cols()) : RingMatrix(h.rows(), h.cols(), ring.element(0));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) m(i, j) = ring.element(h(i, j));
  return CommPresentation(ring, m);
}

RatMatrix CommPresentation::rational_matrix() const {
  if (ring_.is_quadratic()) throw MathError("presentation over " + ring_.name() + " has no rational matrix");
  RatMatrix m = rat_zero_matrix(h_.rows(), h_.cols());
  for (std::size_t i = 0; i < h_.rows(); ++i)
    for (std::size_t j = 0; j < h_.cols(); ++j) m(i, j) = h_(i, j).rational_part();
  return m;
}

namespace {

// Rows scaled by units of the ring so that every entry is an integer.
IntMatrix integral_rows(const CommPresentation& pres) {
  RatMatrix m = pres.rational_matrix();
  IntMatrix out = int_zero_matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer d = common_denominator(m.row(i));
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j) * d).get_num();
  }
  return out;
}

// Pivots on unit entries: [[u, r], [c, h']] is equivalent to [[1, 0], [0, h' - c u^-1 r]], and the
// leading 1 can be dropped without changing any Fitting ideal. Zero rows are dropped too.
RingMatrix eliminate_units(RingMatrix m, std::size_t& removed) {
  removed = 0;
  for (;;) {
    std::size_t pr = m.rows(), pc = m.cols();
    for (std::size_t i = 0; i < m.rows() && pr == m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j).is_integral() && m(i, j).norm() == 1) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m.rows()) break;
    const RingElement inv = m(pr, pc).inverse();
    RingMatrix next = RingMatrix::with_cols(m.cols() - 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == pr) continue;
      const RingElement factor = m(i, pc) * inv;
      std::vector<RingElement> row;
      bool nonzero = false;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == pc) continue;
        row.push_back(m(i, j) - factor * m(pr, j));
        nonzero = nonzero || !is_zero(row.back());
      }
      if (nonzero) next.append_row(row);
    }
    m = std::move(next);
    ++removed;
  }
  return m;
}

}  // namespace

CommIdeal higher_fitting(const CommPresentation& pres, std::size_t i, FittMethod method) {
  const BaseRing& ring = pres.ring();
  const std::size_t b = pres.generators();
  if (i >= b) return CommIdeal::unit(ring);
  const std::size_t k = b - i;
  if (pres.relations() < k) return CommIdeal::zero(ring);
  if (method == FittMethod::automatic && !ring.is_quadratic()) {
    // over a PID the k x k minors generate d_1 ... d_k
    SnfResult s = snf(integral_rows(pres));
    Integer prod = 1;
    for (std::size_t j = 0; j < k; ++j) prod *= s.diag[j];
    return CommIdeal::generated_by(ring, {ring.element(Rational(prod))});
  }
  if (method == FittMethod::automatic && ring.kind() == RingKind::quadratic) {
    std::size_t removed = 0;
    RingMatrix reduced = eliminate_units(pres.matrix(), removed);
    if (removed >= k) return CommIdeal::unit(ring);
    if (reduced.rows() < k - removed) return CommIdeal::zero(ring);
    return CommIdeal::generated_by(ring, minors_enum(reduced, k - removed, ring.element(1)));
  }
  return CommIdeal::generated_by(ring, minors_enum(pres.matrix(), k, ring.element(1)));
}

CommIdeal fitting_ideal(const CommPresentation& pres, FittMethod method) { return higher_fitting(pres, 0, method); }

CommIdeal annihilator_finite(const CommPresentation& pres) {
  const BaseRing& ring = pres.ring();
  if (ring.kind() != RingKind::integers && ring.kind() != RingKind::localized)
    throw MathError("annihilator_finite works over Z and Z_(p), not " + ring.name());
  const std::size_t b = pres.generators();
  if (pres.relations() < b) throw MathError("cokernel is infinite: fewer relations than generators");
  SnfResult s = snf(integral_rows(pres));
  for (std::size_t j = 0; j < b; ++j)
    if (is_zero(s.diag[j])) throw MathError("cokernel is infinite");
  return CommIdeal::generated_by(ring, {ring.element(Rational(s.diag[b - 1]))});
}

BaseRing map_ring(const BaseRing& ring, const RingMap& hom) {
  switch (hom.kind) {
    case RingMap::Kind::reduce:
      if (ring.kind() == RingKind::integers) return BaseRing::residues(hom.n);
      if (ring.kind() == RingKind::quadratic) return BaseRing::quadratic_residues(ring.order(), hom.n);
      if (ring.kind() == RingKind::residues && mpz_divisible_p(ring.modulus().get_mpz_t(), hom.n.get_mpz_t()))
        return BaseRing::residues(hom.n);
      if (ring.kind() == RingKind::quadratic_residues && mpz_divisible_p(ring.modulus().get_mpz_t(), hom.n.get_mpz_t()))
        return BaseRing::quadratic_residues(ring.order(), hom.n);
      break;
    case RingMap::Kind::localize:
      if (ring.kind() == RingKind::integers) return BaseRing::localized(hom.n);
      if (ring.kind() == RingKind::localized && ring.prime() == hom.n) return ring;
      break;
  }
  throw MathError("unsupported ring map out of " + ring.name());
}

CommPresentation map_entries(const CommPresentation& pres, const RingMap& hom) {
  return CommPresentation(map_ring(pres.ring(), hom), pres.matrix());
}

CommIdeal map_ideal(const CommIdeal& ideal, const RingMap& hom) {
  return CommIdeal::generated_by(map_ring(ideal.ring(), hom), ideal.generators());
}

CommPresentation direct_sum(const CommPresentation& a, const CommPresentation& b) {
  if (!(a.ring() == b.ring())) throw MathError("direct sum of presentations over different rings");
  const BaseRing& ring = a.ring();
  RingMatrix m(a.relations() + b.relations(), a.generators() + b.generators(), ring.element(0));
  for (std::size_t i = 0; i < a.relations(); ++i)
    for (std::size_t j = 0; j < a.generators(); ++j) m(i, j) = a.matrix()(i, j);
  for (std::size_t i = 0; i < b.relations(); ++i)
    for (std::size_t j = 0; j < b.generators(); ++j) m(a.relations() + i, a.generators() + j) = b.matrix()(i, j);
  return CommPresentation(ring, m);
}

std::vector<Integer> abelian_invariants(const IntMatrix& h) {
  std::vector<Integer> out;
  if (h.rows() == 0) return std::vector<Integer>(h.cols(), Integer(0));
  SnfResult s = snf(h);
  for (const auto& d : s.diag)
    if (d != 1) out.push_back(d);
  for (std::size_t j = s.diag.size(); j < h.cols(); ++j) out.push_back(0);
  return out;
}

}  // namespace fittkit
