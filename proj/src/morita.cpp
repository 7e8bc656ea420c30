#include <fittkit/morita.hpp>

namespace fittkit {

namespace {

QuadIdeal as_ideal(const BaseRing& ring, const Summand& s) { return s ? *s : QuadIdeal::unit(ring.order()); }

// Generators of a summand over R: 1 for R itself, the Z-basis pair otherwise.
std::vector<RingElement> summand_generators(const BaseRing& ring, const Summand& s) {
  if (!s) return {ring.element(1)};
  return s->generator_pair();
}

// Z-coordinates of x in the Z-basis of the ideal.
std::vector<Integer> ideal_coords(const QuadIdeal& ideal, const RingElement& x) {
  const auto basis = ideal.generator_pair();
  RatMatrix m = rat_zero_matrix(basis.size(), 2);
  for (std::size_t i = 0; i < basis.size(); ++i) m.set_row(i, basis[i].coords());
  const auto c = solve_left(m, x.coords());
  if (!c) throw MathError(x.to_string() + " is not in " + ideal.to_string());
  std::vector<Integer> out;
  for (const auto& v : *c) {
    if (v.get_den() != 1) throw MathError(x.to_string() + " is not in " + ideal.to_string());
    out.push_back(v.get_num());
  }
  return out;
}

// R-relations among the Z-basis pair of an ideal.
std::vector<std::vector<RingElement>> ideal_syzygies(const BaseRing& ring, const QuadIdeal& ideal) {
  const auto gens = ideal.generator_pair();
  const RingElement root = ring.order().root();
  RatMatrix images = rat_zero_matrix(2 * gens.size(), 2);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    images.set_row(2 * i, gens[i].coords());
    images.set_row(2 * i + 1, (gens[i] * root).coords());
  }
  const Integer d = common_denominator(images);
  IntMatrix scaled = int_zero_matrix(images.rows(), 2);
  for (std::size_t i = 0; i < images.rows(); ++i)
    for (std::size_t j = 0; j < 2; ++j) scaled(i, j) = Rational(images(i, j) * d).get_num();
  const IntMatrix kernel = integer_left_kernel(scaled);
  std::vector<std::vector<RingElement>> out;
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    std::vector<RingElement> rel;
    for (std::size_t i = 0; i < gens.size(); ++i)
      rel.push_back(ring.element(Rational(kernel(r, 2 * i)), Rational(kernel(r, 2 * i + 1))));
    out.push_back(std::move(rel));
  }
  return out;
}

std::vector<RingElement> ideal_generators(const CommIdeal& b) {
  const BaseRing& ring = b.ring();
  if (ring.kind() != RingKind::integers && ring.kind() != RingKind::quadratic)
    throw MathError("ideal quotients need Z or a quadratic order, got " + ring.name());
  std::vector<RingElement> out;
  for (std::size_t k = 0; k < b.lattice().rank(); ++k) {
    const RatVector g = b.lattice().generator(k);
    out.push_back(ring.is_quadratic() ? ring.element(g[0], g[1]) : ring.element(g[0]));
  }
  return out;
}

std::vector<Summand> repeat(const std::vector<Summand>& s, std::size_t times) {
  std::vector<Summand> out;
  for (std::size_t t = 0; t < times; ++t) out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace

Progenerator Progenerator::free(BaseRing ring, std::size_t rank) {
  if (rank == 0) throw MathError("progenerator of rank zero");
  return Progenerator(std::move(ring), std::vector<Summand>(rank));
}

Progenerator Progenerator::twisted(const QuadIdeal& twist) {
  return Progenerator(BaseRing::quadratic(twist.order()), {std::nullopt, twist});
}

bool EndOrder::entry_allowed(std::size_t k, std::size_t l, const RingElement& x) const {
  const auto& s = p_.summands();
  if (!s.at(k) && !s.at(l)) return ring().contains(x);
  return (as_ideal(ring(), s[k]).inverse() * as_ideal(ring(), s[l])).contains(x);
}

bool EndOrder::contains(const RingMatrix& x) const {
  if (x.rows() != size() || x.cols() != size()) return false;
  for (std::size_t k = 0; k < size(); ++k)
    for (std::size_t l = 0; l < size(); ++l)
      if (!entry_allowed(k, l, x(k, l))) return false;
  return true;
}

RingMatrix EndOrder::one() const { return RingMatrix::identity(size(), ring().element(0), ring().element(1)); }

std::vector<RingElement> EndOrder::entry_basis(std::size_t k, std::size_t l) const {
  const auto& s = p_.summands();
  if (!s.at(k) && !s.at(l)) {
    if (!ring().is_quadratic()) return {ring().element(1)};
    return {ring().element(1), ring().order().root()};
  }
  return (as_ideal(ring(), s[k]).inverse() * as_ideal(ring(), s[l])).generator_pair();
}

MoritaPresentation::MoritaPresentation(EndOrder order, RingMatrix flat) : order_(std::move(order)), flat_(std::move(flat)) {
  const std::size_t n = order_.size();
  if (flat_.rows() % n != 0 || flat_.cols() % n != 0)
    throw MathError("presentation shape is not a multiple of the progenerator rank");
  for (std::size_t i = 0; i < flat_.rows(); ++i)
    for (std::size_t j = 0; j < flat_.cols(); ++j)
      if (!order_.entry_allowed(i % n, j % n, flat_(i, j)))
        throw MathError("entry " + flat_(i, j).to_string() + " at (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is not in the endomorphism order");
}

MoritaPresentation MoritaPresentation::scalar(const EndOrder& order, const RingElement& s) {
  RingMatrix m = order.one();
  for (std::size_t k = 0; k < order.size(); ++k) m(k, k) = s;
  return MoritaPresentation(order, m);
}

RingMatrix MoritaPresentation::entry(std::size_t i, std::size_t j) const {
  const std::size_t n = order_.size();
  std::vector<std::size_t> rows, cols;
  for (std::size_t k = 0; k < n; ++k) {
    rows.push_back(i * n + k);
    cols.push_back(j * n + k);
  }
  return submatrix(flat_, rows, cols);
}

MoritaPresentation direct_sum(const MoritaPresentation& a, const MoritaPresentation& b) {
  const auto zero = a.order().ring().element(0);
  RingMatrix m(a.flat().rows() + b.flat().rows(), a.flat().cols() + b.flat().cols(), zero);
  for (std::size_t i = 0; i < a.flat().rows(); ++i)
    for (std::size_t j = 0; j < a.flat().cols(); ++j) m(i, j) = a.flat()(i, j);
  for (std::size_t i = 0; i < b.flat().rows(); ++i)
    for (std::size_t j = 0; j < b.flat().cols(); ++j) m(a.flat().rows() + i, a.flat().cols() + j) = b.flat()(i, j);
  return MoritaPresentation(a.order(), m);
}

MoritaPresentation stack_relations(const MoritaPresentation& a, const MoritaPresentation& b) {
  if (a.generators() != b.generators()) throw MathError("stacked presentations need the same generators");
  return MoritaPresentation(a.order(), vstack(a.flat(), b.flat()));
}

CommPresentation present_ideal_quotient(const BaseRing& ring, const std::vector<Summand>& summands,
                                        const std::vector<std::vector<RingElement>>& relations) {
  std::vector<std::size_t> start;
  std::size_t cols = 0;
  for (const auto& s : summands) {
    start.push_back(cols);
    cols += s ? 2 : 1;
  }
  RingMatrix h = RingMatrix::with_cols(cols);
  const auto zero = ring.element(0);
  for (std::size_t k = 0; k < summands.size(); ++k) {
    if (!summands[k]) continue;
    for (const auto& syz : ideal_syzygies(ring, *summands[k])) {
      std::vector<RingElement> row(cols, zero);
      for (std::size_t i = 0; i < syz.size(); ++i) row[start[k] + i] = syz[i];
      h.append_row(row);
    }
  }
  for (const auto& rel : relations) {
    if (rel.size() != summands.size()) throw MathError("relation has the wrong number of components");
    std::vector<RingElement> row(cols, zero);
    for (std::size_t k = 0; k < summands.size(); ++k) {
      if (!summands[k]) {
        if (!ring.contains(rel[k])) throw MathError(rel[k].to_string() + " is not in " + ring.name());
        row[start[k]] = rel[k];
        continue;
      }
      const auto c = ideal_coords(*summands[k], rel[k]);
      for (std::size_t i = 0; i < c.size(); ++i) row[start[k] + i] = ring.element(Rational(c[i]));
    }
    h.append_row(row);
  }
  return CommPresentation(ring, h);
}

CommPresentation transport_presentation(const MoritaPresentation& pres) {
  const EndOrder& o = pres.order();
  const BaseRing& ring = o.ring();
  const std::size_t n = o.size(), a = pres.relations(), b = pres.generators();
  const auto& summands = o.progenerator().summands();
  std::vector<std::vector<RingElement>> relations;
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& gamma : summand_generators(ring, summands[k])) {
        // (gamma e_k) * row i
        std::vector<RingElement> rel;
        for (std::size_t j = 0; j < b; ++j)
          for (std::size_t l = 0; l < n; ++l) rel.push_back(gamma * pres.flat()(i * n + k, j * n + l));
        relations.push_back(std::move(rel));
      }
  return present_ideal_quotient(ring, repeat(summands, b), relations);
}

CommIdeal morita_fitt(const MoritaPresentation& pres) { return fitting_ideal(transport_presentation(pres)); }

CommPresentation restriction_presentation(const MoritaPresentation& pres) {
  const EndOrder& o = pres.order();
  for (const auto& s : o.progenerator().summands())
    if (s) throw MathError("restriction to the base ring needs a matrix ring");
  const BaseRing& ring = o.ring();
  const std::size_t n = o.size(), a = pres.relations(), b = pres.generators();
  const auto zero = ring.element(0);
  RingMatrix h = RingMatrix::with_cols(b * n * n);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        RingMatrix unit(n, n, zero);
        unit(k, l) = ring.element(1);
        std::vector<RingElement> row;
        for (std::size_t j = 0; j < b; ++j) {
          const RingMatrix x = unit * pres.entry(i, j);
          for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) row.push_back(x(r, c));
        }
        h.append_row(row);
      }
  return CommPresentation(ring, h);
}

CommPresentation hom_quotient_presentation(const Progenerator& p, const CommIdeal& b) {
  const BaseRing& ring = p.ring();
  if (!(b.ring() == ring)) throw MathError("ideal and progenerator live over different rings");
  // Hom(I, R/b) = I^-1 / b I^-1
  std::vector<Summand> duals;
  for (const auto& s : p.summands()) duals.push_back(s ? Summand(s->inverse()) : Summand());
  std::vector<std::vector<RingElement>> relations;
  for (std::size_t k = 0; k < duals.size(); ++k)
    for (const auto& beta : ideal_generators(b))
      for (const auto& gamma : summand_generators(ring, duals[k])) {
        std::vector<RingElement> rel(duals.size(), ring.element(0));
        rel[k] = beta * gamma;
        relations.push_back(std::move(rel));
      }
  return present_ideal_quotient(ring, duals, relations);
}

MoritaPresentation ideal_quotient_presentation(const EndOrder& order, const CommIdeal& b) {
  if (!(b.ring() == order.ring())) throw MathError("ideal and order live over different rings");
  RingMatrix flat = RingMatrix::with_cols(order.size());
  for (const auto& beta : ideal_generators(b)) {
    const RingMatrix block = MoritaPresentation::scalar(order, beta).flat();
    for (std::size_t r = 0; r < block.rows(); ++r) flat.append_row(block.row(r));
  }
  return MoritaPresentation(order, flat);
}

CommPresentation twist_presentation(const CommPresentation& pres, const QuadIdeal& twist) {
  const BaseRing& ring = pres.ring();
  if (ring.kind() != RingKind::quadratic || !(ring.order() == twist.order()))
    throw MathError("twisting needs a presentation over the ideal's order");
  std::vector<std::vector<RingElement>> relations;
  for (std::size_t i = 0; i < pres.relations(); ++i)
    for (const auto& alpha : twist.generator_pair()) {
      std::vector<RingElement> rel;
      for (std::size_t j = 0; j < pres.generators(); ++j) rel.push_back(alpha * pres.matrix()(i, j));
      relations.push_back(std::move(rel));
    }
  return present_ideal_quotient(ring, std::vector<Summand>(pres.generators(), twist), relations);
}

bool twist_check(const CommPresentation& pres, const QuadIdeal& twist) {
  return fitting_ideal(twist_presentation(pres, twist)) == fitting_ideal(pres);
}

}  // namespace fittkit
