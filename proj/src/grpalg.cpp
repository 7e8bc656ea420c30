#include <fittkit/grpalg.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>

namespace fittkit {

namespace {

CyclotomicNumber cyc(unsigned m, const Rational& c) { return CyclotomicNumber(m, c); }

CyclotomicNumber lift_to(unsigned m, const CyclotomicNumber& x) {
  if (x.conductor() == m) return x;
  if (m % x.conductor() != 0) throw MathError("entry of conductor " + std::to_string(x.conductor()) + " in a field of conductor " + std::to_string(m));
  return cyc(m, 0) + x;
}

CyclotomicNumber complex_conjugate(const CyclotomicNumber& x) {
  const unsigned m = x.conductor();
  return m <= 2 ? x : galois_apply(x, GaloisElement(m, static_cast<long>(m) - 1));
}

CycMatrix cyc_identity(unsigned m, std::size_t d) { return CycMatrix::identity(d, cyc(m, 0), cyc(m, 1)); }

CyclotomicNumber matrix_trace(const CycMatrix& a, unsigned m) {
  CyclotomicNumber t = cyc(m, 0);
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

using Character = std::vector<CyclotomicNumber>;

Character conjugate_character(const Character& chi, unsigned m, unsigned k) {
  Character out;
  out.reserve(chi.size());
  for (const auto& c : chi) out.push_back(galois_apply(c, GaloisElement(m, k)));
  return out;
}

// Lexicographic comparison of character vectors.
int compare_characters(const Character& a, const Character& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    auto c = compare(a[i], b[i]);
    if (c < 0) return -1;
    if (c > 0) return 1;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

std::vector<unsigned> stabilizer_of(const Character& chi, unsigned m) {
  std::vector<unsigned> out;
  for (unsigned k : CyclotomicField::get(m).units())
    if (conjugate_character(chi, m, k) == chi) out.push_back(k);
  return out;
}

Character character_of(const FiniteGroup& g, const std::vector<CycMatrix>& images, unsigned m) {
  Character chi;
  for (const auto& cls : g.classes()) chi.push_back(matrix_trace(images.at(cls.front()), m));
  return chi;
}

void fill_character(const FiniteGroup& g, Irrep& rep) {
  rep.character = character_of(g, rep.images, rep.conductor);
  rep.stabilizer = stabilizer_of(rep.character, rep.conductor);
}

// The orbit member with the lexicographically largest character.
Irrep orbit_representative(const Irrep& rep) {
  unsigned best = 1;
  Character best_chi = rep.character;
  for (unsigned k : CyclotomicField::get(rep.conductor).units()) {
    Character c = conjugate_character(rep.character, rep.conductor, k);
    if (compare_characters(c, best_chi) > 0) {
      best = k;
      best_chi = std::move(c);
    }
  }
  return best == 1 ? rep : galois_conjugate(rep, best);
}

bool same_orbit(const Irrep& a, const Irrep& b) {
  if (a.dimension != b.dimension || a.conductor != b.conductor) return false;
  for (unsigned k : CyclotomicField::get(a.conductor).units())
    if (conjugate_character(a.character, a.conductor, k) == b.character) return true;
  return false;
}

// ---- builtin representations ----

// Homomorphisms G -> mu_m by brute force over generator images.
std::vector<Irrep> linear_characters(const FiniteGroup& g, unsigned m) {
  const auto& gens = g.generators();
  const std::size_t n = g.order();
  std::vector<Irrep> out;
  std::vector<unsigned> e(gens.size(), 0);
  while (true) {
    std::vector<long> exps(n, -1);
    exps[g.identity()] = 0;
    std::deque<std::size_t> queue{g.identity()};
    bool ok = true;
    while (!queue.empty() && ok) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < gens.size(); ++s) {
        std::size_t y = g.mul(x, gens[s]);
        long v = (exps[x] + e[s]) % m;
        if (exps[y] < 0) {
          exps[y] = v;
          queue.push_back(y);
        } else if (exps[y] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      Irrep rep;
      rep.dimension = 1;
      rep.conductor = m;
      for (std::size_t x = 0; x < n; ++x) rep.images.push_back(CycMatrix(1, 1, CyclotomicNumber::zeta(m, exps[x])));
      fill_character(g, rep);
      out.push_back(std::move(rep));
    }
    std::size_t pos = 0;
    while (pos < e.size() && ++e[pos] == m) e[pos++] = 0;
    if (pos == e.size()) break;
  }
  return out;
}

// Representation on the sum-zero vectors of Q^n with basis e_i - e_(n-1).
CycMatrix deleted_permutation(const std::vector<unsigned>& perm, unsigned m) {
  const std::size_t n = perm.size();
  CycMatrix out(n - 1, n - 1, cyc(m, 0));
  const unsigned last = perm[n - 1];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (perm[i] + 1 < n) out(perm[i], i) += cyc(m, 1);
    if (last + 1 < n) out(last, i) -= cyc(m, 1);
  }
  return out;
}

int permutation_sign(const std::vector<unsigned>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

Irrep from_element_map(const FiniteGroup& g, unsigned m, const std::function<CycMatrix(std::size_t)>& image) {
  std::vector<CycMatrix> gens;
  for (auto s : g.generators()) gens.push_back(image(s));
  return irrep_from_generators(g, m, gens);
}

std::vector<Irrep> higher_builtin_irreps(const FiniteGroup& g, unsigned m) {
  std::vector<Irrep> out;
  if (g.is_abelian()) return out;
  switch (g.family()) {
    case GroupFamily::dihedral: {
      const unsigned n = g.family_parameter() / 2;
      for (unsigned d = 1; 2 * d < n; ++d) {
        const unsigned step = m / n;
        CycMatrix rot(2, 2, cyc(m, 0)), flip(2, 2, cyc(m, 0));
        rot(0, 0) = CyclotomicNumber::zeta(m, static_cast<long>(step * d));
        rot(1, 1) = CyclotomicNumber::zeta(m, -static_cast<long>(step * d));
        flip(0, 1) = cyc(m, 1);
        flip(1, 0) = cyc(m, 1);
        out.push_back(from_element_map(g, m, [&](std::size_t x) {
          CycMatrix r = cyc_identity(m, 2);
          for (std::size_t i = 0; i < x % n; ++i) r = r * rot;
          return x >= n ? r * flip : r;
        }));
      }
      break;
    }
    case GroupFamily::quaternion: {
      CycMatrix qi(2, 2, cyc(m, 0)), qj(2, 2, cyc(m, 0));
      qi(0, 0) = CyclotomicNumber::zeta(m, m / 4);
      qi(1, 1) = -CyclotomicNumber::zeta(m, m / 4);
      qj(0, 1) = cyc(m, 1);
      qj(1, 0) = cyc(m, -1);
      out.push_back(from_element_map(g, m, [&](std::size_t x) {
        CycMatrix r = cyc_identity(m, 2);
        for (std::size_t a = 0; a < x % 4; ++a) r = r * qi;
        return x >= 4 ? r * qj : r;
      }));
      break;
    }
    case GroupFamily::symmetric: {
      const unsigned n = g.family_parameter();
      auto perm = [&](std::size_t x) { return permutation_of(g, x); };
      if (n == 3) {
        out.push_back(from_element_map(g, m, [&](std::size_t x) { return deleted_permutation(perm(x), m); }));
      } else if (n == 4) {
        // action on the three ways of pairing up {0, 1, 2, 3}; pairing j puts 0 with j + 1
        auto on_pairings = [&](std::size_t x) {
          auto p = perm(x);
          std::vector<unsigned> q(3);
          for (unsigned j = 0; j < 3; ++j) {
            unsigned a = p[0], b = p[j + 1];
            unsigned partner = 0;
            if (a == 0) partner = b;
            else if (b == 0) partner = a;
            else {
              // the other pair of pairing j contains 0 after the move
              std::vector<unsigned> rest;
              for (unsigned k = 1; k < 4; ++k)
                if (k != j + 1) rest.push_back(p[k]);
              partner = rest[0] == 0 ? rest[1] : rest[0];
            }
            q[j] = partner - 1;
          }
          return q;
        };
        out.push_back(from_element_map(g, m, [&](std::size_t x) { return deleted_permutation(on_pairings(x), m); }));
        out.push_back(from_element_map(g, m, [&](std::size_t x) { return deleted_permutation(perm(x), m); }));
        out.push_back(from_element_map(g, m, [&](std::size_t x) {
          CycMatrix r = deleted_permutation(perm(x), m);
          if (permutation_sign(perm(x)) < 0)
            for (std::size_t i = 0; i < r.rows(); ++i)
              for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) = -r(i, j);
          return r;
        }));
      }
      break;
    }
    case GroupFamily::affine: {
      // the action on the field is 2-transitive, so the deleted permutation representation is irreducible
      out.push_back(from_element_map(g, m, [&](std::size_t x) { return deleted_permutation(affine_permutation(g, x), m); }));
      break;
    }
    default:
      throw MathError("no builtin representations for " + g.name() + "; supply irreducible representations explicitly");
  }
  return out;
}

std::string component_name(std::size_t i) { return "irrep " + std::to_string(i); }

}  // namespace

// ---- group algebra ----

GroupAlgebraPtr make_group_algebra(GroupPtr group) { return std::make_shared<const GroupAlgebra>(std::move(group)); }

const FiniteGroup& group_of(const GroupAlgebraElement& x) {
  auto ga = dynamic_cast<const GroupAlgebra*>(x.structure().get());
  if (!ga) throw MathError("element does not lie in a group algebra");
  return ga->group();
}

GroupAlgebraElement group_element(const GroupAlgebraPtr& alg, std::size_t g, const Rational& c) {
  return AlgebraElement::basis(alg, g, c);
}

GroupAlgebraElement norm_element(const GroupAlgebraPtr& alg) {
  return GroupAlgebraElement(alg, RatVector(alg->dimension(), Rational(1)));
}

GroupAlgebraElement sharp(const GroupAlgebraElement& x) {
  const FiniteGroup& g = group_of(x);
  RatVector c(x.dimension());
  for (std::size_t a = 0; a < c.size(); ++a) c[g.inverse(a)] = x.coeff(a);
  return GroupAlgebraElement(x.structure(), std::move(c));
}

Rational augment(const GroupAlgebraElement& x) {
  group_of(x);
  Rational s = 0;
  for (const auto& c : x.coeffs()) s += c;
  return s;
}

AlgebraMatrix sharp_transpose(const AlgebraMatrix& h) {
  if (h.empty()) return AlgebraMatrix::with_cols(h.rows());
  AlgebraMatrix out(h.cols(), h.rows(), h(0, 0));
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out(j, i) = sharp(h(i, j));
  return out;
}

// ---- irreducible representations ----

std::size_t Irrep::orbit_size() const {
  return CyclotomicField::get(conductor).units().size() / std::max<std::size_t>(1, stabilizer.size());
}

Irrep irrep_from_generators(const FiniteGroup& g, unsigned conductor, const std::vector<CycMatrix>& generator_images) {
  const auto& gens = g.generators();
  if (generator_images.size() != gens.size())
    throw MathError("expected " + std::to_string(gens.size()) + " generator images, got " + std::to_string(generator_images.size()));
  if (g.order() > 1 && generator_images.empty()) throw MathError("no generator images");
  const std::size_t d = generator_images.empty() ? 1 : generator_images[0].rows();
  std::vector<CycMatrix> lifted;
  for (const auto& img : generator_images) {
    if (img.rows() != d || img.cols() != d) throw MathError("generator images must be square of one size");
    lifted.push_back(map_matrix(img, [&](const CyclotomicNumber& x) { return lift_to(conductor, x); }));
  }
  std::vector<std::optional<CycMatrix>> images(g.order());
  images[g.identity()] = cyc_identity(conductor, d);
  std::deque<std::size_t> queue{g.identity()};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::size_t y = g.mul(x, gens[s]);
      CycMatrix candidate = *images[x] * lifted[s];
      if (!images[y]) {
        images[y] = std::move(candidate);
        queue.push_back(y);
      } else if (*images[y] != candidate) {
        throw MathError("generator images do not define a homomorphism (relation fails at element " + std::to_string(y) + ")");
      }
    }
  }
  Irrep rep;
  rep.dimension = static_cast<unsigned>(d);
  rep.conductor = conductor;
  for (auto& img : images) {
    if (!img) throw MathError("generators do not generate the group");
    rep.images.push_back(std::move(*img));
  }
  fill_character(g, rep);
  return rep;
}

Irrep galois_conjugate(const Irrep& rep, unsigned k) {
  Irrep out = rep;
  GaloisElement s(rep.conductor, k);
  for (auto& img : out.images) img = map_matrix(img, [&](const CyclotomicNumber& x) { return galois_apply(x, s); });
  for (auto& c : out.character) c = galois_apply(c, s);
  return out;
}

WedderburnReport validate_wedderburn(const FiniteGroup& g, const std::vector<Irrep>& irreps) {
  WedderburnReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.failures.push_back(std::move(msg));
  };
  if (irreps.empty()) {
    fail("no components");
    return report;
  }
  const unsigned m = irreps[0].conductor;
  if (m == 0 || m % g.exponent() != 0) fail("conductor " + std::to_string(m) + " is not a multiple of the group exponent");
  std::size_t sum_d2 = 0, count = 0;
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    const Irrep& rep = irreps[i];
    const std::string who = component_name(i);
    if (rep.conductor != m) {
      fail(who + ": conductor differs from the first component");
      continue;
    }
    if (rep.images.size() != g.order()) {
      fail(who + ": expected " + std::to_string(g.order()) + " images, got " + std::to_string(rep.images.size()));
      continue;
    }
    bool shapes = true;
    for (const auto& img : rep.images) shapes &= img.rows() == rep.dimension && img.cols() == rep.dimension;
    if (!shapes || rep.dimension == 0) {
      fail(who + ": images are not " + std::to_string(rep.dimension) + "x" + std::to_string(rep.dimension));
      continue;
    }
    if (rep.images[g.identity()] != cyc_identity(m, rep.dimension)) fail(who + ": identity is not sent to the identity matrix");
    bool hom = true;
    for (std::size_t x = 0; x < g.order() && hom; ++x)
      for (auto s : g.generators())
        if (rep.images[g.mul(x, s)] != rep.images[x] * rep.images[s]) {
          fail(who + ": homomorphism property fails for element " + std::to_string(x) + " times generator " + std::to_string(s));
          hom = false;
          break;
        }
    bool constant = true;
    for (std::size_t c = 0; c < g.classes().size(); ++c)
      for (auto x : g.classes()[c])
        constant &= c < rep.character.size() && matrix_trace(rep.images[x], m) == rep.character[c];
    if (!constant || rep.character.size() != g.classes().size()) {
      fail(who + ": character does not match the traces on conjugacy classes");
      continue;
    }
    if (rep.stabilizer != stabilizer_of(rep.character, m)) fail(who + ": stabilizer subgroup is wrong");
    // <chi, chi> = 1
    CyclotomicNumber inner = cyc(m, 0);
    for (std::size_t c = 0; c < g.classes().size(); ++c)
      inner += Rational(static_cast<long>(g.classes()[c].size())) *
               (rep.character[c] * complex_conjugate(rep.character[c]));
    if (inner != cyc(m, Rational(static_cast<long>(g.order())))) fail(who + ": not absolutely irreducible");
    for (std::size_t j = 0; j < i; ++j)
      if (same_orbit(irreps[j], rep)) fail(who + ": same Galois orbit as " + component_name(j));
    const std::size_t orbit = CyclotomicField::get(m).units().size() / std::max<std::size_t>(1, stabilizer_of(rep.character, m).size());
    sum_d2 += orbit * rep.dimension * rep.dimension;
    count += orbit;
  }
  if (report.ok && sum_d2 != g.order())
    fail("dimension count: sum of d^2 over all conjugates is " + std::to_string(sum_d2) + ", expected " + std::to_string(g.order()));
  if (report.ok && count != g.classes().size())
    fail("component count: " + std::to_string(count) + " irreducibles for " + std::to_string(g.classes().size()) + " classes");
  return report;
}

// ---- Wedderburn data ----

WedderburnData WedderburnData::builtin(GroupPtr g) {
  const unsigned m = g->exponent();
  std::vector<Irrep> candidates = higher_builtin_irreps(*g, m);
  auto linear = linear_characters(*g, m);
  candidates.insert(candidates.begin(), linear.begin(), linear.end());
  std::vector<Irrep> reps;
  for (auto& c : candidates) {
    bool seen = false;
    for (const auto& r : reps) seen |= same_orbit(r, c);
    if (!seen) reps.push_back(std::move(c));
  }
  return from_irreps(std::move(g), std::move(reps));
}

WedderburnData WedderburnData::from_irreps(GroupPtr g, std::vector<Irrep> irreps) {
  for (auto& rep : irreps) {
    // recompute derived fields from the images
    for (auto& img : rep.images) img = map_matrix(img, [&](const CyclotomicNumber& x) { return lift_to(rep.conductor, x); });
    if (rep.images.size() == g->order()) fill_character(*g, rep);
  }
  auto report = validate_wedderburn(*g, irreps);
  if (!report.ok) {
    std::string msg = "invalid Wedderburn data:";
    for (const auto& f : report.failures) msg += "\n  " + f;
    throw MathError(msg);
  }
  for (auto& rep : irreps) rep = orbit_representative(rep);
  std::sort(irreps.begin(), irreps.end(), [](const Irrep& a, const Irrep& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return compare_characters(a.character, b.character) > 0;
  });
  WedderburnData w;
  w.group_ = std::move(g);
  w.algebra_ = make_group_algebra(w.group_);
  w.conductor_ = irreps[0].conductor;
  w.irreps_ = std::move(irreps);
  w.finish();
  return w;
}

void WedderburnData::finish() {
  const unsigned m = conductor_;
  const auto& field = CyclotomicField::get(m);
  const std::size_t phi = field.degree();
  center_dim_ = 0;
  for (const auto& rep : irreps_) {
    // rows: coordinates of sigma_k(zeta^j) - zeta^j, stacked horizontally over the stabilizer
    IntMatrix stacked = int_zero_matrix(phi, phi * rep.stabilizer.size());
    for (std::size_t s = 0; s < rep.stabilizer.size(); ++s)
      for (std::size_t j = 0; j < phi; ++j) {
        const auto& img = field.power(static_cast<unsigned>((static_cast<unsigned long>(rep.stabilizer[s]) * j) % m));
        for (std::size_t c = 0; c < phi; ++c) stacked(j, s * phi + c) = img[c] - (c == j ? 1 : 0);
      }
    IntMatrix kernel = integer_left_kernel(stacked);
    std::vector<CyclotomicNumber> basis;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      std::vector<Rational> coeffs(phi);
      for (std::size_t c = 0; c < phi; ++c) coeffs[c] = Rational(kernel(r, c));
      basis.push_back(CyclotomicNumber(m, coeffs));
    }
    offsets_.push_back(center_dim_);
    center_dim_ += basis.size();
    basis_matrices_.push_back(to_rational(kernel));
    integral_bases_.push_back(std::move(basis));
  }
  // structure constants of the centre in these coordinates
  std::vector<std::string> labels;
  std::vector<Rational> constants(center_dim_ * center_dim_ * center_dim_, Rational(0));
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    const auto& basis = integral_bases_[i];
    for (std::size_t a = 0; a < basis.size(); ++a) {
      labels.push_back("z" + std::to_string(i + 1) + (basis.size() > 1 ? "." + std::to_string(a + 1) : std::string()));
      for (std::size_t b = 0; b < basis.size(); ++b) {
        RatVector prod = field_coords(i, basis[a] * basis[b]);
        for (std::size_t c = 0; c < basis.size(); ++c)
          constants[((offsets_[i] + a) * center_dim_ + offsets_[i] + b) * center_dim_ + offsets_[i] + c] = prod[c];
      }
    }
  }
  center_ = std::make_shared<StructureAlgebra>(labels, constants);
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    std::vector<CyclotomicNumber> unit(irreps_.size(), cyc(m, 0));
    unit[i] = cyc(m, 1);
    idempotents_.push_back(central_element(tuple_coords(unit)));
  }
  std::vector<RatVector> sums;
  for (const auto& cls : group_->classes()) {
    RatVector c(group_->order(), Rational(0));
    for (auto x : cls) c[x] = 1;
    sums.push_back(central_coords(GroupAlgebraElement(algebra_, c)));
  }
  group_ring_center_ = IntegerLattice::from_generators(center_dim_, sums);
}

RatVector WedderburnData::field_coords(std::size_t i, const CyclotomicNumber& x) const {
  auto sol = solve_left(basis_matrices_.at(i), lift_to(conductor_, x).coeffs());
  if (!sol) throw MathError("value " + x.to_string() + " does not lie in the character field of " + component_name(i));
  return *sol;
}

CyclotomicNumber WedderburnData::field_value(std::size_t i, const RatVector& coords) const {
  const auto& basis = integral_bases_.at(i);
  if (coords.size() != basis.size()) throw MathError("wrong number of field coordinates");
  CyclotomicNumber out = cyc(conductor_, 0);
  for (std::size_t a = 0; a < basis.size(); ++a) out += coords[a] * basis[a];
  return out;
}

RatVector WedderburnData::tuple_coords(const std::vector<CyclotomicNumber>& values) const {
  if (values.size() != irreps_.size()) throw MathError("tuple has the wrong number of components");
  RatVector out;
  out.reserve(center_dim_);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto c = field_coords(i, values[i]);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<CyclotomicNumber> WedderburnData::coords_tuple(const RatVector& coords) const {
  if (coords.size() != center_dim_) throw MathError("centre coordinates have the wrong length");
  std::vector<CyclotomicNumber> out;
  for (std::size_t i = 0; i < irreps_.size(); ++i)
    out.push_back(field_value(i, RatVector(coords.begin() + static_cast<long>(offsets_[i]),
                                           coords.begin() + static_cast<long>(offsets_[i] + field_degree(i)))));
  return out;
}

GroupAlgebraElement WedderburnData::central_element(const RatVector& coords) const {
  const auto values = coords_tuple(coords);
  const FiniteGroup& g = *group_;
  RatVector c(g.order(), Rational(0));
  for (std::size_t i = 0; i < irreps_.size(); ++i) {
    if (is_zero(values[i])) continue;
    const Irrep& rep = irreps_[i];
    const Rational scale = ratio(rep.dimension, static_cast<long>(g.order() * rep.stabilizer.size()));
    // the coefficient only depends on the class of g
    std::vector<Rational> per_class;
    for (const auto& cls : g.classes()) {
      std::size_t inv = g.inverse(cls.front());
      per_class.push_back(scale * trace(values[i] * rep.character[g.class_index(inv)]));
    }
    for (std::size_t x = 0; x < g.order(); ++x) c[x] += per_class[g.class_index(x)];
  }
  return GroupAlgebraElement(algebra_, std::move(c));
}

RatVector WedderburnData::central_coords(const GroupAlgebraElement& x) const {
  const FiniteGroup& g = *group_;
  std::vector<Rational> class_coeff_sum(g.classes().size(), Rational(0));
  for (std::size_t a = 0; a < g.order(); ++a) class_coeff_sum[g.class_index(a)] += x.coeff(a);
  std::vector<CyclotomicNumber> values;
  for (const auto& rep : irreps_) {
    CyclotomicNumber v = cyc(conductor_, 0);
    for (std::size_t c = 0; c < class_coeff_sum.size(); ++c)
      if (!is_zero(class_coeff_sum[c])) v += class_coeff_sum[c] * rep.character[c];
    values.push_back(ratio(1, rep.dimension) * v);
  }
  return tuple_coords(values);
}

// ---- reduced norms and adjoints ----

CentralTuple::CentralTuple(const WedderburnData& data, std::vector<CyclotomicNumber> values) : values_(std::move(values)) {
  if (values_.size() != data.components()) throw MathError("tuple has the wrong number of components");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = lift_to(data.conductor(), values_[i]);
    for (unsigned k : data.irrep(i).stabilizer)
      if (galois_apply(values_[i], GaloisElement(data.conductor(), k)) != values_[i])
        throw MathError("stability violation in " + component_name(i) + ": invalid Wedderburn data");
  }
}

CentralTuple operator*(const CentralTuple& a, const CentralTuple& b) {
  if (a.size() != b.size()) throw MathError("tuples of different length");
  CentralTuple out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.values_[i] = a.values_[i] * b.values_[i];
  return out;
}

std::string CentralTuple::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < values_.size(); ++i) s += (i ? ", " : "") + values_[i].to_string();
  return s + ")";
}

CycMatrix embed(const AlgebraMatrix& h, const Irrep& rep) {
  const std::size_t b = h.rows(), d = rep.dimension;
  const unsigned m = rep.conductor;
  CycMatrix out(b * d, h.cols() * d, cyc(m, 0));
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t c = 0; c < h.cols(); ++c) {
      const auto& x = h(r, c);
      if (x.dimension() != rep.images.size()) throw MathError("matrix entry does not match the group of the representation");
      for (std::size_t g = 0; g < x.dimension(); ++g) {
        const Rational& coeff = x.coeff(g);
        if (is_zero(coeff)) continue;
        const auto& img = rep.images[g];
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j)
            if (!is_zero(img(i, j))) out(r * d + i, c * d + j) += coeff * img(i, j);
      }
    }
  return out;
}

namespace {

void require_square(const AlgebraMatrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw MathError("expected a nonempty square matrix");
}

}  // namespace

CentralTuple nrd(const AlgebraMatrix& h, const WedderburnData& data) {
  require_square(h);
  std::vector<CyclotomicNumber> values;
  for (std::size_t i = 0; i < data.components(); ++i)
    values.push_back(det_exact(embed(h, data.irrep(i)), cyc(data.conductor(), 1)));
  return CentralTuple(data, std::move(values));
}

std::vector<std::vector<CyclotomicNumber>> reduced_charpoly(const AlgebraMatrix& h, const WedderburnData& data) {
  require_square(h);
  std::vector<std::vector<CyclotomicNumber>> out;
  for (std::size_t i = 0; i < data.components(); ++i) {
    auto f = charpoly_exact(embed(h, data.irrep(i)), cyc(data.conductor(), 1));
    for (const auto& c : f)
      for (unsigned k : data.irrep(i).stabilizer)
        if (galois_apply(c, GaloisElement(data.conductor(), k)) != c)
          throw MathError("stability violation in " + component_name(i) + ": invalid Wedderburn data");
    out.push_back(std::move(f));
  }
  return out;
}

AlgebraMatrix generalized_adjoint(const AlgebraMatrix& h, const WedderburnData& data) {
  require_square(h);
  const std::size_t b = h.rows();
  const auto& alg = h(0, 0).structure();
  const auto polys = reduced_charpoly(h, data);
  AlgebraMatrix out = algebra_zero(alg, b, b);
  const unsigned m = data.conductor();
  for (std::size_t i = 0; i < data.components(); ++i) {
    const auto& f = polys[i];
    const std::size_t deg = f.size() - 1;
    // Horner on sum_{j=1}^{deg} alpha_j H^(j-1)
    AlgebraMatrix acc = algebra_zero(alg, b, b);
    for (std::size_t j = deg; j >= 1; --j) {
      if (j < deg) acc = acc * h;
      if (is_zero(f[j])) continue;
      std::vector<CyclotomicNumber> unit(data.components(), cyc(m, 0));
      unit[i] = f[j];
      auto central = data.central_element(data.tuple_coords(unit));
      for (std::size_t r = 0; r < b; ++r) acc(r, r) = acc(r, r) + central;
    }
    if (deg % 2 == 0) acc = scale(-AlgebraElement::one(alg), acc);
    out = out + acc;
  }
  return out;
}

GroupAlgebraElement tuple_element(const CentralTuple& t, const WedderburnData& data) {
  return data.central_element(data.tuple_coords(t.values()));
}

CentralTuple conjugate_tuple(const CentralTuple& t, const WedderburnData& data) {
  const unsigned m = data.conductor();
  std::vector<CyclotomicNumber> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    out.push_back(complex_conjugate(lift_to(m, t[i])));
  return CentralTuple(data, std::move(out));
}

}  // namespace fittkit
