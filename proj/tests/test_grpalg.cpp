#include <doctest.h>

#include <fittkit/grpalg.hpp>
#include <fittkit/random.hpp>

#include <set>

using namespace fittkit;

namespace {

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupAlgebraElement random_element(const GroupAlgebraPtr& alg, Rng& rng, long bound) {
  RatVector c(alg->dimension());
  for (auto& x : c) x = Rational(rng.uniform(-bound, bound));
  return GroupAlgebraElement(alg, c);
}

AlgebraMatrix random_matrix(const GroupAlgebraPtr& alg, Rng& rng, std::size_t b, long bound) {
  AlgebraMatrix m = algebra_zero(alg, b, b);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) m(i, j) = random_element(alg, rng, bound);
  return m;
}

AlgebraMatrix one_by_one(const GroupAlgebraElement& x) {
  AlgebraMatrix m(1, 1, x);
  return m;
}

// Determinant of v -> v * h on Q[G]^b, computed without any representation theory.
Rational regular_det(const AlgebraMatrix& h) {
  const auto& alg = h(0, 0).structure();
  const std::size_t n = alg->dimension(), b = h.rows();
  RatMatrix big(b * n, b * n, Rational(0));
  for (std::size_t r = 0; r < b; ++r)
    for (std::size_t g = 0; g < n; ++g) {
      auto basis = AlgebraElement::basis(alg, g);
      for (std::size_t c = 0; c < b; ++c) {
        auto prod = basis * h(r, c);
        for (std::size_t k = 0; k < n; ++k) big(r * n + g, c * n + k) = prod.coeff(k);
      }
    }
  return det_exact(big, Rational(1));
}

// Product of the Galois conjugates of x over a set of coset representatives of units / stabilizer.
Rational field_norm(const CyclotomicNumber& x, unsigned m, const std::vector<unsigned>& stabilizer) {
  std::set<unsigned> seen;
  CyclotomicNumber acc(m, Rational(1));
  for (unsigned k : CyclotomicField::get(m).units()) {
    if (seen.count(k)) continue;
    for (unsigned h : stabilizer) seen.insert(static_cast<unsigned>((static_cast<unsigned long>(k) * h) % m));
    acc = acc * galois_apply(x, GaloisElement(m, k));
  }
  return acc.rational_value();
}

Rational nrd_norm_product(const CentralTuple& t, const WedderburnData& data) {
  Rational acc = 1;
  for (std::size_t i = 0; i < data.components(); ++i) {
    Rational n = field_norm(t[i], data.conductor(), data.irrep(i).stabilizer);
    for (unsigned k = 0; k < data.irrep(i).dimension; ++k) acc *= n;
  }
  return acc;
}

std::vector<std::string> dims(const WedderburnData& w) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < w.components(); ++i)
    out.push_back(std::to_string(w.irrep(i).dimension) + "x" + std::to_string(w.irrep(i).orbit_size()));
  return out;
}

CyclotomicNumber rat(unsigned m, long v) { return CyclotomicNumber(m, Rational(v)); }

}  // namespace

TEST_CASE("sharp and augmentation") {
  auto d6 = share(FiniteGroup::dihedral(6));
  auto alg = make_group_algebra(d6);
  auto sigma = group_element(alg, 1), tau = group_element(alg, 3);
  CHECK(sharp(norm_element(alg)) == norm_element(alg));
  CHECK(sharp(sigma + tau) == group_element(alg, d6->inverse(1)) + tau);
  CHECK(augment(norm_element(alg)) == 6);
  CHECK(augment(sigma - AlgebraElement::one(alg)) == 0);
  CHECK(augment(Rational(2) * AlgebraElement::one(alg) + Rational(3) * sigma) == 5);

  Rng rng(11);
  for (const char* name : {"D6", "Q8", "S4", "C4"}) {
    auto g = share(FiniteGroup::builtin(name));
    auto a = make_group_algebra(g);
    for (int t = 0; t < 30; ++t) {
      auto x = random_element(a, rng, 3), y = random_element(a, rng, 3);
      CHECK(sharp(x * y) == sharp(y) * sharp(x));
      CHECK(sharp(sharp(x)) == x);
      CHECK(augment(x * y) == augment(x) * augment(y));
    }
  }
}

TEST_CASE("builtin Wedderburn data") {
  auto c2 = WedderburnData::builtin(share(FiniteGroup::cyclic(2)));
  REQUIRE(c2.components() == 2);
  CHECK(c2.irrep(0).character == std::vector<CyclotomicNumber>{rat(2, 1), rat(2, 1)});
  CHECK(c2.irrep(1).character == std::vector<CyclotomicNumber>{rat(2, 1), rat(2, -1)});

  auto d6 = WedderburnData::builtin(share(FiniteGroup::dihedral(6)));
  CHECK(dims(d6) == std::vector<std::string>{"1x1", "1x1", "2x1"});
  CHECK(d6.irrep(0).character[1] == rat(6, 1));  // trivial first
  CHECK(d6.irrep(1).character[2] == rat(6, -1));

  auto q8 = WedderburnData::builtin(share(FiniteGroup::quaternion8()));
  CHECK(dims(q8) == std::vector<std::string>{"1x1", "1x1", "1x1", "1x1", "2x1"});
  CHECK(q8.conductor() == 4);

  auto c3 = WedderburnData::builtin(share(FiniteGroup::cyclic(3)));
  CHECK(dims(c3) == std::vector<std::string>{"1x1", "1x2"});
  CHECK(c3.irrep(1).character[1] == CyclotomicNumber::zeta(3));

  CHECK(dims(WedderburnData::builtin(share(FiniteGroup::dihedral(10)))) == std::vector<std::string>{"1x1", "1x1", "2x2"});
  CHECK(dims(WedderburnData::builtin(share(FiniteGroup::symmetric(4)))) ==
        std::vector<std::string>{"1x1", "1x1", "2x1", "3x1", "3x1"});
  CHECK(dims(WedderburnData::builtin(share(FiniteGroup::affine(5)))) ==
        std::vector<std::string>{"1x1", "1x2", "1x1", "4x1"});
  CHECK(dims(WedderburnData::builtin(share(FiniteGroup::dihedral(8)))) ==
        std::vector<std::string>{"1x1", "1x1", "1x1", "1x1", "2x1"});
  CHECK(dims(WedderburnData::builtin(share(FiniteGroup::cyclic(1)))) == std::vector<std::string>{"1x1"});

  // a non-abelian table group has no builtin data
  auto s3 = FiniteGroup::symmetric(3);
  std::vector<std::vector<std::size_t>> table(6, std::vector<std::size_t>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) table[a][b] = s3.mul(a, b);
  CHECK_THROWS_AS(WedderburnData::builtin(share(FiniteGroup::from_table("T", table))), MathError);
  // an abelian one does
  std::vector<std::vector<std::size_t>> v4{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  CHECK(WedderburnData::builtin(share(FiniteGroup::from_table("V4", v4))).components() == 4);
}

TEST_CASE("idempotents and structure invariants") {
  for (const char* name : {"C1", "C2", "C4", "C6", "D4", "D6", "D8", "D10", "D16", "Q8", "S3", "S4", "Aff(3)", "Aff(4)", "Aff(5)", "Aff(7)", "Aff(8)"}) {
    CAPTURE(name);
    auto g = share(FiniteGroup::builtin(name));
    auto w = WedderburnData::builtin(g);
    const auto& alg = w.algebra();
    auto report = validate_wedderburn(*g, std::vector<Irrep>([&] {
                                        std::vector<Irrep> v;
                                        for (std::size_t i = 0; i < w.components(); ++i) v.push_back(w.irrep(i));
                                        return v;
                                      }()));
    CHECK(report.ok);
    GroupAlgebraElement total = AlgebraElement::zero(alg);
    std::size_t sum_d2 = 0, count = 0;
    for (std::size_t i = 0; i < w.components(); ++i) {
      const auto& e = w.idempotent(i);
      total = total + e;
      CHECK(e * e == e);
      for (std::size_t j = 0; j < i; ++j) CHECK(is_zero(e * w.idempotent(j)));
      // central
      for (auto s : g->generators()) CHECK(e * group_element(alg, s) == group_element(alg, s) * e);
      sum_d2 += w.irrep(i).orbit_size() * w.irrep(i).dimension * w.irrep(i).dimension;
      count += w.irrep(i).orbit_size();
      if (i > 0) CHECK(w.irrep(i - 1).dimension <= w.irrep(i).dimension);
    }
    CHECK(total == AlgebraElement::one(alg));
    CHECK(sum_d2 == g->order());
    CHECK(count == g->classes().size());
    CHECK(w.center_dimension() == g->classes().size());
    // the idempotent of the trivial component is N_G / |G|
    CHECK(w.idempotent(0) == ratio(1, g->order()) * norm_element(alg));
    // class sums lie in the centre of Z[G] and round-trip through coordinates
    for (const auto& cls : g->classes()) {
      GroupAlgebraElement s = AlgebraElement::zero(alg);
      for (auto x : cls) s = s + group_element(alg, x);
      auto coords = w.central_coords(s);
      CHECK(w.central_element(coords) == s);
      CHECK(lattice_membership(coords, w.center_of_group_ring()));
    }
  }
}

TEST_CASE("validation rejects broken data") {
  auto g = share(FiniteGroup::dihedral(10));
  auto w = WedderburnData::builtin(g);
  std::vector<Irrep> irreps;
  for (std::size_t i = 0; i < w.components(); ++i) irreps.push_back(w.irrep(i));
  CHECK(validate_wedderburn(*g, irreps).ok);

  auto perturbed = irreps;
  auto& m = perturbed.back().images[g->generators()[0]];
  m(0, 1) = m(0, 1) + rat(w.conductor(), 1);
  auto bad = validate_wedderburn(*g, perturbed);
  CHECK_FALSE(bad.ok);
  REQUIRE_FALSE(bad.failures.empty());
  bool mentions_hom = false;
  for (const auto& f : bad.failures) mentions_hom |= f.find("homomorphism") != std::string::npos;
  CHECK(mentions_hom);

  auto missing = irreps;
  missing.pop_back();
  auto short_report = validate_wedderburn(*g, missing);
  CHECK_FALSE(short_report.ok);
  bool mentions_dim = false;
  for (const auto& f : short_report.failures) mentions_dim |= f.find("dimension") != std::string::npos;
  CHECK(mentions_dim);
  CHECK_THROWS_AS(WedderburnData::from_irreps(g, missing), MathError);

  // the same orbit twice
  auto doubled = irreps;
  doubled.push_back(galois_conjugate(irreps.back(), 3));
  CHECK_FALSE(validate_wedderburn(*g, doubled).ok);

  // any orbit member and any order is accepted and canonicalised
  std::vector<Irrep> shuffled{galois_conjugate(irreps[2], 3), irreps[1], irreps[0]};
  auto w2 = WedderburnData::from_irreps(g, shuffled);
  REQUIRE(w2.components() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(w2.irrep(i).character == w.irrep(i).character);

  // inconsistent generator images
  auto c3 = FiniteGroup::cyclic(3);
  CycMatrix bad_image(1, 1, CyclotomicNumber::zeta(4));
  CHECK_THROWS_AS(irrep_from_generators(c3, 4, {bad_image}), MathError);
}

TEST_CASE("reduced norms: examples") {
  for (unsigned p : {3u, 5u, 7u}) {
    auto g = share(FiniteGroup::dihedral(2 * p));
    auto w = WedderburnData::builtin(g);
    auto alg = w.algebra();
    auto h = one_by_one(group_element(alg, 1) + group_element(alg, p));
    auto t = nrd(h, w);
    REQUIRE(t.size() == 3);
    CHECK(t[0] == rat(w.conductor(), 2));
    CHECK(is_zero(t[1]));
    CHECK(is_zero(t[2]));
    // as an element of Q[G]: 2 e_1 = (1/p) * sum of all g
    CHECK(tuple_element(t, w) == ratio(2, 2 * p) * norm_element(alg));
    auto id = nrd(algebra_identity(alg, 3), w);
    for (std::size_t i = 0; i < id.size(); ++i) CHECK(id[i] == rat(w.conductor(), 1));
  }
  auto c2 = WedderburnData::builtin(share(FiniteGroup::cyclic(2)));
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      auto x = Rational(a) * AlgebraElement::one(c2.algebra()) + Rational(b) * group_element(c2.algebra(), 1);
      auto t = nrd(one_by_one(x), c2);
      CHECK(t[0] == rat(2, a + b));
      CHECK(t[1] == rat(2, a - b));
    }
}

TEST_CASE("reduced characteristic polynomials: examples") {
  auto w = WedderburnData::builtin(share(FiniteGroup::dihedral(6)));
  auto alg = w.algebra();
  auto zero = reduced_charpoly(one_by_one(AlgebraElement::zero(alg)), w);
  auto one = reduced_charpoly(one_by_one(AlgebraElement::one(alg)), w);
  for (std::size_t i = 0; i < w.components(); ++i) {
    unsigned m = w.irrep(i).dimension;
    REQUIRE(zero[i].size() == m + 1);
    for (unsigned j = 0; j < m; ++j) CHECK(is_zero(zero[i][j]));
    CHECK(zero[i][m] == rat(6, 1));
    // (X - 1)^m
    long binom = 1;
    for (unsigned j = 0; j <= m; ++j) {
      long sign = ((m - j) % 2 == 0) ? 1 : -1;
      CHECK(one[i][j] == rat(6, sign * binom));
      binom = binom * static_cast<long>(m - j) / static_cast<long>(j + 1);
    }
  }
  auto c3 = WedderburnData::builtin(share(FiniteGroup::cyclic(3)));
  auto f = reduced_charpoly(one_by_one(group_element(c3.algebra(), 1)), c3);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::vector<CyclotomicNumber>{rat(3, -1), rat(3, 1)});
  CHECK(f[1] == std::vector<CyclotomicNumber>{-CyclotomicNumber::zeta(3), rat(3, 1)});
}

TEST_CASE("generalized adjoint: examples") {
  for (const char* name : {"D6", "D10", "Q8", "S4", "C4", "Aff(4)", "Aff(5)"}) {
    CAPTURE(name);
    auto g = share(FiniteGroup::builtin(name));
    auto w = WedderburnData::builtin(g);
    auto alg = w.algebra();
    auto adj = generalized_adjoint(one_by_one(AlgebraElement::zero(alg)), w);
    auto comm = commutator_subgroup(*g);
    GroupAlgebraElement expected = AlgebraElement::zero(alg);
    for (auto x : comm) expected = expected + ratio(1, comm.size()) * group_element(alg, x);
    CHECK(adj(0, 0) == expected);
  }
  // commutative base: 0* = 1 for b = 1 and 0 for b > 1
  auto c5 = WedderburnData::builtin(share(FiniteGroup::cyclic(5)));
  CHECK(generalized_adjoint(one_by_one(AlgebraElement::zero(c5.algebra())), c5)(0, 0) == AlgebraElement::one(c5.algebra()));
  CHECK(generalized_adjoint(algebra_zero(c5.algebra(), 2, 2), c5) == algebra_zero(c5.algebra(), 2, 2));

  // blockdiag(H, 1_m)* = blockdiag(H*, Nrd(H) 1_m)
  Rng rng(5);
  for (const char* name : {"D6", "Q8"}) {
    auto w = WedderburnData::builtin(share(FiniteGroup::builtin(name)));
    auto alg = w.algebra();
    for (int t = 0; t < 5; ++t) {
      auto h = random_matrix(alg, rng, 1, 2);
      std::size_t extra = 2;
      AlgebraMatrix big = algebra_identity(alg, 1 + extra);
      big(0, 0) = h(0, 0);
      auto adj = generalized_adjoint(big, w);
      auto small = generalized_adjoint(h, w);
      auto n = tuple_element(nrd(h, w), w);
      AlgebraMatrix expected = algebra_zero(alg, 1 + extra, 1 + extra);
      expected(0, 0) = small(0, 0);
      for (std::size_t k = 1; k <= extra; ++k) expected(k, k) = n;
      CHECK(adj == expected);
    }
  }
}

TEST_CASE("generalized adjoint law on random matrices") {
  Rng rng(2024);
  const char* names[] = {"D6", "D10", "C4", "Q8"};
  int trials = 0;
  for (int t = 0; t < 200; ++t) {
    auto g = share(FiniteGroup::builtin(names[t % 4]));
    static std::vector<WedderburnData> cache;
    if (cache.size() < 4) cache.push_back(WedderburnData::builtin(g));
    const auto& w = cache[static_cast<std::size_t>(t % 4)];
    auto alg = w.algebra();
    std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    auto h = random_matrix(alg, rng, b, 3);
    auto adj = generalized_adjoint(h, w);
    auto n = tuple_element(nrd(h, w), w);
    auto expected = scale(n, algebra_identity(alg, b));
    CHECK(adj * h == expected);
    CHECK(h * adj == expected);
    ++trials;
  }
  CHECK(trials == 200);
}

TEST_CASE("reduced norm properties") {
  Rng rng(77);
  for (const char* name : {"C2", "C3", "C4", "D6", "D8", "D10", "Q8", "S4", "Aff(5)"}) {
    CAPTURE(name);
    auto g = share(FiniteGroup::builtin(name));
    auto w = WedderburnData::builtin(g);
    auto alg = w.algebra();
    const unsigned m = w.conductor();
    int rounds = g->order() > 12 ? 4 : 12;
    for (int t = 0; t < rounds; ++t) {
      std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, g->order() > 12 ? 0 : 1));
      auto h1 = random_matrix(alg, rng, b, 2), h2 = random_matrix(alg, rng, b, 2);
      auto n1 = nrd(h1, w), n2 = nrd(h2, w);
      // multiplicativity
      CHECK(nrd(h1 * h2, w) == n1 * n2);
      // independent oracle: the regular representation determinant
      CHECK(regular_det(h1) == nrd_norm_product(n1, w));
      // sharp compatibility
      CHECK(nrd(sharp_transpose(h1), w) == conjugate_tuple(n1, w));
      // constant term, Cayley-Hamilton and stability of the coefficients
      auto f = reduced_charpoly(h1, w);
      for (std::size_t i = 0; i < w.components(); ++i) {
        std::size_t deg = b * w.irrep(i).dimension;
        REQUIRE(f[i].size() == deg + 1);
        CHECK(f[i][0] == (deg % 2 == 0 ? n1[i] : -n1[i]));
        for (const auto& c : f[i])
          for (unsigned k : w.irrep(i).stabilizer) CHECK(galois_apply(c, GaloisElement(m, k)) == c);
        auto block = embed(h1, w.irrep(i));
        CycMatrix acc(deg, deg, rat(m, 0));
        for (std::size_t j = deg + 1; j-- > 0;) {  // Horner
          acc = acc * block;
          for (std::size_t r = 0; r < deg; ++r) acc(r, r) = acc(r, r) + f[i][j];
        }
        CHECK(acc == CycMatrix(deg, deg, rat(m, 0)));
      }
    }
    // a permutation-like unimodular matrix has unit reduced norm
    AlgebraMatrix perm = algebra_zero(alg, 2, 2);
    perm(0, 1) = group_element(alg, g->generators()[0]);
    perm(1, 0) = -group_element(alg, g->generators().back());
    auto u = nrd(perm, w);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(norm(u[i]) * norm(u[i].inverse()) == 1);
      CHECK(abs(norm(u[i])) == 1);
    }
  }
}

TEST_CASE("centre coordinates") {
  auto w = WedderburnData::builtin(share(FiniteGroup::dihedral(10)));
  // Q(zeta_5 + zeta_5^-1) has degree 2
  CHECK(w.field_degree(2) == 2);
  CHECK(w.center_dimension() == 4);
  auto alg = w.algebra();
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    auto h = random_matrix(alg, rng, 1, 3);
    auto n = nrd(h, w);
    auto coords = w.tuple_coords(n.values());
    CHECK(w.coords_tuple(coords) == n.values());
    CHECK(w.central_coords(tuple_element(n, w)) == coords);
    // integral group ring elements have integral reduced norms
    for (const auto& c : coords) CHECK(c.get_den() == 1);
  }
  CHECK_THROWS_AS(w.field_coords(2, CyclotomicNumber::zeta(w.conductor())), MathError);
}
