// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion 7   run one

#include <fittkit/morita.hpp>
#include <fittkit/ncfit.hpp>
#include <fittkit/problem.hpp>
#include <fittkit/random.hpp>

#include "oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace fittkit;

namespace {

// Collects the first few failures of a criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::size_t count() const { return count_; }
  std::string summary() const {
    std::string s = std::to_string(failed_) + " of " + std::to_string(count_) + " checks failed";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t count_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string demo_path(const std::string& file) { return std::string(FITTKIT_DEMO_DIR) + "/" + file; }

struct Run {
  int status;
  std::string output;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(FITTKIT_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& haystack, const std::string& needle) { return haystack.find(needle) != std::string::npos; }

CommIdeal zideal(const Integer& g) { return CommIdeal::generated_by(BaseRing::integers(), {BaseRing::integers().element(Rational(g))}); }

LocalLattice span(const Integer& p, std::size_t dim, const std::vector<RatVector>& gens) {
  return LocalLattice(p, IntegerLattice::from_generators(dim, gens));
}

AlgebraElement element_of(const Order& o, const Coefficients& c) {
  RatVector v(o.dimension(), Rational(0));
  for (const auto& [k, x] : c) v.at(k) = x;
  return AlgebraElement(o.algebra(), v);
}

AlgebraMatrix matrix_of(const Order& o, const ProblemMatrix& m) {
  AlgebraMatrix h = algebra_zero(o.algebra(), m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) h(i, j) = element_of(o, m.entries[i][j]);
  return h;
}

AlgebraMatrix random_group_matrix(const AlgebraPtr& alg, Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  AlgebraMatrix m = algebra_zero(alg, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      RatVector v(alg->dimension());
      for (auto& x : v) x = rng.uniform(-bound, bound);
      m(i, j) = AlgebraElement(alg, v);
    }
  return m;
}

AlgebraElement group_sum(const AlgebraPtr& alg, const std::vector<std::size_t>& elements, const Rational& c) {
  AlgebraElement x = AlgebraElement::zero(alg);
  for (auto g : elements) x = x + AlgebraElement::basis(alg, g, c);
  return x;
}

// ---------------------------------------------------------------- criteria

void commutative_suite(Checks& c) {
  auto z = BaseRing::integers();
  IntMatrix d = int_zero_matrix(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 4;
  auto pres = CommPresentation::over_integers(d);
  c.expect(fitting_ideal(pres) == zideal(8), "Fitt(diag(2,4)) = 8Z");
  c.expect(annihilator_finite(pres) == zideal(4), "Ann(diag(2,4)) = 4Z");

  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, 3));
    std::size_t a = b + static_cast<std::size_t>(rng.uniform(0, 6 - static_cast<long>(b)));
    IntMatrix h = oracle::random_int_matrix(rng, a, b, 4);
    IntMatrix moved = oracle::random_unimodular(rng, a) * h * oracle::random_unimodular(rng, b);
    CommIdeal f = fitting_ideal(CommPresentation::over_integers(h));
    c.expect(f == zideal(oracle::gcd_of_maximal_minors(h)), "Fitt equals gcd of maximal minors");
    c.expect(fitting_ideal(CommPresentation::over_integers(moved)) == f, "Fitt invariant under unimodular change");
    c.expect(fitting_ideal(CommPresentation::over_integers(moved), FittMethod::minors) == f, "minors method agrees");
  }
  for (int t = 0; t < 100; ++t) {
    auto one = [&] {
      std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, 1));
      return oracle::random_int_matrix(rng, b + static_cast<std::size_t>(rng.uniform(0, 1)), b, 3);
    };
    IntMatrix h1 = one(), h2 = one();
    auto p1 = CommPresentation::over_integers(h1), p2 = CommPresentation::over_integers(h2);
    auto sum = direct_sum(p1, p2);
    c.expect(fitting_ideal(sum) == fitting_ideal(p1) * fitting_ideal(p2), "Fitt(M + N) = Fitt(M) Fitt(N)");
    c.expect(oracle::gcd_of_maximal_minors(sum.rational_matrix().rows() ? map_matrix(sum.rational_matrix(), [](const Rational& x) {
                                                                  return Integer(x.get_num());
                                                                })
                                                                       : IntMatrix()) ==
                 oracle::gcd_of_maximal_minors(h1) * oracle::gcd_of_maximal_minors(h2),
             "minor gcds multiply on block sums");
  }
}

void dependence_on_h(Checks& c) {
  Problem p = parse_problem(read_file(demo_path("dependence_on_h.fk")));
  c.expect(p.order && p.order->kind == OrderSpecKind::matrix && p.order->size == 2 && p.order->prime == 3,
           "shipped demo is over M_2(Z_(3))");
  auto o = Order::matrix_ring(2, Integer(3));
  auto h = fitt_presentation(PresentationNC(o, matrix_of(*o, *p.find_matrix("h"))));
  auto id = fitt_presentation(PresentationNC(o, matrix_of(*o, *p.find_matrix("identity"))));
  // determinants of [[4,1],[1,4]] and [[5,1],[1,5]] by hand
  c.expect(h.nrd_generators == std::vector<RatVector>{{Rational(15)}, {Rational(24)}}, "Nrd generators 15 and 24");
  c.expect(h.lattice == span(Integer(3), 1, {{Rational(15)}, {Rational(24)}}), "Fitt = <15, 24> locally");
  c.expect(h.lattice == span(Integer(3), 1, {{Rational(3)}}), "Fitt = 3 Z_(3)");
  c.expect(id.lattice == LocalLattice::standard(Integer(3), 1), "Fitt(identity) = Z_(3)");
  auto out = run_cli("demo dependence_on_h");
  c.expect(out.status == 0, "demo exits 0");
  c.expect(contains(out.output, "h.fitt: (1/1)[3] over Z_(3)"), "demo prints 3 Z_(3)");
  c.expect(contains(out.output, "identity.fitt: (1/1)[1] over Z_(3)"), "demo prints Z_(3)");
}

void adjoint_law(Checks& c) {
  Rng rng(2024);
  std::vector<WedderburnData> data;
  for (const char* name : {"D6", "D10", "C4", "Q8"}) data.push_back(WedderburnData::builtin(share(FiniteGroup::builtin(name))));
  for (int t = 0; t < 200; ++t) {
    const auto& w = data[static_cast<std::size_t>(t) % data.size()];
    auto alg = w.algebra();
    std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, 2));
    auto h = random_group_matrix(alg, rng, b, b, 3);
    auto adj = generalized_adjoint(h, w);
    auto expected = scale(tuple_element(nrd(h, w), w), algebra_identity(alg, b));
    c.expect(adj * h == expected, "H* H = Nrd(H) 1 over " + w.group().name());
    c.expect(h * adj == expected, "H H* = Nrd(H) 1 over " + w.group().name());
  }
}

void zero_adjoint(Checks& c) {
  for (const char* name : {"C1", "C2", "C3", "C4", "C5", "C6", "D4", "D6", "D8", "D10", "D12", "D16", "Q8", "S2", "S3",
                           "S4", "Aff(3)", "Aff(4)", "Aff(5)", "Aff(7)", "Aff(8)"}) {
    auto g = share(FiniteGroup::builtin(name));
    auto w = WedderburnData::builtin(g);
    auto alg = w.algebra();
    auto commutators = oracle::commutator_closure(*g);
    auto expected = group_sum(alg, {commutators.begin(), commutators.end()}, ratio(1, commutators.size()));
    AlgebraMatrix zero = algebra_zero(alg, 1, 1);
    c.expect(generalized_adjoint(zero, w)(0, 0) == expected, std::string("0* over ") + name);
  }
}

void dihedral_norm(Checks& c) {
  for (unsigned p : {3u, 5u}) {
    auto g = share(FiniteGroup::dihedral(2 * p));
    auto o = Order::group_ring(g, Integer(p));
    const auto& w = *o->wedderburn();
    auto alg = o->algebra();
    // sigma has index 1, tau index p
    AlgebraMatrix h(1, 1, AlgebraElement::basis(alg, 1) + AlgebraElement::basis(alg, p));
    auto tuple = nrd(h, w);
    // trivial character: 2; sign: 1 - 1; two-dimensional: det(diag(z, 1/z) + antidiag(1, 1)) = 1 - 1
    std::vector<CyclotomicNumber> expected(w.components(), CyclotomicNumber(1, Rational(0)));
    // trivial, sign, and one two-dimensional block over the real cyclotomic field
    c.expect(tuple.size() == 3, "component count");
    bool match = tuple.size() == expected.size();
    for (std::size_t i = 0; match && i < tuple.size(); ++i) match = tuple[i] == CyclotomicNumber(1, Rational(i == 0 ? 2 : 0));
    c.expect(match, "Nrd(sigma + tau) = (2, 0, ..., 0) for p = " + std::to_string(p));
    // 2 e_1 with e_1 = (1/|G|) N_G
    std::vector<std::size_t> all(g->order());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    c.expect(tuple_element(tuple, w) == group_sum(alg, all, ratio(2, 2 * p)), "Nrd = 2 e_1");
    c.expect(o->nrd(h) == o->central_coords(group_sum(alg, all, ratio(1, p))), "order-level Nrd agrees");
  }
}

void hereditary_non_additivity(Checks& c) {
  for (unsigned p : {2u, 3u, 5u}) {
    const Integer P(p);
    auto o = Order::congruence_hereditary(P);
    auto alg = o->algebra();
    auto mat = [&](long a, long b, long cc, long d) {
      return AlgebraElement(alg, {Rational(a), Rational(b), Rational(cc), Rational(d)});
    };
    auto x = mat(0, static_cast<long>(p), 1, 0);  // det = -p
    auto m = PresentationNC::from_rows(o, {{x}, {mat(0, 0, 0, 1)}}, 1);
    auto n = PresentationNC::from_rows(o, {{x}, {mat(1, 0, 0, 0)}}, 1);
    auto sum = PresentationNC::from_rows(o, {{x}}, 1);
    auto r = additivity_compare(m, n, sum);
    c.expect(r.direct_sum == span(P, 1, {{Rational(p)}}), "Fitt(M + N) = p");
    c.expect(r.product == span(P, 1, {{Rational(p * p)}}), "Fitt(M) Fitt(N) = p^2");
    c.expect(!r.equal && lattice_contains_local(r.direct_sum, r.product), "strict inclusion");
    c.expect(fitt_presentation(sum).lattice == span(P, 1, {o->nrd(AlgebraMatrix(1, 1, x))}), "Fitt(M + N) = (Nrd X)");

    auto text = execute(demo_problem({"hereditary", std::to_string(p)}));
    c.expect(text.exit_code == 0, "demo exits 0");
    const std::string local = " over Z_(" + std::to_string(p) + ")";
    c.expect(contains(text.output, "product: (1/1)[" + std::to_string(p * p) + "]" + local), "demo prints p^2");
    c.expect(contains(text.output, "direct-sum: (1/1)[" + std::to_string(p) + "]" + local), "demo prints p");
    c.expect(contains(text.output, "strict inclusion"), "demo reports strict inclusion");
  }
}

SamplerOptions criterion_sampler() {
  SamplerOptions s;
  s.max_size = 2;
  s.coeff_bound = 2;
  return s;
}

void integrality_ring(Checks& c) {
  auto g = share(FiniteGroup::symmetric(3));
  auto o3 = Order::group_ring(g, Integer(3));
  auto b3 = integrality_ring_bounds(*o3, criterion_sampler());
  c.expect(b3.certified, "Z_(3)[S3] certified");
  c.expect(b3.lower == o3->maximal_center(), "I = centre of the maximal order at 3");
  c.expect(!(o3->maximal_center() == o3->center()), "maximal centre differs from the centre at 3");
  auto o5 = Order::group_ring(g, Integer(5));
  auto b5 = integrality_ring_bounds(*o5, criterion_sampler());
  c.expect(b5.certified, "Z_(5)[S3] certified");
  c.expect(b5.lower == o5->center(), "I = centre at 5");
}

void denominator_ideal(Checks& c) {
  auto g = share(FiniteGroup::symmetric(3));
  auto o3 = Order::group_ring(g, Integer(3));
  auto d3 = denominator_bounds(*o3, criterion_sampler());
  // every character of S3 is rational and |G|/chi(1) in {6, 6, 3} has 3-valuation 1
  LocalLattice jacobinski = lattice_scale(o3->maximal_center(), Rational(3));
  c.expect(d3.certified, "Z_(3)[S3] bounds meet");
  c.expect(d3.lower == jacobinski && d3.upper == jacobinski, "H_3(S3) = F_3(S3)");
  c.expect(central_conductor(*o3).aggregate == jacobinski, "conductor matches the formula");
  auto o5 = Order::group_ring(g, Integer(5));
  auto d5 = denominator_bounds(*o5, criterion_sampler());
  c.expect(d5.certified, "Z_(5)[S3] bounds meet");
  c.expect(d5.upper == o5->center(), "H_5(S3) = centre");
}

// x lies in F_zeta iff x zeta' lies in zeta; checked on bases.
bool in_variant(const Order& o, const RatVector& x) {
  const auto& big = o.maximal_center().lattice();
  if (!lattice_membership(x, o.maximal_center())) return false;
  for (std::size_t i = 0; i < big.rank(); ++i)
    if (!lattice_membership(o.center_algebra().multiply(x, big.generator(i)), o.center())) return false;
  return true;
}

void conductor_variant_index(Checks& c) {
  for (unsigned a : {3u, 4u}) {
    auto o = Order::group_ring(share(FiniteGroup::dihedral(1u << a)), Integer(2));
    LocalLattice f = central_conductor(*o).aggregate, fz = conductor_variant(*o);
    c.expect(local_index_exponent(fz, f) == static_cast<long>(a) - 2, "[F_zeta : F] = 2^(a-2)");
    // defining property on a basis, then maximality: no x/2 outside F_zeta qualifies
    const auto& l = fz.lattice();
    bool closed = true;
    for (std::size_t i = 0; i < l.rank(); ++i) closed = closed && in_variant(*o, l.generator(i));
    c.expect(closed, "F_zeta basis satisfies the definition");
    bool maximal = true;
    for (unsigned mask = 1; mask < (1u << l.rank()); ++mask) {
      RatVector x(l.dimension(), Rational(0));
      for (std::size_t i = 0; i < l.rank(); ++i)
        if (mask >> i & 1u) {
          RatVector g = l.generator(i);
          for (std::size_t k = 0; k < x.size(); ++k) x[k] += g[k] / 2;
        }
      if (in_variant(*o, x)) maximal = false;
    }
    c.expect(maximal, "F_zeta is maximal");
    c.expect(lattice_contains_local(fz, f), "F inside F_zeta");
    // index from the determinants of the bases
    Rational ratio_det = det_exact(to_rational(f.lattice().basis()), Rational(1)) /
                         det_exact(to_rational(l.basis()), Rational(1));
    Integer den_ratio = 1;
    for (std::size_t k = 0; k < l.dimension(); ++k) den_ratio *= l.denominator();
    for (std::size_t k = 0; k < l.dimension(); ++k) den_ratio /= f.lattice().denominator();
    auto v = p_valuation(ratio_det * Rational(den_ratio), Integer(2));
    c.expect(v && *v == static_cast<long>(a) - 2, "determinant ratio has 2-valuation a - 2");
    auto out = run_cli("demo dihedral-variant " + std::to_string(a));
    c.expect(contains(out.output, "index: 2^" + std::to_string(a - 2)), "demo prints the index");
  }
}

AlgebraMatrix sharp_transpose_by_hand(const AlgebraMatrix& q) {
  AlgebraMatrix out = algebra_zero(q(0, 0).structure(), q.cols(), q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) out(j, i) = sharp(q(i, j));
  return out;
}

void duality(Checks& c) {
  Rng rng(99);
  int n = 0;
  for (const char* name : {"D6", "C4"}) {
    auto o = Order::group_ring(share(FiniteGroup::builtin(name)), Integer(2));
    const auto& w = *o->wedderburn();
    for (int t = 0; t < 50; ++t, ++n) {
      std::size_t b = 1 + static_cast<std::size_t>(rng.uniform(0, 1));
      PresentationNC q(o, random_group_matrix(o->algebra(), rng, b, b, 2));
      auto dual = dual_presentation(q);
      c.expect(dual.matrix() == sharp_transpose_by_hand(q.matrix()), "dual is the sharp transpose");
      c.expect(nrd(dual.matrix(), w) == conjugate_tuple(nrd(q.matrix(), w), w), "Nrd of the dual is the sharp of Nrd");
    }
  }
  c.expect(n == 100, "100 random matrices");

  int chains = 0;
  for (int attempt = 0; chains < 10 && attempt < 200; ++attempt) {
    auto o = Order::group_ring(share(FiniteGroup::builtin(attempt % 2 == 0 ? "C2" : "C3")), Integer(attempt % 4 < 2 ? 2 : 3));
    std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0, 1));
    auto qp = random_group_matrix(o->algebra(), rng, k, k, 2);
    auto f = random_group_matrix(o->algebra(), rng, k, k, 2);
    auto y = random_group_matrix(o->algebra(), rng, k, k, 1);
    auto q = y * qp * o->adjoint(f);
    bool degenerate = false;
    for (const auto& x : o->nrd(q)) degenerate |= is_zero(x);
    for (const auto& x : o->nrd(qp)) degenerate |= is_zero(x);
    if (degenerate) continue;
    auto report = four_term_check(o, q, qp, f);
    c.expect(report.equal && report.lhs == report.rhs, "four-term identity");
    ++chains;
  }
  c.expect(chains == 10, "10 chains constructed");
}

void delta_g(Checks& c) {
  Problem p = parse_problem(read_file(demo_path("delta-g_S3_3.fk")));
  auto g = share(FiniteGroup::builtin(p.order->group));
  auto o = Order::group_ring(g, p.order->prime);
  auto alg = o->algebra();
  PresentationNC pres(o, matrix_of(*o, *p.find_matrix("h")));

  // the rows span the kernel of (x, y) -> x (s - 1) + y (t - 1), so the module is Delta(G)
  std::size_t s = g->generators().at(0), t = g->generators().at(1), n = g->order();
  auto one = AlgebraElement::one(alg);
  auto ds = AlgebraElement::basis(alg, s) - one, dt = AlgebraElement::basis(alg, t) - one;
  IntMatrix map = int_zero_matrix(2 * n, n);
  for (std::size_t x = 0; x < n; ++x) {
    auto a = AlgebraElement::basis(alg, x) * ds, b = AlgebraElement::basis(alg, x) * dt;
    for (std::size_t k = 0; k < n; ++k) {
      map(x, k) = a.coeff(k).get_num();
      map(n + x, k) = b.coeff(k).get_num();
    }
  }
  IntMatrix ker = integer_left_kernel(map);
  std::vector<RatVector> kernel_rows;
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    RatVector v(2 * n);
    for (std::size_t k = 0; k < 2 * n; ++k) v[k] = Rational(ker(r, k));
    kernel_rows.push_back(v);
  }
  std::vector<std::vector<AlgebraElement>> rows;
  for (std::size_t r = 0; r < pres.relations(); ++r) rows.push_back(pres.matrix().row(r));
  c.expect(LocalLattice(Integer(3), row_module_lattice(*o, rows, 2)) ==
               LocalLattice(Integer(3), IntegerLattice::from_generators(2 * n, kernel_rows)),
           "shipped relations span the syzygies");

  std::vector<std::size_t> all(n);
  for (std::size_t k = 0; k < n; ++k) all[k] = k;
  RatVector third_norm = o->central_coords(group_sum(alg, all, ratio(1, 3)));
  auto f = fitt_presentation(pres);
  c.expect(f.lattice == span(Integer(3), o->center_dimension(), {third_norm}), "Fitt = (1/3) N_G Z_(3)");
  c.expect(f.nrd_generators.size() == 1 && f.nrd_generators[0] == third_norm, "Nrd of the presentation is (1/3) N_G");
  auto out = run_cli("--input " + demo_path("delta-g_S3_3.fk"));
  c.expect(contains(out.output, "h.nrd[0]: (2, 0, 0) = 1/3*g0 + 1/3*g1 + 1/3*g2 + 1/3*g3 + 1/3*g4 + 1/3*g5"),
           "CLI prints (1/3) N_G");
}

// ---- Morita

const long kRadicand = -5;
QuadraticOrder order5() { return QuadraticOrder(kRadicand); }
BaseRing ring5() { return BaseRing::quadratic(order5()); }
QuadNumber q5(long a, long b = 0) { return QuadNumber(kRadicand, a, b); }
QuadIdeal ideal5(std::vector<QuadNumber> gens) { return QuadIdeal::generated_by(order5(), gens); }
CommIdeal comm(const QuadIdeal& i) { return CommIdeal::generated_by(ring5(), i.generator_pair()); }

RingElement random_in(const std::vector<RingElement>& basis, Rng& rng, long bound) {
  RingElement x = basis.front() * QuadNumber(basis.front().radicand(), 0);
  for (const auto& b : basis) x = x + QuadNumber(b.radicand(), Rational(rng.uniform(-bound, bound))) * b;
  return x;
}

MoritaPresentation random_presentation(const EndOrder& o, Rng& rng, std::size_t a, std::size_t b, long bound) {
  const std::size_t n = o.size();
  RingMatrix flat(a * n, b * n, o.ring().element(0));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) flat(i * n + k, j * n + l) = random_in(o.entry_basis(k, l), rng, bound);
  return MoritaPresentation(o, flat);
}

void morita_suite(Checks& c) {
  auto twist = ideal5({q5(2), q5(1, 1)});
  auto search = is_principal(twist, Integer(10));
  c.expect(search.decided && !search.generator, "(2, 1 + sqrt(-5)) certified non-principal");
  // norm 2 and a^2 + 5 b^2 = 2 has no solution
  c.expect(twist.norm() == 2, "norm of the twist is 2");

  auto p = Progenerator::twisted(twist);
  auto end = EndOrder::twisted(twist);
  const std::vector<QuadIdeal> ideals = {ideal5({q5(3), q5(1, 1)}), ideal5({q5(3), q5(1, -1)}), ideal5({q5(2)}),
                                         ideal5({q5(1, 1)}), ideal5({q5(7), q5(3, 1)})};
  for (const auto& b : ideals) {
    auto hom = hom_quotient_presentation(p, comm(b));
    auto quotient = ideal_quotient_presentation(end, comm(b));
    auto lhs = fitting_ideal(hom), rhs = morita_fitt(quotient);
    c.expect(lhs == rhs, "Fitt_R Hom(P, R/b) = Fitt_Lambda(Lambda / b Lambda) for " + b.to_string());
    c.expect(lhs == oracle::fitt(hom), "brute-force cokernel agrees for " + b.to_string());
    c.expect(rhs == oracle::fitt(transport_presentation(quotient)), "brute-force transport agrees");
    c.expect(lhs == comm(b * b), "the ideal is b^2");
  }

  Rng rng(12);
  auto z = BaseRing::integers();
  for (std::size_t n : {2u, 3u}) {
    auto o = EndOrder::matrix_ring(z, n);
    for (int t = 0; t < 10; ++t) {
      auto pres = random_presentation(o, rng, 1 + static_cast<std::size_t>(rng.uniform(0, 1)), 1, 2);
      auto lambda = morita_fitt(pres);
      auto restricted = restriction_presentation(pres);
      c.expect(fitting_ideal(restricted) == lambda.power(static_cast<unsigned>(n)), "Fitt_R = Fitt_Lambda^n");
      oracle::FiniteModule m(restricted);
      if (m.finite() && m.size() < 100000) c.expect(oracle::fitt(restricted) == lambda.power(static_cast<unsigned>(n)), "oracle power law");
    }
  }

  Rng trng(77);
  const std::vector<QuadIdeal> twists = {twist, ideal5({q5(3), q5(1, 1)}), ideal5({q5(1)}), ideal5({q5(2), q5(1, -1)}),
                                         ideal5({q5(7), q5(3, 1)})};
  int oracle_checks = 0;
  for (int t = 0; t < 50; ++t) {
    std::size_t b = 1 + static_cast<std::size_t>(trng.uniform(0, 1));
    std::size_t a = b + static_cast<std::size_t>(trng.uniform(0, 1));
    RingMatrix h(a, b, ring5().element(0));
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) h(i, j) = ring5().element(Rational(trng.uniform(-2, 2)), Rational(trng.uniform(-2, 2)));
    CommPresentation pres(ring5(), h);
    const auto& tw = twists[static_cast<std::size_t>(trng.uniform(0, static_cast<long>(twists.size()) - 1))];
    c.expect(twist_check(pres, tw), "twist invariance");
    oracle::FiniteModule m(pres);
    if (m.finite() && m.size() < 2000 && oracle_checks < 8) {
      c.expect(oracle::fitt(twist_presentation(pres, tw)) == oracle::fitt(pres), "oracle twist invariance");
      ++oracle_checks;
    }
  }

  Rng arng(2024);
  const std::vector<EndOrder> orders = {EndOrder::matrix_ring(z, 2), end};
  for (const auto& o : orders)
    for (int t = 0; t < 25; ++t) {
      auto p1 = random_presentation(o, arng, 1 + static_cast<std::size_t>(arng.uniform(0, 1)), 1, 2);
      auto p2 = random_presentation(o, arng, 1, 1, 2);
      c.expect(morita_fitt(direct_sum(p1, p2)) == morita_fitt(p1) * morita_fitt(p2), "additivity");
    }
  auto demo = execute(demo_problem({"sqrt-5"}));
  c.expect(contains(demo.output, "twist.principal: no (decided)"), "demo reports the twist as non-principal");
}

void determinism(Checks& c) {
  std::vector<std::string> runs = {
      "demo abelian",
      "demo hereditary 2",
      "--input " + demo_path("dependence_on_h.fk"),
      "--input " + demo_path("delta-g_S3_3.fk"),
      "--input " + demo_path("delta-g_S3_3.fk") + " --command nrd",
      "--input " + demo_path("delta-g_S3_3.fk") + " --command adjoint",
      "--input " + demo_path("delta-g_S3_3.fk") + " --command dual",
      "--input " + demo_path("delta-g_S3_3.fk") + " --command conductor",
      "--input " + demo_path("delta-g_S3_3.fk") + " --command intring --seed 5",
      "--input " + demo_path("delta-g_S3_3.fk") + " --command denom --seed 9 --max-matrix-size 1",
      "--input " + demo_path("dihedral-variant_3.fk"),
      "--input " + demo_path("hereditary.fk"),
      "--input " + demo_path("s4-denom.fk"),
      "--input " + demo_path("s4-denom.fk") + " --seed 3 --coeff-bound 2",
      "--input " + demo_path("sqrt-5.fk"),
      "--input " + demo_path("abelian.fk"),
  };
  std::set<std::string> commands;
  for (const auto& args : runs) {
    auto a = run_cli(args + " --format machine"), b = run_cli(args + " --format machine");
    c.expect(a.status == b.status && a.status != 1, "status for " + args);
    c.expect(a.output == b.output, "byte-identical output for " + args);
    auto line = a.output.find("\ncommand ");
    if (line != std::string::npos) commands.insert(a.output.substr(line + 9, a.output.find('\n', line + 1) - line - 9));
  }
  c.expect(commands.size() >= 11, "every command exercised (" + std::to_string(commands.size()) + ")");
  // seeds reach the sampler
  auto s1 = run_cli("demo s4-denom --format machine --seed 1"), s2 = run_cli("demo s4-denom --format machine --seed 2");
  c.expect(s1.output.substr(0, 29) != s2.output.substr(0, 29), "seed is part of the echoed input");
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<void(Checks&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "commutative suite: diag(2,4), presentation invariance, direct sums", 10, commutative_suite},
      {2, "dependence on the presentation over M_2(Z_(3))", 1, dependence_on_h},
      {3, "generalized adjoint law on 200 random matrices", 60, adjoint_law},
      {4, "zero adjoint is the averaged commutator subgroup", 1e9, zero_adjoint},
      {5, "dihedral reduced norm Nrd(sigma + tau) = 2 e_1", 1e9, dihedral_norm},
      {6, "hereditary order is not Fitting-additive", 1e9, hereditary_non_additivity},
      {7, "integrality rings of Z_(3)[S3] and Z_(5)[S3]", 120, integrality_ring},
      {8, "denominator ideals of Z_(3)[S3] and Z_(5)[S3]", 300, denominator_ideal},
      {9, "conductor variant index for Z_(2)[D8] and Z_(2)[D16]", 60, conductor_variant_index},
      {10, "duality and the four-term identity", 1e9, duality},
      {11, "Fitting invariant of Delta_3(S3)", 1e9, delta_g},
      {12, "Morita suite over Z[sqrt(-5)] and M_n(Z)", 120, morita_suite},
      {13, "determinism of machine-format output", 1e9, determinism},
  };
  return all;
}

bool run_criterion(const Criterion& cr) {
  Checks checks;
  auto start = std::chrono::steady_clock::now();
  std::string error;
  try {
    cr.run(checks);
  } catch (const std::exception& e) {
    error = e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = seconds <= cr.budget_seconds;
  bool pass = error.empty() && checks.ok() && checks.count() > 0 && in_time;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << cr.id << ": " << (pass ? "PASS" : "FAIL") << "  " << cr.title << "  (" << checks.count()
       << " checks, " << seconds << " s)";
  if (!error.empty()) line << "  exception: " << error;
  if (!checks.ok()) line << "  " << checks.summary();
  if (!in_time) line << "  over the " << cr.budget_seconds << " s budget";
  std::cout << line.str() << std::endl;
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  bool all_pass = true, found = false;
  for (const auto& cr : criteria()) {
    if (only && cr.id != only) continue;
    found = true;
    all_pass = run_criterion(cr) && all_pass;
  }
  if (!found) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all_pass ? 0 : 1;
}
