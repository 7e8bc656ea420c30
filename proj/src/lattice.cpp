#include <fittkit/lattice.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace fittkit {

unsigned long long minor_cap() {
  static const unsigned long long cap = [] {
    const char* env = std::getenv("FITTKIT_MINOR_CAP");
    if (env != nullptr) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return v;
    }
    return 1000000ULL;
  }();
  return cap;
}

unsigned long long binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays exact; saturate instead of overflowing
    unsigned long long num = n - k + i;
    if (r > ~0ULL / num) return ~0ULL;
    r = r * num / i;
  }
  return r;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

IntMatrix int_zero_matrix(std::size_t r, std::size_t c) {
  if (r == 0) return IntMatrix::with_cols(c);
  return IntMatrix(r, c, Integer(0));
}

RatMatrix rat_zero_matrix(std::size_t r, std::size_t c) {
  if (r == 0) return RatMatrix::with_cols(c);
  return RatMatrix(r, c, Rational(0));
}

RatMatrix rat_identity(std::size_t n) { return RatMatrix::identity(n, Rational(0), Rational(1)); }

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out = rat_zero_matrix(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
  return d;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && is_zero(a(p, c))) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = hstack(m, rat_identity(n));
  if (n == 0) return m;
  auto piv = rref(a);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv = rat_zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

RatVector row_times(const RatVector& x, const RatMatrix& m) {
  if (x.size() != m.rows()) throw MathError("dimension mismatch in vector-matrix product");
  RatVector out(m.cols(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  return out;
}

std::optional<RatVector> solve_left(const RatMatrix& m, const RatVector& target) {
  // x m = t  <=>  m^T x^T = t^T
  if (target.size() != m.cols()) throw MathError("dimension mismatch in solve");
  const std::size_t k = m.rows();
  if (k == 0) {
    for (const auto& t : target)
      if (!is_zero(t)) return std::nullopt;
    return RatVector{};
  }
  RatMatrix a = rat_zero_matrix(m.cols(), k + 1);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < k; ++i) a(j, i) = m(i, j);
    a(j, k) = target[j];
  }
  auto piv = rref(a);
  RatVector x(k, Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (piv[r] == k) return std::nullopt;
    x[piv[r]] = a(r, k);
  }
  return x;
}

namespace {

void row_combine(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                 const Integer& v) {
  // row_a <- s row_a + t row_b ; row_b <- u row_a + v row_b
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer x = m(a, j), y = m(b, j);
    m(a, j) = s * x + t * y;
    m(b, j) = u * x + v * y;
  }
}

void col_combine(IntMatrix& m, std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                 const Integer& v) {
  // col_a <- s col_a + t col_b ; col_b <- u col_a + v col_b
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer x = m(i, a), y = m(i, b);
    m(i, a) = s * x + t * y;
    m(i, b) = u * x + v * y;
  }
}

void row_addmul(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (is_zero(f)) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

struct Bezout {
  Integer g, s, t;  // g = s a + t b, g >= 0
};

Bezout bezout(const Integer& a, const Integer& b) {
  Bezout r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HnfResult hnf_transform(const IntMatrix& input) {
  HnfResult res;
  res.h = input;
  const std::size_t m = input.rows(), n = input.cols();
  res.u = m == 0 ? IntMatrix::with_cols(0) : IntMatrix::identity(m, Integer(0), Integer(1));
  IntMatrix& a = res.h;
  IntMatrix& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && is_zero(a(p, c))) ++p;
    if (p == m) continue;
    a.swap_rows(r, p);
    u.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (is_zero(a(i, c))) continue;
      Integer x = a(r, c), y = a(i, c);
      if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
        Integer q = -(y / x);
        row_addmul(a, i, r, q);
        row_addmul(u, i, r, q);
        continue;
      }
      Bezout b = bezout(x, y);
      Integer xg = x / b.g, yg = y / b.g;
      row_combine(a, r, i, b.s, b.t, -yg, xg);
      row_combine(u, r, i, b.s, b.t, -yg, xg);
    }
    if (sgn(a(r, c)) < 0) {
      negate_row(a, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a(i, c), a(r, c));
      if (is_zero(q)) continue;
      row_addmul(a, i, r, -q);
      row_addmul(u, i, r, -q);
    }
    ++r;
  }
  res.rank = r;
  return res;
}

IntMatrix hnf_rows(const IntMatrix& a) {
  if (a.rows() == 0) return IntMatrix::with_cols(a.cols());
  HnfResult h = hnf_transform(a);
  IntMatrix out = IntMatrix::with_cols(a.cols());
  for (std::size_t i = 0; i < h.rank; ++i) out.append_row(h.h.row(i));
  return out;
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
  if (a.rows() == 0) return IntMatrix::with_cols(0);
  HnfResult h = hnf_transform(a);
  IntMatrix k = IntMatrix::with_cols(a.rows());
  for (std::size_t i = h.rank; i < a.rows(); ++i) k.append_row(h.u.row(i));
  return hnf_rows(k);
}

SnfResult snf(const IntMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  SnfResult res;
  IntMatrix a = input;
  res.u = m == 0 ? IntMatrix::with_cols(0) : IntMatrix::identity(m, Integer(0), Integer(1));
  res.v = n == 0 ? IntMatrix::with_cols(0) : IntMatrix::identity(n, Integer(0), Integer(1));
  res.v_inv = res.v;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  IntMatrix& vi = res.v_inv;
  const std::size_t k = std::min(m, n);
  for (std::size_t t = 0; t < k; ++t) {
    // smallest nonzero entry becomes the pivot
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!is_zero(a(i, j)) && (pi == m || abs(a(i, j)) < abs(a(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m) break;
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);
    vi.swap_rows(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (is_zero(a(i, t))) continue;
        Integer x = a(t, t), y = a(i, t);
        if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
          Integer q = -(y / x);
          row_addmul(a, i, t, q);
          row_addmul(u, i, t, q);
        } else {
          Bezout b = bezout(x, y);
          Integer xg = x / b.g, yg = y / b.g;
          row_combine(a, t, i, b.s, b.t, -yg, xg);
          row_combine(u, t, i, b.s, b.t, -yg, xg);
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (is_zero(a(t, j))) continue;
        Integer x = a(t, t), y = a(t, j);
        Integer s, tt, uu, vv;
        if (mpz_divisible_p(y.get_mpz_t(), x.get_mpz_t())) {
          s = 1, tt = 0, uu = -(y / x), vv = 1;
        } else {
          Bezout b = bezout(x, y);
          s = b.s, tt = b.t, uu = -(y / b.g), vv = x / b.g;
        }
        // new col_t = s col_t + tt col_j ; new col_j = uu col_t + vv col_j
        col_combine(a, t, j, s, tt, uu, vv);
        col_combine(v, t, j, s, tt, uu, vv);
        // inverse acts on rows of v_inv: F = [[s, uu],[tt, vv]], F^{-1} = [[vv, -uu],[-tt, s]]
        row_combine(vi, t, j, vv, -uu, -tt, s);
        clean = false;
      }
      if (!clean) {
        bool col_clean = true;
        for (std::size_t i = t + 1; i < m; ++i)
          if (!is_zero(a(i, t))) col_clean = false;
        if (!col_clean) continue;
      }
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_addmul(a, t, bad, Integer(1));
      row_addmul(u, t, bad, Integer(1));
    }
    if (sgn(a(t, t)) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }
  res.diag.resize(k);
  for (std::size_t i = 0; i < k; ++i) res.diag[i] = a(i, i);
  return res;
}

IntegerLattice::IntegerLattice(std::size_t dimension) : n_(dimension), basis_(IntMatrix::with_cols(dimension)) {}

IntegerLattice IntegerLattice::standard(std::size_t n) {
  IntegerLattice l(n);
  if (n > 0) l.basis_ = IntMatrix::identity(n, Integer(0), Integer(1));
  return l;
}

IntegerLattice IntegerLattice::from_scaled_rows(Integer denominator, const IntMatrix& rows) {
  if (sgn(denominator) <= 0) throw MathError("lattice denominator must be positive");
  IntegerLattice l(rows.cols());
  IntMatrix h = hnf_rows(rows);
  if (h.rows() == 0) return l;
  Integer g = denominator;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), h(i, j).get_mpz_t());
  if (g != 1)
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
  l.d_ = denominator / g;
  l.basis_ = std::move(h);
  return l;
}

IntegerLattice IntegerLattice::from_generators(const RatMatrix& gens) {
  Integer d = common_denominator(gens);
  IntMatrix rows = int_zero_matrix(gens.rows(), gens.cols());
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) {
      Rational x = gens(i, j) * d;
      rows(i, j) = x.get_num();
    }
  return from_scaled_rows(d, rows);
}

IntegerLattice IntegerLattice::from_generators(std::size_t dimension, const std::vector<RatVector>& gens) {
  RatMatrix m = RatMatrix::with_cols(dimension);
  for (const auto& g : gens) {
    if (g.size() != dimension) throw MathError("generator dimension mismatch");
    m.append_row(g);
  }
  return from_generators(m);
}

RatMatrix IntegerLattice::generators() const {
  RatMatrix m = rat_zero_matrix(rank(), n_);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = ratio(basis_(i, j), d_);
  return m;
}

RatVector IntegerLattice::generator(std::size_t i) const {
  RatVector v(n_);
  for (std::size_t j = 0; j < n_; ++j) v[j] = ratio(basis_(i, j), d_);
  return v;
}

LocalLattice::LocalLattice(Integer p, const IntegerLattice& lattice) : p_(std::move(p)), l_(lattice.dimension()) {
  if (!is_prime(p_)) throw MathError("local lattice needs a prime, got " + to_string(p_));
  if (lattice.is_zero()) return;
  const IntMatrix& b = lattice.basis();
  SnfResult s = snf(b);
  IntMatrix rows = IntMatrix::with_cols(lattice.dimension());
  for (std::size_t i = 0; i < lattice.rank(); ++i) {
    Integer scale = p_part(s.diag[i], p_);
    std::vector<Integer> r = s.v_inv.row(i);
    for (auto& x : r) x *= scale;
    rows.append_row(r);
  }
  l_ = IntegerLattice::from_scaled_rows(p_part(lattice.denominator(), p_), rows);
}

StructureAlgebra::StructureAlgebra(std::vector<std::string> labels, std::vector<Rational> constants,
                                   std::optional<RatMatrix> trace_form)
    : n_(labels.size()), labels_(std::move(labels)), c_(std::move(constants)) {
  if (c_.size() != n_ * n_ * n_) throw MathError("structure constants need dimension^3 entries");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (constant(i, j, k) != constant(j, i, k)) throw MathError("structure constants are not commutative");
  // (e_i e_j) e_k = e_i (e_j e_k)
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        for (std::size_t l = 0; l < n_; ++l) {
          Rational lhs = 0, rhs = 0;
          for (std::size_t m = 0; m < n_; ++m) {
            lhs += constant(i, j, m) * constant(m, k, l);
            rhs += constant(j, k, m) * constant(i, m, l);
          }
          if (lhs != rhs) throw MathError("structure constants are not associative");
        }
  if (trace_form) {
    if (trace_form->rows() != n_ || trace_form->cols() != n_) throw MathError("trace form has the wrong shape");
    trace_form_ = *trace_form;
  } else {
    // trace of the regular representation
    RatVector tr(n_, Rational(0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) tr[i] += constant(i, j, j);
    trace_form_ = rat_zero_matrix(n_, n_);
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t k = 0; k < n_; ++k) trace_form_(a, b) += constant(a, b, k) * tr[k];
  }
}

StructureAlgebra StructureAlgebra::rationals() { return StructureAlgebra({"1"}, {Rational(1)}); }

StructureAlgebra StructureAlgebra::diagonal(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Rational> c(n * n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("e" + std::to_string(i + 1));
    c[(i * n + i) * n + i] = 1;
  }
  return StructureAlgebra(std::move(labels), std::move(c));
}

RatVector StructureAlgebra::multiply(const RatVector& x, const RatVector& y) const {
  if (x.size() != n_ || y.size() != n_) throw MathError("dimension mismatch in algebra product");
  RatVector out(n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (is_zero(y[j])) continue;
      Rational xy = x[i] * y[j];
      for (std::size_t k = 0; k < n_; ++k)
        if (!is_zero(constant(i, j, k))) out[k] += xy * constant(i, j, k);
    }
  }
  return out;
}

RatMatrix StructureAlgebra::right_mult_matrix(const RatVector& y) const {
  RatMatrix m = rat_zero_matrix(n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    RatVector e(n_, Rational(0));
    e[i] = 1;
    m.set_row(i, multiply(e, y));
  }
  return m;
}

Rational StructureAlgebra::trace(const RatVector& x) const {
  // Tr(x) = Tr(x * 1) needs a unit; use the Gram matrix when it exists, else the regular trace
  if (auto e = one()) {
    Rational t = 0;
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t += x[a] * trace_form_(a, b) * (*e)[b];
    return t;
  }
  Rational t = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t += x[i] * constant(i, j, j);
  return t;
}

std::optional<RatVector> StructureAlgebra::one() const {
  // e with e * b_j = b_j for all j: solve sum_i e_i c_{i j k} = delta_{jk}
  RatMatrix m = rat_zero_matrix(n_, n_ * n_);
  RatVector target(n_ * n_, Rational(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k) m(i, j * n_ + k) = constant(i, j, k);
  for (std::size_t j = 0; j < n_; ++j) target[j * n_ + j] = 1;
  return solve_left(m, target);
}

bool lattice_membership(const RatVector& x, const IntegerLattice& lattice) {
  if (x.size() != lattice.dimension()) throw MathError("dimension mismatch in membership test");
  auto c = solve_left(lattice.generators(), x);
  if (!c) return false;
  for (const auto& v : *c)
    if (v.get_den() != 1) return false;
  return true;
}

bool lattice_membership(const RatVector& x, const LocalLattice& lattice) {
  if (x.size() != lattice.dimension()) throw MathError("dimension mismatch in membership test");
  auto c = solve_left(lattice.lattice().generators(), x);
  if (!c) return false;
  for (const auto& v : *c)
    if (mpz_divisible_p(v.get_den_mpz_t(), lattice.prime().get_mpz_t())) return false;
  return true;
}

namespace {

void require_same_dimension(std::size_t a, std::size_t b) {
  if (a != b) throw MathError("lattice dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

void require_same_prime(const LocalLattice& a, const LocalLattice& b) {
  if (a.prime() != b.prime())
    throw MathError("prime mismatch: " + to_string(a.prime()) + " vs " + to_string(b.prime()));
  require_same_dimension(a.dimension(), b.dimension());
}

}  // namespace

IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  require_same_dimension(a.dimension(), b.dimension());
  return IntegerLattice::from_generators(vstack(a.generators(), b.generators()));
}

IntegerLattice lattice_product(const IntegerLattice& a, const IntegerLattice& b, const StructureAlgebra& alg) {
  require_same_dimension(a.dimension(), b.dimension());
  require_same_dimension(a.dimension(), alg.dimension());
  std::vector<RatVector> gens;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    RatVector x = a.generator(i);
    for (std::size_t j = 0; j < b.rank(); ++j) gens.push_back(alg.multiply(x, b.generator(j)));
  }
  return IntegerLattice::from_generators(a.dimension(), gens);
}

IntegerLattice lattice_scale(const IntegerLattice& a, const Rational& c) {
  RatMatrix g = a.generators();
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= c;
  IntegerLattice out = IntegerLattice::from_generators(g);
  return a.is_zero() ? IntegerLattice(a.dimension()) : out;
}

IntegerLattice lattice_preimage(const IntegerLattice& domain, const RatMatrix& t, const IntegerLattice& target) {
  require_same_dimension(domain.dimension(), t.rows());
  require_same_dimension(target.dimension(), t.cols());
  if (domain.is_zero()) return IntegerLattice(domain.dimension());
  // c * (B t) - y * C = 0 with B, C the generator matrices of domain and target
  RatMatrix bt = domain.generators() * t;
  RatMatrix c = target.generators();
  RatMatrix stacked = bt;
  for (std::size_t i = 0; i < c.rows(); ++i) {
    RatVector r = c.row(i);
    for (auto& x : r) x = -x;
    stacked.append_row(r);
  }
  Integer den = common_denominator(stacked);
  IntMatrix ints = int_zero_matrix(stacked.rows(), stacked.cols());
  for (std::size_t i = 0; i < stacked.rows(); ++i)
    for (std::size_t j = 0; j < stacked.cols(); ++j) ints(i, j) = Rational(stacked(i, j) * den).get_num();
  IntMatrix ker = integer_left_kernel(ints);
  const std::size_t r = domain.rank();
  RatMatrix coeffs = rat_zero_matrix(ker.rows(), r);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) coeffs(i, j) = Rational(ker(i, j));
  if (ker.rows() == 0) return IntegerLattice(domain.dimension());
  return IntegerLattice::from_generators(coeffs * domain.generators());
}

IntegerLattice lattice_intersection(const IntegerLattice& a, const IntegerLattice& b) {
  require_same_dimension(a.dimension(), b.dimension());
  return lattice_preimage(a, rat_identity(a.dimension()), b);
}

LocalLattice lattice_combine(const LocalLattice& a, const LocalLattice& b, CombineMode mode,
                             const StructureAlgebra* alg) {
  require_same_prime(a, b);
  if (mode == CombineMode::sum) return LocalLattice(a.prime(), lattice_sum(a.lattice(), b.lattice()));
  if (alg == nullptr) throw MathError("product and conductor need a structure algebra");
  require_same_dimension(a.dimension(), alg->dimension());
  if (mode == CombineMode::product) return LocalLattice(a.prime(), lattice_product(a.lattice(), b.lattice(), *alg));

  // conductor {x : x a subset of b}
  const std::size_t n = a.dimension();
  if (a.is_zero()) return LocalLattice::standard(a.prime(), n);
  const std::size_t s = a.rank();
  RatMatrix t = rat_zero_matrix(n, n * s);
  for (std::size_t g = 0; g < s; ++g) {
    RatMatrix m = alg->right_mult_matrix(a.lattice().generator(g));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, g * n + j) = m(i, j);
  }
  if (rank(t) < n) throw MathError("conductor is not a lattice: multiplication by the first lattice is not injective");
  // target b^s, and a domain containing every solution: x = (x t) * S for a left inverse S of t
  RatMatrix bg = b.lattice().generators();
  RatMatrix target = rat_zero_matrix(bg.rows() * s, n * s);
  for (std::size_t g = 0; g < s; ++g)
    for (std::size_t i = 0; i < bg.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) target(g * bg.rows() + i, g * n + j) = bg(i, j);
  IntegerLattice target_l = IntegerLattice::from_generators(target);
  if (target_l.is_zero()) return LocalLattice::zero(a.prime(), n);
  RatMatrix tt = transpose(t);
  auto gram_inv = inverse(t * tt);
  RatMatrix left_inv = tt * *gram_inv;
  IntegerLattice domain = IntegerLattice::from_generators(target_l.generators() * left_inv);
  return LocalLattice(a.prime(), lattice_preimage(domain, t, target_l));
}

LocalLattice lattice_intersection(const LocalLattice& a, const LocalLattice& b) {
  require_same_prime(a, b);
  return LocalLattice(a.prime(), lattice_intersection(a.lattice(), b.lattice()));
}

LocalLattice lattice_dual(const LocalLattice& l, const StructureAlgebra& alg) {
  require_same_dimension(l.dimension(), alg.dimension());
  const std::size_t n = l.dimension();
  if (rank(alg.trace_form()) < n) throw MathError("trace form is degenerate");
  if (!l.lattice().is_full_rank()) throw MathError("dual needs a full-rank lattice");
  // x G B^T integral  <=>  x in Z-span of rows of (G B^T)^{-1}
  auto inv = inverse(alg.trace_form() * transpose(l.lattice().generators()));
  return LocalLattice(l.prime(), IntegerLattice::from_generators(*inv));
}

LocalLattice lattice_scale(const LocalLattice& a, const Rational& c) {
  return LocalLattice(a.prime(), lattice_scale(a.lattice(), c));
}

LocalLattice lattice_image(const LocalLattice& a, const RatMatrix& t) {
  require_same_dimension(a.dimension(), t.rows());
  if (a.is_zero()) return LocalLattice::zero(a.prime(), t.cols());
  return LocalLattice(a.prime(), IntegerLattice::from_generators(a.lattice().generators() * t));
}

bool lattice_contains_local(const LocalLattice& big, const LocalLattice& small) {
  require_same_prime(big, small);
  for (std::size_t i = 0; i < small.rank(); ++i)
    if (!lattice_membership(small.lattice().generator(i), big)) return false;
  return true;
}

bool lattice_equal_local(const LocalLattice& a, const LocalLattice& b) {
  return lattice_contains_local(a, b) && lattice_contains_local(b, a);
}

long local_index_exponent(const LocalLattice& big, const LocalLattice& small) {
  require_same_prime(big, small);
  if (big.rank() != small.rank()) throw MathError("index needs lattices of equal rank");
  if (!lattice_contains_local(big, small)) throw MathError("index needs the second lattice inside the first");
  const std::size_t r = big.rank();
  if (r == 0) return 0;
  RatMatrix coords = rat_zero_matrix(r, r);
  RatMatrix bg = big.lattice().generators();
  for (std::size_t i = 0; i < r; ++i) coords.set_row(i, *solve_left(bg, small.lattice().generator(i)));
  Rational d = det_exact(coords, Rational(1));
  auto v = p_valuation(d, big.prime());
  return *v;
}

std::string describe(const IntegerLattice& l) {
  std::ostringstream os;
  os << "(1/" << to_string(l.denominator()) << ")[";
  for (std::size_t i = 0; i < l.rank(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < l.dimension(); ++j) {
      if (j) os << ' ';
      os << to_string(l.basis()(i, j));
    }
  }
  os << ']';
  return os.str();
}

}  // namespace fittkit
