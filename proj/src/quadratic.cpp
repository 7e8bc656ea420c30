#include <fittkit/quadratic.hpp>

#include <map>
#include <memory>
#include <mutex>

namespace fittkit {

namespace {

void require_same_radicand(const QuadNumber& x, const QuadNumber& y) {
  if (x.radicand() != y.radicand() && !is_zero(x.root_part()) && !is_zero(y.root_part()))
    throw MathError("mixing square roots of " + std::to_string(x.radicand()) + " and " + std::to_string(y.radicand()));
}

long radicand_of(const QuadNumber& x, const QuadNumber& y) { return is_zero(x.root_part()) ? y.radicand() : x.radicand(); }

}  // namespace

QuadNumber operator+(const QuadNumber& x, const QuadNumber& y) {
  require_same_radicand(x, y);
  return QuadNumber(radicand_of(x, y), x.a_ + y.a_, x.b_ + y.b_);
}

QuadNumber operator-(const QuadNumber& x, const QuadNumber& y) {
  require_same_radicand(x, y);
  return QuadNumber(radicand_of(x, y), x.a_ - y.a_, x.b_ - y.b_);
}

QuadNumber operator*(const QuadNumber& x, const QuadNumber& y) {
  require_same_radicand(x, y);
  long d = radicand_of(x, y);
  return QuadNumber(d, x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
}

QuadNumber QuadNumber::inverse() const {
  Rational n = norm();
  if (is_zero(n)) throw MathError("division by zero in Q(sqrt(" + std::to_string(d_) + "))");
  return QuadNumber(d_, a_ / n, -b_ / n);
}

std::string QuadNumber::to_string() const {
  if (is_zero(b_)) return fittkit::to_string(a_);
  std::string root = "sqrt(" + std::to_string(d_) + ")";
  std::string bpart;
  if (b_ == 1)
    bpart = root;
  else if (b_ == -1)
    bpart = "-" + root;
  else
    bpart = fittkit::to_string(b_) + "*" + root;
  if (is_zero(a_)) return bpart;
  if (sgn(b_) > 0) return fittkit::to_string(a_) + "+" + bpart;
  return fittkit::to_string(a_) + bpart;
}

QuadraticOrder::QuadraticOrder(long d) : d_(d) {
  if (d != -1 && d != -2 && d != -5 && d != -6)
    throw MathError("supported quadratic orders are Z[sqrt(d)] for d in {-1, -2, -5, -6}, got " + std::to_string(d));
}

const StructureAlgebra& QuadraticOrder::algebra() const {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<StructureAlgebra>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d_];
  if (!slot) {
    std::vector<Rational> c(8, Rational(0));
    c[0] = 1;             // 1 * 1 = 1
    c[(0 * 2 + 1) * 2 + 1] = 1;  // 1 * r = r
    c[(1 * 2 + 0) * 2 + 1] = 1;  // r * 1 = r
    c[(1 * 2 + 1) * 2 + 0] = d_;  // r * r = d
    slot = std::make_unique<StructureAlgebra>(std::vector<std::string>{"1", "sqrt(" + std::to_string(d_) + ")"}, c);
  }
  return *slot;
}

std::string QuadraticOrder::name() const { return "Z[sqrt(" + std::to_string(d_) + ")]"; }

QuadIdeal QuadIdeal::generated_by(const QuadraticOrder& order, const std::vector<QuadNumber>& gens) {
  std::vector<RatVector> rows;
  for (const auto& g : gens) {
    if (g.radicand() != order.radicand() && !is_zero(g.root_part()))
      throw MathError("ideal generator " + g.to_string() + " is not in " + order.name());
    QuadNumber h(order.radicand(), g.rational_part(), g.root_part());
    rows.push_back(h.coords());
    rows.push_back((h * order.root()).coords());
  }
  IntegerLattice l = IntegerLattice::from_generators(2, rows);
  if (l.is_zero()) throw MathError("the zero ideal is not allowed here");
  return QuadIdeal(order, l);
}

QuadIdeal QuadIdeal::from_lattice(const QuadraticOrder& order, const IntegerLattice& lattice) {
  if (lattice.dimension() != 2) throw MathError("quadratic ideal lattices live in Q^2");
  if (!lattice.is_full_rank()) throw MathError("quadratic ideal lattice must have rank 2");
  QuadIdeal out(order, lattice);
  for (const auto& g : out.generator_pair())
    if (!out.contains(g * order.root())) throw MathError("lattice " + describe(lattice) + " is not an ideal of " + order.name());
  return out;
}

std::vector<QuadNumber> QuadIdeal::generator_pair() const {
  std::vector<QuadNumber> out;
  for (std::size_t i = 0; i < lattice_.rank(); ++i) {
    RatVector g = lattice_.generator(i);
    out.push_back(order_.element(g[0], g[1]));
  }
  return out;
}

bool QuadIdeal::contains(const QuadNumber& x) const {
  if (x.radicand() != order_.radicand() && !is_zero(x.root_part())) return false;
  return lattice_membership(RatVector{x.rational_part(), x.root_part()}, lattice_);
}

bool QuadIdeal::is_integral() const { return lattice_.denominator() == 1; }

Rational QuadIdeal::norm() const {
  Rational det = det_exact(lattice_.generators(), Rational(1));
  return abs(det);
}

QuadIdeal QuadIdeal::conjugate() const {
  std::vector<QuadNumber> g;
  for (const auto& x : generator_pair()) g.push_back(x.conjugate());
  return generated_by(order_, g);
}

QuadIdeal QuadIdeal::inverse() const {
  // I * conj(I) = N(I) R
  QuadIdeal c = conjugate();
  Rational n = norm();
  std::vector<QuadNumber> g;
  for (const auto& x : c.generator_pair()) g.push_back(order_.element(x.rational_part() / n, x.root_part() / n));
  return generated_by(order_, g);
}

QuadIdeal operator*(const QuadIdeal& a, const QuadIdeal& b) {
  if (!(a.order_ == b.order_)) throw MathError("ideals of different orders");
  std::vector<QuadNumber> g;
  for (const auto& x : a.generator_pair())
    for (const auto& y : b.generator_pair()) g.push_back(x * y);
  return QuadIdeal::generated_by(a.order_, g);
}

QuadIdeal operator+(const QuadIdeal& a, const QuadIdeal& b) {
  if (!(a.order_ == b.order_)) throw MathError("ideals of different orders");
  std::vector<QuadNumber> g = a.generator_pair();
  for (const auto& y : b.generator_pair()) g.push_back(y);
  return QuadIdeal::generated_by(a.order_, g);
}

std::string QuadIdeal::to_string() const {
  std::string s = "(";
  auto g = generator_pair();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ", ";
    s += g[i].to_string();
  }
  return s + ")";
}

PrincipalSearch is_principal(const QuadIdeal& ideal, const Integer& bound) {
  const QuadraticOrder& order = ideal.order();
  const long d = order.radicand();
  // scale to an integral ideal J = den * I; I is principal iff J is
  const Integer& den = ideal.lattice().denominator();
  QuadIdeal j = QuadIdeal::generated_by(order, [&] {
    std::vector<QuadNumber> g;
    for (const auto& x : ideal.generator_pair()) g.push_back(order.element(x.rational_part() * den, x.root_part() * den));
    return g;
  }());
  Integer n = j.norm().get_num();
  // a^2 - d b^2 = n with d < 0 forces |a| <= sqrt(n), |b| <= sqrt(n / |d|)
  Integer amax = sqrt(n);
  Integer bmax = sqrt(n / Integer(-d));
  PrincipalSearch res;
  Integer alim = amax < bound ? amax : bound;
  Integer blim = bmax < bound ? bmax : bound;
  res.decided = alim == amax && blim == bmax;
  for (Integer b = 0; b <= blim; ++b) {
    Integer rest = n + Integer(d) * b * b;
    if (sgn(rest) < 0) break;
    Integer a = sqrt(rest);
    if (a * a != rest || a > alim) continue;
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        QuadNumber x = order.element(Rational(a * sa), Rational(b * sb));
        if (j.contains(x)) {
          res.decided = true;
          res.generator = order.element(x.rational_part() / den, x.root_part() / den);
          return res;
        }
      }
  }
  return res;
}

}  // namespace fittkit
