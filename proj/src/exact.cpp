#include <fittkit/exact.hpp>

#include <map>
#include <memory>
#include <mutex>

namespace fittkit {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw MathError("empty numeric literal");
  std::size_t slash = text.find('/');
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw MathError("not an exact rational literal: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer d(den);
  if (sgn(d) == 0) throw MathError("zero denominator in '" + text + "'");
  Rational r(Integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

bool is_prime(const Integer& p) { return p > 1 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0; }

namespace {
void require_prime(const Integer& p) {
  if (!is_prime(p)) throw MathError("expected a prime, got " + p.get_str());
}

long raw_valuation(Integer x, const Integer& p) {
  long v = 0;
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}
}  // namespace

std::optional<long> p_valuation(const Rational& x, const Integer& p) {
  require_prime(p);
  if (sgn(x) == 0) return std::nullopt;
  return raw_valuation(x.get_num(), p) - raw_valuation(x.get_den(), p);
}

long p_valuation(const Integer& x, const Integer& p) {
  require_prime(p);
  if (sgn(x) == 0) throw MathError("valuation of zero");
  return raw_valuation(x, p);
}

Integer prime_to_p_part(const Integer& x, const Integer& p) {
  Integer y = abs(x);
  if (sgn(y) == 0) return y;
  while (mpz_divisible_p(y.get_mpz_t(), p.get_mpz_t())) mpz_divexact(y.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t());
  return y;
}

Integer p_part(const Integer& x, const Integer& p) {
  if (sgn(x) == 0) return 0;
  Integer r;
  mpz_divexact(r.get_mpz_t(), Integer(abs(x)).get_mpz_t(), prime_to_p_part(x, p).get_mpz_t());
  return r;
}

Integer exact_div(const Integer& a, const Integer& b) {
  if (sgn(b) == 0) throw MathError("division by zero");
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

LocalScalar::LocalScalar(Integer p, Rational value) : p_(std::move(p)), v_(std::move(value)) {
  require_prime(p_);
  if (mpz_divisible_p(v_.get_den_mpz_t(), p_.get_mpz_t()))
    throw MathError(to_string(v_) + " is not in Z_(" + p_.get_str() + ")");
}

bool LocalScalar::is_unit() const {
  return sgn(v_) != 0 && !mpz_divisible_p(v_.get_num_mpz_t(), p_.get_mpz_t());
}

namespace {
const Integer& same_prime(const LocalScalar& a, const LocalScalar& b) {
  if (a.prime() != b.prime()) throw MathError("local scalars at different primes");
  return a.prime();
}
}  // namespace

LocalScalar operator+(const LocalScalar& a, const LocalScalar& b) {
  return LocalScalar(same_prime(a, b), a.value() + b.value());
}
LocalScalar operator-(const LocalScalar& a, const LocalScalar& b) {
  return LocalScalar(same_prime(a, b), a.value() - b.value());
}
LocalScalar operator*(const LocalScalar& a, const LocalScalar& b) {
  return LocalScalar(same_prime(a, b), a.value() * b.value());
}

LocalScalar exact_div(const LocalScalar& a, const LocalScalar& b) {
  const Integer& p = same_prime(a, b);
  if (is_zero(b)) throw MathError("division by zero");
  return LocalScalar(p, a.value() / b.value());
}

unsigned gcd_u(unsigned a, unsigned b) {
  while (b) {
    unsigned t = a % b;
    a = b;
    b = t;
  }
  return a;
}

unsigned lcm_u(unsigned a, unsigned b) { return a / gcd_u(a, b) * b; }

unsigned euler_phi(unsigned m) {
  unsigned result = m;
  for (unsigned q = 2; q * q <= m; ++q) {
    if (m % q) continue;
    while (m % q == 0) m /= q;
    result -= result / q;
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

using Poly = std::vector<Integer>;

// a / b for monic b with exact quotient.
Poly poly_divexact(Poly a, const Poly& b) {
  std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    Integer c = a[i];
    q[i - db] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (sgn(a[i]) != 0) throw MathError("inexact polynomial division");
  return q;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned m) {
  if (m == 0) throw MathError("cyclotomic polynomial of order 0");
  static std::mutex mu;
  static std::map<unsigned, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  Poly p(m + 1, 0);
  p[0] = -1;
  p[m] = 1;
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divexact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(m, p);
  return p;
}

CyclotomicField::CyclotomicField(unsigned m) : m_(m), phi_(euler_phi(m)), poly_(fittkit::cyclotomic_polynomial(m)) {
  powers_.reserve(m);
  std::vector<Integer> cur(phi_, 0);
  cur[0] = 1;
  for (unsigned j = 0; j < m; ++j) {
    powers_.push_back(cur);
    // multiply by zeta and reduce with the monic Phi_m
    Integer top = cur[phi_ - 1];
    for (unsigned i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (sgn(top) != 0)
      for (unsigned i = 0; i < phi_; ++i) cur[i] -= top * poly_[i];
  }
  for (unsigned k = 1; k <= m; ++k)
    if (gcd_u(k % m, m) == 1 || m == 1) units_.push_back(k % m);
  if (m == 1) units_ = {0};
}

const CyclotomicField& CyclotomicField::get(unsigned m) {
  if (m == 0) throw MathError("conductor must be positive");
  static std::mutex mu;
  static std::map<unsigned, std::unique_ptr<CyclotomicField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto it = fields.find(m);
  if (it == fields.end()) it = fields.emplace(m, std::unique_ptr<CyclotomicField>(new CyclotomicField(m))).first;
  return *it->second;
}

GaloisElement::GaloisElement(unsigned m, long k) : m_(m) {
  if (m == 0) throw MathError("conductor must be positive");
  long r = k % static_cast<long>(m);
  if (r < 0) r += m;
  k_ = static_cast<unsigned>(r);
  if (gcd_u(k_, m) != 1 && m != 1) throw MathError("Galois residue not coprime to conductor");
  if (m == 1) k_ = 0;
}

GaloisElement GaloisElement::then(const GaloisElement& other) const {
  if (other.m_ != m_) throw MathError("conductor mismatch");
  return GaloisElement(m_, static_cast<long>((static_cast<unsigned long>(k_) * other.k_) % m_));
}

CyclotomicNumber::CyclotomicNumber(unsigned m, const Rational& c) : field_(&CyclotomicField::get(m)) {
  c_.assign(field_->degree(), Rational(0));
  c_[0] = c;
}

CyclotomicNumber::CyclotomicNumber(unsigned m, std::vector<Rational> coeffs) : field_(&CyclotomicField::get(m)) {
  unsigned phi = field_->degree();
  c_.assign(phi, Rational(0));
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (is_zero(coeffs[j])) continue;
    const auto& pw = field_->power(static_cast<unsigned>(j % m));
    for (unsigned i = 0; i < phi; ++i)
      if (sgn(pw[i]) != 0) c_[i] += coeffs[j] * pw[i];
  }
}

CyclotomicNumber CyclotomicNumber::zeta(unsigned m, long j) {
  long r = j % static_cast<long>(m);
  if (r < 0) r += m;
  const auto& f = CyclotomicField::get(m);
  const auto& pw = f.power(static_cast<unsigned>(r));
  std::vector<Rational> c(pw.begin(), pw.end());
  CyclotomicNumber out(m, Rational(0));
  out.c_ = std::vector<Rational>(c.begin(), c.end());
  return out;
}

bool CyclotomicNumber::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (!is_zero(c_[i])) return false;
  return true;
}

Rational CyclotomicNumber::rational_value() const {
  if (!is_rational()) throw MathError("cyclotomic number is not rational");
  return c_[0];
}

unsigned CyclotomicNumber::common_conductor(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  unsigned ma = a.conductor(), mb = b.conductor();
  if (ma == mb) return ma;
  if (mb % ma == 0) return mb;
  if (ma % mb == 0) return ma;
  throw MathError("conductor mismatch: " + std::to_string(ma) + " vs " + std::to_string(mb));
}

CyclotomicNumber CyclotomicNumber::lifted(unsigned m) const {
  unsigned own = conductor();
  if (own == m) return *this;
  unsigned step = m / own;
  std::vector<Rational> c(static_cast<std::size_t>(step) * c_.size(), Rational(0));
  for (std::size_t j = 0; j < c_.size(); ++j) c[j * step] = c_[j];
  return CyclotomicNumber(m, std::move(c));
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
  unsigned m = common_conductor(*this, o);
  if (m != conductor()) *this = lifted(m);
  if (o.conductor() != m) return *this += o.lifted(m);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) { return *this += -o; }

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  unsigned m = CyclotomicNumber::common_conductor(a, b);
  if (a.conductor() != m) return a.lifted(m) * b;
  if (b.conductor() != m) return a * b.lifted(m);
  const auto& f = *a.field_;
  unsigned phi = f.degree();
  if (b.is_rational()) return b.c_[0] * a;
  if (a.is_rational()) return a.c_[0] * b;
  // accumulate the raw product by exponent, then reduce once per exponent
  std::vector<Rational> raw(2 * phi - 1, Rational(0));
  for (unsigned i = 0; i < phi; ++i) {
    if (is_zero(a.c_[i])) continue;
    for (unsigned j = 0; j < phi; ++j)
      if (!is_zero(b.c_[j])) raw[i + j] += a.c_[i] * b.c_[j];
  }
  CyclotomicNumber out(m, Rational(0));
  for (unsigned e = 0; e < raw.size(); ++e) {
    if (is_zero(raw[e])) continue;
    if (e < phi) {
      out.c_[e] += raw[e];
      continue;
    }
    const auto& pw = f.power(e % m);
    for (unsigned i = 0; i < phi; ++i)
      if (sgn(pw[i]) != 0) out.c_[i] += raw[e] * pw[i];
  }
  return out;
}

CyclotomicNumber operator*(const Rational& a, const CyclotomicNumber& b) {
  CyclotomicNumber r = b;
  for (auto& x : r.c_) x *= a;
  return r;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  if (a.conductor() == b.conductor()) return a.c_ == b.c_;
  unsigned m = CyclotomicNumber::common_conductor(a, b);
  return a.lifted(m).c_ == b.lifted(m).c_;
}

std::strong_ordering compare(const CyclotomicNumber& a, const CyclotomicNumber& b) {
  unsigned m = CyclotomicNumber::common_conductor(a, b);
  const auto& x = a.conductor() == m ? a.c_ : a.lifted(m).c_;
  const auto& y = b.conductor() == m ? b.c_ : b.lifted(m).c_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = cmp(x[i], y[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero(*this)) throw MathError("inverse of zero");
  if (is_rational()) return CyclotomicNumber(conductor(), Rational(1) / c_[0]);
  unsigned m = conductor();
  CyclotomicNumber prod(m, Rational(1));
  for (unsigned k : field_->units())
    if (k != 1) prod = prod * galois_apply(*this, GaloisElement(m, k));
  Rational n = (*this * prod).rational_value();
  return (Rational(1) / n) * prod;
}

std::string CyclotomicNumber::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (is_zero(c_[i])) continue;
    std::string term = fittkit::to_string(c_[i]);
    if (i > 0) term += (i == 1 ? "*z" : "*z^" + std::to_string(i));
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  if (s.empty()) s = "0";
  if (conductor() > 1 && !is_rational()) s += " [z=zeta_" + std::to_string(conductor()) + "]";
  return s;
}

CyclotomicNumber galois_apply(const CyclotomicNumber& x, const GaloisElement& s) {
  if (x.conductor() != s.conductor()) {
    if (x.is_rational()) return x;
    throw MathError("conductor mismatch in galois_apply");
  }
  unsigned m = x.conductor();
  const auto& f = *x.field_;
  unsigned phi = f.degree();
  CyclotomicNumber out(m, Rational(0));
  for (unsigned j = 0; j < phi; ++j) {
    if (is_zero(x.c_[j])) continue;
    const auto& pw = f.power(static_cast<unsigned>((static_cast<unsigned long>(j) * s.residue()) % m));
    for (unsigned i = 0; i < phi; ++i)
      if (sgn(pw[i]) != 0) out.c_[i] += x.c_[j] * pw[i];
  }
  return out;
}

Rational trace(const CyclotomicNumber& x) {
  unsigned m = x.conductor();
  CyclotomicNumber sum(m, Rational(0));
  for (unsigned k : CyclotomicField::get(m).units()) sum += galois_apply(x, GaloisElement(m, k));
  return sum.rational_value();
}

Rational norm(const CyclotomicNumber& x) {
  unsigned m = x.conductor();
  CyclotomicNumber prod(m, Rational(1));
  for (unsigned k : CyclotomicField::get(m).units()) prod = prod * galois_apply(x, GaloisElement(m, k));
  return prod.rational_value();
}

}  // namespace fittkit
