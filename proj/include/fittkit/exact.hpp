#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fittkit {

using Integer = mpz_class;
using Rational = mpq_class;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical a/b.
inline Rational ratio(const Integer& a, const Integer& b) {
  if (sgn(b) == 0) throw MathError("zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

// Exact rational literal: "3", "-5/7". Decimal points and exponents are rejected.
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);

bool is_prime(const Integer& p);

// nullopt stands for +infinity (x == 0).
std::optional<long> p_valuation(const Rational& x, const Integer& p);
long p_valuation(const Integer& x, const Integer& p);  // throws on zero
Integer prime_to_p_part(const Integer& x, const Integer& p);
Integer p_part(const Integer& x, const Integer& p);

inline bool is_zero(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Integer zero_like(const Integer&) { return 0; }
inline Rational zero_like(const Rational&) { return 0; }
inline Integer one_like(const Integer&) { return 1; }
inline Rational one_like(const Rational&) { return 1; }
Integer exact_div(const Integer& a, const Integer& b);
inline Rational exact_div(const Rational& a, const Rational& b) {
  if (is_zero(b)) throw MathError("division by zero");
  return a / b;
}

// Element of Z localized at p.
class LocalScalar {
 public:
  LocalScalar(Integer p, Rational value);
  const Integer& prime() const { return p_; }
  const Rational& value() const { return v_; }
  bool is_unit() const;

  friend LocalScalar operator+(const LocalScalar& a, const LocalScalar& b);
  friend LocalScalar operator-(const LocalScalar& a, const LocalScalar& b);
  friend LocalScalar operator*(const LocalScalar& a, const LocalScalar& b);
  LocalScalar operator-() const { return LocalScalar(p_, -v_); }
  friend bool operator==(const LocalScalar& a, const LocalScalar& b) {
    return a.p_ == b.p_ && a.v_ == b.v_;
  }

 private:
  Integer p_;
  Rational v_;
};

inline bool is_zero(const LocalScalar& x) { return is_zero(x.value()); }
inline LocalScalar zero_like(const LocalScalar& x) { return LocalScalar(x.prime(), 0); }
inline LocalScalar one_like(const LocalScalar& x) { return LocalScalar(x.prime(), 1); }
LocalScalar exact_div(const LocalScalar& a, const LocalScalar& b);

unsigned euler_phi(unsigned m);
unsigned gcd_u(unsigned a, unsigned b);
unsigned lcm_u(unsigned a, unsigned b);

// Q(zeta_m) in the power basis 1, zeta, ..., zeta^(phi(m)-1).
class CyclotomicField {
 public:
  static const CyclotomicField& get(unsigned m);

  unsigned conductor() const { return m_; }
  unsigned degree() const { return phi_; }
  // Phi_m, coefficients from the constant term upwards.
  const std::vector<Integer>& cyclotomic_polynomial() const { return poly_; }
  // zeta^j reduced, j = 0..m-1.
  const std::vector<Integer>& power(unsigned j) const { return powers_[j % m_]; }
  const std::vector<unsigned>& units() const { return units_; }

 private:
  explicit CyclotomicField(unsigned m);
  unsigned m_;
  unsigned phi_;
  std::vector<Integer> poly_;
  std::vector<std::vector<Integer>> powers_;
  std::vector<unsigned> units_;
};

std::vector<Integer> cyclotomic_polynomial(unsigned m);

class GaloisElement {
 public:
  GaloisElement(unsigned m, long k);
  unsigned conductor() const { return m_; }
  unsigned residue() const { return k_; }
  GaloisElement then(const GaloisElement& other) const;  // apply *this, then other
  friend bool operator==(const GaloisElement&, const GaloisElement&) = default;

 private:
  unsigned m_;
  unsigned k_;
};

class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(1, Rational(0)) {}
  CyclotomicNumber(unsigned m, const Rational& c);
  CyclotomicNumber(unsigned m, std::vector<Rational> coeffs);  // reduces mod Phi_m
  static CyclotomicNumber zeta(unsigned m, long j = 1);

  unsigned conductor() const { return field_->conductor(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_rational() const;
  Rational rational_value() const;  // throws unless is_rational()

  CyclotomicNumber& operator+=(const CyclotomicNumber& o);
  CyclotomicNumber& operator-=(const CyclotomicNumber& o);
  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b);
  friend CyclotomicNumber operator*(const Rational& a, const CyclotomicNumber& b);
  CyclotomicNumber operator-() const;
  CyclotomicNumber inverse() const;
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a * b.inverse();
  }
  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);
  // Lexicographic on coefficient vectors; only meaningful within one conductor.
  friend std::strong_ordering compare(const CyclotomicNumber& a, const CyclotomicNumber& b);

  std::string to_string() const;

 private:
  const CyclotomicField* field_;
  std::vector<Rational> c_;
  friend CyclotomicNumber galois_apply(const CyclotomicNumber&, const GaloisElement&);
  static unsigned common_conductor(const CyclotomicNumber& a, const CyclotomicNumber& b);
  CyclotomicNumber lifted(unsigned m) const;
};

CyclotomicNumber galois_apply(const CyclotomicNumber& x, const GaloisElement& s);
Rational trace(const CyclotomicNumber& x);  // absolute trace Q(zeta_m)/Q
Rational norm(const CyclotomicNumber& x);   // absolute norm

inline bool is_zero(const CyclotomicNumber& x) {
  for (const auto& c : x.coeffs())
    if (!is_zero(c)) return false;
  return true;
}
inline CyclotomicNumber zero_like(const CyclotomicNumber& x) { return CyclotomicNumber(x.conductor(), Rational(0)); }
inline CyclotomicNumber one_like(const CyclotomicNumber& x) { return CyclotomicNumber(x.conductor(), Rational(1)); }
inline CyclotomicNumber exact_div(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a / b; }

}  // namespace fittkit
