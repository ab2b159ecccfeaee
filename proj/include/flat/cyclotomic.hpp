#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "flat/rational.hpp"

namespace flat {

// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(long n);
long euler_phi(long n);

// Element of Q(zeta_n): (sum num[j] zeta_n^j) / den, j < phi(n),
// reduced modulo the n-th cyclotomic polynomial. Conductors are never 2 mod 4.
class Cyclotomic {
 public:
  Cyclotomic();
  Cyclotomic(long v);
  Cyclotomic(const Rational& q);

  static Cyclotomic zeta(long n, long k = 1);
  static Cyclotomic imaginary_unit() { return zeta(4, 1); }
  // exp(i*pi*q)
  static Cyclotomic exp_pi_i(const Rational& q);

  long conductor() const { return n_; }
  long degree() const { return static_cast<long>(num_.size()); }
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }
  Rational coefficient(long j) const;
  static Cyclotomic from_coefficients(long n, const std::vector<Rational>& coeffs);

  bool is_zero() const;
  std::optional<Rational> rational_value() const;
  bool is_real() const;

  Cyclotomic conj() const;
  Cyclotomic galois(long a) const;
  Cyclotomic lifted(long m) const;
  Cyclotomic minimized() const;
  Cyclotomic inverse() const;
  Cyclotomic re() const;
  Cyclotomic im() const;

  // serialization tied to the current conductor
  std::string key() const;
  std::complex<double> approx() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  Cyclotomic scaled(const Rational& q) const;

 private:
  Cyclotomic(long n, std::vector<mpz_class> num, mpz_class den);
  void normalize();
  static Cyclotomic from_poly(long n, std::vector<mpz_class> poly, mpz_class den);

  long n_ = 1;
  std::vector<mpz_class> num_;
  mpz_class den_ = 1;
};

}  // namespace flat
