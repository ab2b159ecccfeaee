#pragma once

#include <optional>
#include <string>

#include <mpfr.h>

#include "flat/cyclotomic.hpp"

namespace flat {

class BigFloat {
 public:
  explicit BigFloat(long bits = 64);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(BigFloat o) noexcept;
  ~BigFloat();
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // scientific notation with the given number of significant digits
  std::string str(int digits) const;

 private:
  mpfr_t v_;
  bool live_ = true;
};

struct Interval {
  BigFloat lo, hi;
  long precision_bits = 0;
  bool contains(double x) const;
  double width() const;
  bool excludes_zero() const { return mpfr_sgn(lo.get()) > 0 || mpfr_sgn(hi.get()) < 0; }
};

// Minimum working precision; honours UNFOLDCOVER_PRECISION_FLOOR.
long precision_floor();

// Exact real number in a cyclotomic field.
class Real {
 public:
  Real() = default;
  Real(long v) : c_(v) {}
  Real(const Rational& q) : c_(q) {}
  explicit Real(Cyclotomic c);

  static Real cos_pi(const Rational& q);
  static Real real_part_of(const Cyclotomic& z) { return Real(z.re(), true); }
  static Real imag_part_of(const Cyclotomic& z) { return Real(z.im(), true); }
  static Real sin_pi(const Rational& q);

  const Cyclotomic& value() const { return c_; }
  bool is_zero() const { return c_.is_zero(); }
  std::optional<Rational> rational_value() const { return c_.rational_value(); }
  int sign() const;
  double to_double() const { return c_.approx().real(); }
  Interval enclose(long bits) const;
  Interval refine_to(double width) const;
  std::string decimal(int digits = 50) const;
  Real minimized() const { return Real(c_.minimized(), true); }
  Real abs() const { return sign() < 0 ? -*this : *this; }

  Real operator-() const { return Real(-c_, true); }
  Real& operator+=(const Real& o) { c_ += o.c_; return *this; }
  Real& operator-=(const Real& o) { c_ -= o.c_; return *this; }
  Real& operator*=(const Real& o) { c_ *= o.c_; return *this; }
  Real& operator/=(const Real& o) { c_ /= o.c_; return *this; }
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend bool operator==(const Real& a, const Real& b) { return a.c_ == b.c_; }
  Real inverse() const { return Real(c_.inverse(), true); }

 private:
  Real(Cyclotomic c, bool) : c_(std::move(c)) {}
  Cyclotomic c_;
};

// -1, 0, 1
int compare(const Real& a, const Real& b);
inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }

std::optional<Rational> is_rational(const Real& x);

// Sign of the real part of a (possibly complex) cyclotomic number.
int sign_of_real_part(const Cyclotomic& z);

}  // namespace flat
