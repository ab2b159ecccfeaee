#include "flat/real.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace flat {

BigFloat::BigFloat(long bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(BigFloat o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::str(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo.get(), x) <= 0 && mpfr_cmp_d(hi.get(), x) >= 0;
}

double Interval::width() const {
  BigFloat w(precision_bits);
  mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
  return w.to_double();
}

long precision_floor() {
  static const long floor = [] {
    const char* env = std::getenv("UNFOLDCOVER_PRECISION_FLOOR");
    long v = env ? std::atol(env) : 64;
    return v < 64 ? 64L : v;
  }();
  return floor;
}

namespace {

struct CosTable {
  std::vector<BigFloat> c;
};

std::mutex cos_mutex;
std::map<std::pair<long, long>, std::unique_ptr<CosTable>> cos_cache;

// cos(2 pi j / n) for j < phi(n), each within 2^(6-bits) of the true value.
const CosTable& cos_table(long n, long bits) {
  std::lock_guard<std::mutex> lock(cos_mutex);
  auto key = std::make_pair(n, bits);
  auto it = cos_cache.find(key);
  if (it != cos_cache.end()) return *it->second;
  auto t = std::make_unique<CosTable>();
  BigFloat pi(bits), th(bits);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  long d = euler_phi(n);
  for (long j = 0; j < d; ++j) {
    mpfr_mul_si(th.get(), pi.get(), 2 * j, MPFR_RNDN);
    mpfr_div_si(th.get(), th.get(), n, MPFR_RNDN);
    BigFloat v(bits);
    mpfr_cos(v.get(), th.get(), MPFR_RNDN);
    t->c.push_back(std::move(v));
  }
  auto& ref = *t;
  cos_cache.emplace(key, std::move(t));
  return ref;
}

Interval enclose_real_part(const Cyclotomic& z, long bits) {
  const CosTable& t = cos_table(z.conductor(), bits);
  const auto& num = z.numerators();
  BigFloat s(bits), a(bits), term(bits), e(bits);
  for (size_t j = 0; j < num.size(); ++j) {
    if (num[j] == 0) continue;
    mpfr_mul_z(term.get(), t.c[j].get(), num[j].get_mpz_t(), MPFR_RNDN);
    mpfr_add(s.get(), s.get(), term.get(), MPFR_RNDN);
    mpz_class absn = abs(num[j]);
    mpfr_add_z(a.get(), a.get(), absn.get_mpz_t(), MPFR_RNDU);
  }
  // |error| <= A * 2^-bits * (70 + 2 * phi)
  mpfr_mul_ui(e.get(), a.get(), 70 + 2 * num.size(), MPFR_RNDU);
  mpfr_div_2si(e.get(), e.get(), bits, MPFR_RNDU);
  Interval iv{BigFloat(bits), BigFloat(bits), bits};
  mpfr_sub(iv.lo.get(), s.get(), e.get(), MPFR_RNDD);
  mpfr_add(iv.hi.get(), s.get(), e.get(), MPFR_RNDU);
  mpfr_div_z(iv.lo.get(), iv.lo.get(), z.denominator().get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(iv.hi.get(), iv.hi.get(), z.denominator().get_mpz_t(), MPFR_RNDU);
  return iv;
}

// Certified double filter; returns 0 when undecided.
int fast_sign(const Cyclotomic& z) {
  const auto& num = z.numerators();
  long ed;
  double md = mpz_get_d_2exp(&ed, z.denominator().get_mpz_t());
  std::complex<double> v = z.approx();
  double mag = 0;
  for (const auto& c : num) {
    if (c == 0) continue;
    long e;
    double m = mpz_get_d_2exp(&e, c.get_mpz_t());
    mag += std::fabs(std::ldexp(m / md, static_cast<int>(e - ed)));
  }
  if (!std::isfinite(mag) || !std::isfinite(v.real())) return 0;
  double bound = mag * static_cast<double>(num.size() + 8) * std::ldexp(1.0, -48);
  if (v.real() > bound) return 1;
  if (v.real() < -bound) return -1;
  return 0;
}

}  // namespace

int sign_of_real_part(const Cyclotomic& z) {
  if (z.is_zero()) return 0;
  if (z.conductor() <= 2) return sgn(z.numerators()[0]);
  if (int s = fast_sign(z)) return s;
  if (z.re().is_zero()) return 0;
  for (long bits = precision_floor();; bits *= 2) {
    Interval iv = enclose_real_part(z, bits);
    if (mpfr_sgn(iv.lo.get()) > 0) return 1;
    if (mpfr_sgn(iv.hi.get()) < 0) return -1;
  }
}

Real::Real(Cyclotomic c) : c_(std::move(c)) {
  if (!c_.is_real()) throw DomainError("value is not real");
}

Real Real::cos_pi(const Rational& q) {
  Cyclotomic z = Cyclotomic::exp_pi_i(q);
  return Real((z + z.conj()).scaled(Rational(1, 2)), true);
}

Real Real::sin_pi(const Rational& q) {
  Cyclotomic z = Cyclotomic::exp_pi_i(q);
  return Real(((z - z.conj()) * Cyclotomic::imaginary_unit()).scaled(Rational(-1, 2)), true);
}

int Real::sign() const { return sign_of_real_part(c_); }

Interval Real::enclose(long bits) const { return enclose_real_part(c_, std::max(bits, precision_floor())); }

Interval Real::refine_to(double width) const {
  for (long bits = precision_floor();; bits *= 2) {
    Interval iv = enclose(bits);
    if (iv.width() <= width) return iv;
  }
}

std::string Real::decimal(int digits) const {
  if (auto q = rational_value(); q && q->is_zero()) return "0";
  for (long bits = precision_floor();; bits *= 2) {
    Interval iv = enclose(bits);
    std::string a = iv.lo.str(digits), b = iv.hi.str(digits);
    if (a == b) return a;
    if (bits > 1 << 16) return a;
  }
}

int compare(const Real& a, const Real& b) { return (a - b).sign(); }

std::optional<Rational> is_rational(const Real& x) { return x.rational_value(); }

}  // namespace flat
