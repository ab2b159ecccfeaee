#include "flat/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include <mpfr.h>

namespace flat {

namespace {

std::mutex poly_mutex;
std::map<long, std::unique_ptr<std::vector<long>>> poly_cache;

std::vector<long> compute_cyclotomic(long n) {
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d) {
    if (n % d) continue;
    const std::vector<long>& q = cyclotomic_polynomial(d);
    long dq = static_cast<long>(q.size()) - 1;
    long dp = static_cast<long>(p.size()) - 1;
    std::vector<long> quo(dp - dq + 1, 0);
    for (long k = dp; k >= dq; --k) {
      long c = p[k];
      quo[k - dq] = c;
      if (c == 0) continue;
      for (long t = 0; t <= dq; ++t) p[k - dq + t] -= c * q[t];
    }
    p = quo;
  }
  return p;
}

mpz_class gcd_all(const std::vector<mpz_class>& v, const mpz_class& d) {
  mpz_class g = d;
  for (const auto& c : v) {
    if (g == 1) break;
    if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  return g;
}

// Reduce poly modulo Phi_n in place and truncate to phi(n) coefficients.
void reduce_poly(std::vector<mpz_class>& p, long n) {
  const std::vector<long>& phi = cyclotomic_polynomial(n);
  long deg = static_cast<long>(phi.size()) - 1;
  for (long k = static_cast<long>(p.size()) - 1; k >= deg; --k) {
    if (p[k] == 0) continue;
    mpz_class c = p[k];
    for (long t = 0; t < deg; ++t) {
      if (phi[t] == 0) continue;
      if (phi[t] == 1)
        p[k - deg + t] -= c;
      else if (phi[t] == -1)
        p[k - deg + t] += c;
      else
        p[k - deg + t] -= c * phi[t];
    }
    p[k] = 0;
  }
  p.resize(deg);
}

long mod_pos(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Solve A y = b over Q (A square, nonsingular) by fraction-free elimination.
std::vector<mpq_class> solve_square(std::vector<std::vector<mpz_class>> a, std::vector<mpz_class> b) {
  size_t m = a.size();
  mpz_class prev = 1;
  for (size_t k = 0; k < m; ++k) {
    size_t piv = k;
    while (piv < m && a[piv][k] == 0) ++piv;
    if (piv == m) throw DomainError("singular system");
    if (piv != k) {
      std::swap(a[piv], a[k]);
      std::swap(b[piv], b[k]);
    }
    for (size_t i = k + 1; i < m; ++i) {
      for (size_t j = k + 1; j < m; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      b[i] = b[i] * a[k][k] - a[i][k] * b[k];
      mpz_divexact(b[i].get_mpz_t(), b[i].get_mpz_t(), prev.get_mpz_t());
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  std::vector<mpq_class> y(m);
  for (size_t ii = m; ii-- > 0;) {
    mpq_class s(b[ii]);
    for (size_t j = ii + 1; j < m; ++j) s -= mpq_class(a[ii][j]) * y[j];
    y[ii] = s / mpq_class(a[ii][ii]);
    y[ii].canonicalize();
  }
  return y;
}

// Solve the consistent overdetermined system cols * y = target over Q.
std::vector<mpq_class> solve_columns(const std::vector<std::vector<mpz_class>>& cols,
                                     const std::vector<mpz_class>& target) {
  size_t rows = target.size(), m = cols.size();
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(m + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < m; ++c) a[r][c] = cols[c][r];
    a[r][m] = target[r];
  }
  size_t row = 0;
  std::vector<size_t> pivcol;
  for (size_t c = 0; c < m && row < rows; ++c) {
    size_t piv = row;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      mpq_class f = a[r][c] / a[row][c];
      for (size_t k = c; k <= m; ++k) a[r][k] -= f * a[row][k];
    }
    pivcol.push_back(c);
    ++row;
  }
  for (size_t r = row; r < rows; ++r)
    if (a[r][m] != 0) throw DomainError("inconsistent subfield solve");
  std::vector<mpq_class> y(m, 0);
  for (size_t i = 0; i < pivcol.size(); ++i) {
    y[pivcol[i]] = a[i][m] / a[i][pivcol[i]];
    y[pivcol[i]].canonicalize();
  }
  return y;
}

struct DoubleTable {
  std::vector<double> re, im;
};

std::mutex table_mutex;
std::map<long, std::unique_ptr<DoubleTable>> table_cache;

const DoubleTable& double_table(long n) {
  std::lock_guard<std::mutex> lock(table_mutex);
  auto it = table_cache.find(n);
  if (it != table_cache.end()) return *it->second;
  auto t = std::make_unique<DoubleTable>();
  mpfr_t pi, th, v;
  mpfr_inits2(128, pi, th, v, static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi, MPFR_RNDN);
  for (long j = 0; j < n; ++j) {
    mpfr_mul_si(th, pi, 2 * j, MPFR_RNDN);
    mpfr_div_si(th, th, n, MPFR_RNDN);
    mpfr_cos(v, th, MPFR_RNDN);
    t->re.push_back(mpfr_get_d(v, MPFR_RNDN));
    mpfr_sin(v, th, MPFR_RNDN);
    t->im.push_back(mpfr_get_d(v, MPFR_RNDN));
  }
  mpfr_clears(pi, th, v, static_cast<mpfr_ptr>(nullptr));
  auto& ref = *t;
  table_cache.emplace(n, std::move(t));
  return ref;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long n) {
  if (n < 1) throw DomainError("bad conductor");
  {
    std::lock_guard<std::mutex> lock(poly_mutex);
    auto it = poly_cache.find(n);
    if (it != poly_cache.end()) return *it->second;
  }
  auto p = std::make_unique<std::vector<long>>(compute_cyclotomic(n));
  std::lock_guard<std::mutex> lock(poly_mutex);
  auto [it, inserted] = poly_cache.emplace(n, std::move(p));
  return *it->second;
}

long euler_phi(long n) {
  long r = n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

Cyclotomic::Cyclotomic() : n_(1), num_(1, 0), den_(1) {}
Cyclotomic::Cyclotomic(long v) : n_(1), num_(1, v), den_(1) {}
Cyclotomic::Cyclotomic(const Rational& q) : n_(1), num_(1, q.num()), den_(q.den()) {}

Cyclotomic::Cyclotomic(long n, std::vector<mpz_class> num, mpz_class den)
    : n_(n), num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

Cyclotomic Cyclotomic::from_poly(long n, std::vector<mpz_class> poly, mpz_class den) {
  reduce_poly(poly, n);
  return Cyclotomic(n, std::move(poly), std::move(den));
}

Cyclotomic Cyclotomic::from_coefficients(long n, const std::vector<Rational>& coeffs) {
  if (n % 4 == 2) throw DomainError("conductor must not be 2 mod 4");
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.q().get_den_mpz_t());
  std::vector<mpz_class> poly;
  for (const auto& c : coeffs) poly.push_back(c.num() * (den / c.den()));
  if (static_cast<long>(poly.size()) < euler_phi(n)) poly.resize(euler_phi(n), 0);
  return from_poly(n, std::move(poly), den);
}

void Cyclotomic::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  bool zero = true;
  for (const auto& c : num_)
    if (c != 0) zero = false;
  if (zero) {
    den_ = 1;
    return;
  }
  mpz_class g = gcd_all(num_, den_);
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Cyclotomic Cyclotomic::zeta(long n, long k) {
  if (n < 1) throw DomainError("bad root of unity order");
  if (n % 4 == 2) {
    long h = n / 2;
    Cyclotomic r = zeta(h, k * ((h + 1) / 2));
    return (k % 2 == 0) ? r : -r;
  }
  k = mod_pos(k, n);
  std::vector<mpz_class> poly(std::max(k + 1, euler_phi(n)), 0);
  poly[k] = 1;
  return from_poly(n, std::move(poly), 1);
}

Cyclotomic Cyclotomic::exp_pi_i(const Rational& q) {
  return zeta(2 * q.den_long(), q.num_long());
}

Rational Cyclotomic::coefficient(long j) const {
  if (j < 0 || j >= degree()) return Rational(0);
  return Rational(num_[j], den_);
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::rational_value() const {
  for (size_t j = 1; j < num_.size(); ++j)
    if (num_[j] != 0) return std::nullopt;
  return Rational(num_[0], den_);
}

bool Cyclotomic::is_real() const { return conj() == *this; }

Cyclotomic Cyclotomic::galois(long a) const {
  if (std::gcd(a, n_) != 1) throw DomainError("galois exponent not a unit");
  if (n_ == 1) return *this;
  std::vector<mpz_class> poly(n_, 0);
  for (size_t j = 0; j < num_.size(); ++j)
    if (num_[j] != 0) poly[mod_pos(a * static_cast<long>(j), n_)] += num_[j];
  return from_poly(n_, std::move(poly), den_);
}

Cyclotomic Cyclotomic::conj() const { return galois(-1); }

Cyclotomic Cyclotomic::lifted(long m) const {
  if (m == n_) return *this;
  if (m % n_ != 0 || m % 4 == 2) throw DomainError("invalid lift");
  long step = m / n_;
  std::vector<mpz_class> poly(std::max<long>(m, euler_phi(m)), 0);
  for (size_t j = 0; j < num_.size(); ++j) poly[static_cast<long>(j) * step] = num_[j];
  return from_poly(m, std::move(poly), den_);
}

Cyclotomic Cyclotomic::minimized() const {
  if (is_zero()) return Cyclotomic();
  if (auto q = rational_value()) return Cyclotomic(*q);
  for (long m = 1; m < n_; ++m) {
    if (n_ % m || m % 4 == 2) continue;
    bool fixed = true;
    for (long a = 1; a < n_ && fixed; a += m) {
      if (std::gcd(a, n_) != 1 || a == 1) continue;
      if (!(galois(a) == *this)) fixed = false;
    }
    if (!fixed) continue;
    long phm = euler_phi(m);
    std::vector<std::vector<mpz_class>> cols;
    for (long k = 0; k < phm; ++k) cols.push_back(Cyclotomic::zeta(m, k).lifted(n_).num_);
    std::vector<mpq_class> y = solve_columns(cols, num_);
    std::vector<Rational> coeffs;
    for (auto& v : y) coeffs.push_back(Rational(mpq_class(v / mpq_class(den_))));
    return from_coefficients(m, coeffs);
  }
  return *this;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("division by exact zero");
  if (n_ == 1) return Cyclotomic(Rational(den_, num_[0]));
  long d = degree();
  std::vector<std::vector<mpz_class>> a(d, std::vector<mpz_class>(d));
  std::vector<mpz_class> col = num_;
  for (long k = 0; k < d; ++k) {
    if (k > 0) {
      // multiply the previous column by zeta
      std::vector<mpz_class> shifted(d + 1, 0);
      for (long j = 0; j < d; ++j) shifted[j + 1] = col[j];
      reduce_poly(shifted, n_);
      col = std::move(shifted);
    }
    for (long r = 0; r < d; ++r) a[r][k] = col[r];
  }
  std::vector<mpz_class> b(d, 0);
  b[0] = den_;
  std::vector<mpq_class> y = solve_square(std::move(a), std::move(b));
  std::vector<Rational> coeffs;
  for (auto& v : y) coeffs.push_back(Rational(v));
  return from_coefficients(n_, coeffs);
}

Cyclotomic Cyclotomic::re() const { return (*this + conj()).scaled(Rational(1, 2)); }

Cyclotomic Cyclotomic::im() const {
  return ((*this - conj()) * imaginary_unit()).scaled(Rational(-1, 2));
}

std::string Cyclotomic::key() const {
  std::ostringstream os;
  os << n_ << ':';
  for (size_t j = 0; j < num_.size(); ++j) os << (j ? "," : "") << num_[j].get_str(36);
  os << '/' << den_.get_str(36);
  return os.str();
}

std::complex<double> Cyclotomic::approx() const {
  const DoubleTable& t = double_table(n_);
  long ed;
  double md = mpz_get_d_2exp(&ed, den_.get_mpz_t());
  double re = 0, im = 0;
  for (size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    long e;
    double m = mpz_get_d_2exp(&e, num_[j].get_mpz_t());
    double v = std::ldexp(m / md, static_cast<int>(e - ed));
    re += v * t.re[j];
    im += v * t.im[j];
  }
  return {re, im};
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

namespace {
long common_conductor(long a, long b) { return std::lcm(a, b); }
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.n_ != n_) {
    long m = common_conductor(n_, o.n_);
    if (m != n_) *this = lifted(m);
    if (m != o.n_) return *this += o.lifted(m);
  }
  if (den_ == o.den_) {
    for (size_t j = 0; j < num_.size(); ++j) num_[j] += o.num_[j];
  } else {
    for (size_t j = 0; j < num_.size(); ++j) num_[j] = num_[j] * o.den_ + o.num_[j] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  if (o.n_ != n_) {
    long m = common_conductor(n_, o.n_);
    if (o.n_ == 1) {
      for (auto& c : num_) c *= o.num_[0];
      den_ *= o.den_;
      normalize();
      return *this;
    }
    if (m != n_) *this = lifted(m);
    if (m != o.n_) return *this *= o.lifted(m);
  }
  if (n_ == 1) {
    num_[0] *= o.num_[0];
    den_ *= o.den_;
    normalize();
    return *this;
  }
  size_t d = num_.size();
  std::vector<mpz_class> poly(2 * d - 1, 0);
  for (size_t i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      if (o.num_[j] != 0) mpz_addmul(poly[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
  }
  reduce_poly(poly, n_);
  num_ = std::move(poly);
  den_ *= o.den_;
  normalize();
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ == b.n_) return a.den_ == b.den_ && a.num_ == b.num_;
  long m = std::lcm(a.n_, b.n_);
  if (m == a.n_) return a == b.lifted(m);
  if (m == b.n_) return a.lifted(m) == b;
  return a.lifted(m) == b.lifted(m);
}

Cyclotomic Cyclotomic::scaled(const Rational& q) const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c *= q.num();
  r.den_ *= q.den();
  r.normalize();
  return r;
}

}  // namespace flat
