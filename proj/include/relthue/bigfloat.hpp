#pragma once

// Thin RAII wrapper around MPFR, plus a complex companion type.
// Values carry their own precision; binary operations compute at the
// wider of the two operand precisions.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace relthue {

inline mpfr_prec_t bits_for_digits(long digits) {
  if (digits < 2) digits = 2;
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873626) + 32;
}

class BigFloat {
 public:
  BigFloat() {
    mpfr_init2(v_, 64);
    mpfr_set_zero(v_, 1);
  }
  explicit BigFloat(mpfr_prec_t bits) {
    mpfr_init2(v_, bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(const mpz_class& z, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const mpq_class& q, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  // Accepts plain and scientific decimal notation ("1e500", "0.25e3", ...).
  static BigFloat parse(const std::string& s, mpfr_prec_t bits) {
    BigFloat r(bits);
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("not a decimal number: " + s);
    return r;
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  BigFloat with_prec(mpfr_prec_t bits) const {
    BigFloat r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(a.prec(), b.prec());
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat& operator+=(const BigFloat& b) {
    if (b.prec() > prec()) *this = *this + b;
    else mpfr_add(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& b) {
    if (b.prec() > prec()) *this = *this - b;
    else mpfr_sub(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& b) {
    if (b.prec() > prec()) *this = *this * b;
    else mpfr_mul(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& b) {
    if (b.prec() > prec()) *this = *this / b;
    else mpfr_div(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }

  friend BigFloat operator*(const BigFloat& a, double d) { return a * BigFloat(d, 64); }
  friend BigFloat operator*(double d, const BigFloat& a) { return a * BigFloat(d, 64); }
  friend BigFloat operator+(const BigFloat& a, double d) { return a + BigFloat(d, 64); }
  friend BigFloat operator-(const BigFloat& a, double d) { return a - BigFloat(d, 64); }
  friend BigFloat operator/(const BigFloat& a, double d) { return a / BigFloat(d, 64); }

  int cmp(const BigFloat& b) const { return mpfr_cmp(v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return a.cmp(b) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return a.cmp(b) != 0; }
  bool operator<(double d) const { return mpfr_cmp_d(v_, d) < 0; }
  bool operator>(double d) const { return mpfr_cmp_d(v_, d) > 0; }
  bool operator<=(double d) const { return mpfr_cmp_d(v_, d) <= 0; }
  bool operator>=(double d) const { return mpfr_cmp_d(v_, d) >= 0; }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  bool is_finite() const { return mpfr_number_p(v_); }

  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  BigFloat sqrt() const {
    BigFloat r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  // x^(1/k)
  BigFloat nth_root(unsigned long k) const {
    BigFloat r(prec());
    mpfr_rootn_ui(r.v_, v_, k, MPFR_RNDN);
    return r;
  }
  BigFloat pow_ui(unsigned long k) const {
    BigFloat r(prec());
    mpfr_pow_ui(r.v_, v_, k, MPFR_RNDN);
    return r;
  }
  BigFloat floor() const {
    BigFloat r(prec());
    mpfr_floor(r.v_, v_);
    return r;
  }
  BigFloat ceil() const {
    BigFloat r(prec());
    mpfr_ceil(r.v_, v_);
    return r;
  }

  // Multiply by (1 + 10^-digits); used to keep derived constants on the
  // safe (upper) side of rounding error.
  BigFloat inflated(long digits) const {
    BigFloat one_plus(prec());
    mpfr_ui_pow_ui(one_plus.v_, 10, static_cast<unsigned long>(digits), MPFR_RNDN);
    mpfr_ui_div(one_plus.v_, 1, one_plus.v_, MPFR_RNDU);
    mpfr_add_ui(one_plus.v_, one_plus.v_, 1, MPFR_RNDU);
    BigFloat r(prec());
    mpfr_mul(r.v_, v_, one_plus.v_, MPFR_RNDU);
    return r;
  }
  BigFloat deflated(long digits) const {
    BigFloat one_minus(prec());
    mpfr_ui_pow_ui(one_minus.v_, 10, static_cast<unsigned long>(digits), MPFR_RNDN);
    mpfr_ui_div(one_minus.v_, 1, one_minus.v_, MPFR_RNDU);
    mpfr_ui_sub(one_minus.v_, 1, one_minus.v_, MPFR_RNDD);
    BigFloat r(prec());
    mpfr_mul(r.v_, v_, one_minus.v_, MPFR_RNDD);
    return r;
  }

  static BigFloat pow10(long e, mpfr_prec_t bits = 64) {
    BigFloat r(bits);
    if (e >= 0) {
      mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(e), MPFR_RNDN);
    } else {
      mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(-e), MPFR_RNDN);
      mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    }
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

  mpz_class to_mpz(mpfr_rnd_t rnd = MPFR_RNDN) const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, rnd);
    return z;
  }
  bool fits_long() const { return mpfr_fits_slong_p(v_, MPFR_RNDN); }
  long to_long(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_si(v_, rnd); }

  int cmp(const mpz_class& z) const { return mpfr_cmp_z(v_, z.get_mpz_t()); }

  // "0.2252e501"-style scientific string with the given significant digits.
  std::string sci(int digits = 4) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRe", digits - 1);
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, fmt, v_);
    return buf;
  }
  std::string str(int digits = 17) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    char buf[160];
    mpfr_snprintf(buf, sizeof buf, fmt, v_);
    return buf;
  }

 private:
  mpfr_t v_;
};

inline BigFloat abs(const BigFloat& x) { return x.abs(); }
inline BigFloat sqrt(const BigFloat& x) { return x.sqrt(); }
inline BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }
inline BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

struct BigComplex {
  BigFloat re, im;

  BigComplex() = default;
  explicit BigComplex(mpfr_prec_t bits) : re(bits), im(bits) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(double r, double i, mpfr_prec_t bits = 64) : re(r, bits), im(i, bits) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  BigComplex with_prec(mpfr_prec_t bits) const { return {re.with_prec(bits), im.with_prec(bits)}; }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
    return {a.re * s, a.im * s};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  BigComplex operator-() const { return {-re, -im}; }
  BigComplex conj() const { return {re, -im}; }

  BigFloat norm_sq() const { return re * re + im * im; }
  BigFloat abs() const {
    BigFloat r(prec());
    mpfr_hypot(r.get(), re.get(), im.get(), MPFR_RNDN);
    return r;
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

inline BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }

}  // namespace relthue
