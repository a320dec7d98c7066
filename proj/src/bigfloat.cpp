#include "systole/bigfloat.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace systole {

namespace {

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Leave `other` as a valid minimal-precision zero.
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(value_, rnd); }

std::string BigFloat::to_string(int digits) const {
  std::unique_ptr<char[]> buf(new char[static_cast<std::size_t>(digits) + 64]);
  mpfr_snprintf(buf.get(), static_cast<std::size_t>(digits) + 64, "%.*Rg", digits,
                value_);
  return buf.get();
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  *this = *this + rhs;
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  *this = *this - rhs;
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  *this = *this * rhs;
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  *this = *this / rhs;
  return *this;
}

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::factorial(unsigned long n, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_fac_ui(r.value_, n, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pow2(long exponent, mpfr_prec_t bits) {
  BigFloat r(bits);
  mpfr_set_ui_2exp(r.value_, 1, exponent, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_neg(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.get(), b.get()); }

BigFloat abs(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat acosh(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_acosh(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(wider(a, b));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, unsigned long exponent) {
  BigFloat r(base.precision());
  mpfr_pow_ui(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat r(wider(base, exponent));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) {
  return {a.re + b.re, a.im + b.im};
}

BigComplex operator-(const BigComplex& a, const BigComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigFloat denom = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / denom, (a.im * b.re - a.re * b.im) / denom};
}

BigFloat abs(const BigComplex& z) { return hypot(z.re, z.im); }

}  // namespace systole
