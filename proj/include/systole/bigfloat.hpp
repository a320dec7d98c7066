#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace systole {

// Owning MPFR value with an explicit precision in bits. Binary operations
// produce a result at the larger of the two operand precisions; nothing
// here touches MPFR's global default precision, so values may be used
// freely from concurrent threads.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 64);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(long value, mpfr_prec_t bits);
  BigFloat(int value, mpfr_prec_t bits) : BigFloat(static_cast<long>(value), bits) {}
  BigFloat(const mpz_class& value, mpfr_prec_t bits);
  BigFloat(const mpq_class& value, mpfr_prec_t bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_ptr get() noexcept { return value_; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  std::string to_string(int digits) const;

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  static BigFloat pi(mpfr_prec_t bits);
  static BigFloat factorial(unsigned long n, mpfr_prec_t bits);
  // 2^exponent, exact.
  static BigFloat pow2(long exponent, mpfr_prec_t bits);

 private:
  mpfr_t value_;
};

BigFloat operator-(const BigFloat& x);
BigFloat operator+(const BigFloat& a, const BigFloat& b);
BigFloat operator-(const BigFloat& a, const BigFloat& b);
BigFloat operator*(const BigFloat& a, const BigFloat& b);
BigFloat operator/(const BigFloat& a, const BigFloat& b);

int compare(const BigFloat& a, const BigFloat& b);
inline bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
inline bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
inline bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
inline bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }
inline bool operator==(const BigFloat& a, const BigFloat& b) { return compare(a, b) == 0; }

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat acosh(const BigFloat& x);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
BigFloat pow(const BigFloat& base, unsigned long exponent);
BigFloat pow(const BigFloat& base, const BigFloat& exponent);
BigFloat max(const BigFloat& a, const BigFloat& b);

// Minimal complex arithmetic over BigFloat, enough for polynomial root
// iteration.
struct BigComplex {
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t bits) : re(bits), im(bits) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t precision() const noexcept { return re.precision(); }
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigFloat abs(const BigComplex& z);

}  // namespace systole
