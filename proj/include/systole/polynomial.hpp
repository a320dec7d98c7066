#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace systole {

// Univariate polynomial with exact rational coefficients. Coefficients are
// stored from the constant term upward and kept trimmed, so the zero
// polynomial has no coefficients and degree -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coefficients);

  static RationalPolynomial constant(const mpq_class& c);
  // X - root
  static RationalPolynomial linear(const mpq_class& root);

  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const mpq_class& leading() const { return coeffs_.back(); }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }
  mpq_class coefficient(std::size_t k) const;

  mpq_class evaluate(const mpq_class& x) const;
  RationalPolynomial derivative() const;
  RationalPolynomial monic() const;
  // X^deg * p(1/X)
  RationalPolynomial reciprocal() const;

  std::string to_string() const;

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial operator*(const mpq_class& s, const RationalPolynomial& p);

// Euclidean division: a = q * b + r with deg r < deg b. b must be nonzero.
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
// Quotient of an exact division; throws if the remainder is nonzero.
RationalPolynomial exact_quotient(const RationalPolynomial& a, const RationalPolynomial& b);

// Monic greatest common divisor (zero if both inputs are zero).
RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b);

bool is_squarefree(const RationalPolynomial& p);

struct SquarefreeFactor {
  RationalPolynomial factor;  // monic, squarefree, nonconstant
  unsigned multiplicity;
};

// Yun's algorithm: p = lc * prod factor_i^multiplicity_i, factors pairwise
// coprime. Factors with equal multiplicity are merged into one entry.
std::vector<SquarefreeFactor> squarefree_decomposition(const RationalPolynomial& p);

// Number of distinct real roots in the half-open interval (lo, hi], by Sturm
// sequence sign variations. p must be nonzero.
long count_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi);

}  // namespace systole
