#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "systole/integer_matrix.hpp"
#include "systole/polynomial.hpp"

namespace systole {

// Signed elementary symmetric functions s_1..s_n of the eigenvalues, so
// that the characteristic polynomial is
//   X^n - s_1 X^{n-1} + s_2 X^{n-2} - ... + (-1)^n s_n.
struct CharPolyData {
  std::vector<mpz_class> sym;

  std::size_t degree() const noexcept { return sym.size(); }
  // s_j with the convention s_0 = 1 and s_j = 0 beyond the degree.
  mpz_class s(std::size_t j) const;
  // Monic polynomial with coefficients in ascending order of degree.
  RationalPolynomial polynomial() const;

  friend bool operator==(const CharPolyData&, const CharPolyData&) = default;
};

// tr(x), tr(x^2), ..., tr(x^n).
struct PowerTraces {
  std::vector<mpz_class> traces;

  std::size_t degree() const noexcept { return traces.size(); }

  friend bool operator==(const PowerTraces&, const PowerTraces&) = default;
};

// Division-free (Berkowitz) characteristic polynomial.
CharPolyData char_poly(const IntegerMatrix& m);

CharPolyData char_poly_from_polynomial(const RationalPolynomial& monic_integer_poly);

PowerTraces newton_power_traces(const CharPolyData& cp);

// Inverse of newton_power_traces. Throws NonIntegralResult when a Newton
// step does not divide exactly, which means the traces are inconsistent.
CharPolyData newton_symmetric(const PowerTraces& pt);

// Same recursion over the rationals; never fails.
std::vector<mpq_class> newton_symmetric_rational(const std::vector<mpq_class>& traces);

// Fujiwara bound 2 max{|s_1|, |s_2|^{1/2}, ..., |s_{n-1}|^{1/(n-1)},
// |s_n/2|^{1/n}} on the modulus of every root, rounded upward.
double fujiwara_bound(const CharPolyData& cp);

// Minimal polynomial over Q, from the first linear dependency among
// I, m, m^2, ...
RationalPolynomial minimal_polynomial(const IntegerMatrix& m);

// True iff the minimal polynomial is squarefree.
bool is_semisimple(const IntegerMatrix& m);

// Characteristic data of x^{-1} for det(x) = 1: s_i(x^{-1}) = s_{n-i}(x).
CharPolyData symmetric_of_inverse(const CharPolyData& cp);

}  // namespace systole
