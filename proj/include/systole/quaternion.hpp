#pragma once

#include <gmpxx.h>

#include <array>
#include <string>

#include "systole/bigfloat.hpp"

namespace systole {

// The rational quaternion algebra (a, b / Q): i^2 = a, j^2 = b, ij = -ji.
struct QuaternionAlgebra {
  long a = 1;
  long b = 1;

  // Throws InvalidInput unless a, b are nonzero.
  QuaternionAlgebra(long a_, long b_);

  // D tensor R is Mat_2(R) exactly when a > 0 or b > 0.
  bool split_real() const noexcept { return a > 0 || b > 0; }

  friend bool operator==(const QuaternionAlgebra&, const QuaternionAlgebra&) = default;
};

// w + x i + y j + z ij
struct QuatElement {
  std::array<mpq_class, 4> coeffs{};

  static QuatElement one();
  static QuatElement from_integers(long w, long x, long y, long z);

  bool is_integral() const;
  bool is_scalar() const;
  std::string to_string() const;

  friend bool operator==(const QuatElement&, const QuatElement&) = default;
};

struct TrdNrd {
  mpq_class trd;
  mpq_class nrd;
};

QuatElement quat_mult(const QuatElement& u, const QuatElement& v, const QuaternionAlgebra& alg);
TrdNrd quat_trd_nrd(const QuatElement& u, const QuaternionAlgebra& alg);
QuatElement quat_conjugate(const QuatElement& u);
// Throws DomainError when nrd(u) = 0.
QuatElement quat_inverse(const QuatElement& u, const QuaternionAlgebra& alg);
// u^k for any integer k (negative powers need nrd(u) != 0).
QuatElement quat_power(const QuatElement& u, long k, const QuaternionAlgebra& alg);

// Diagonalizable image in Mat_2(C): scalar, or trd^2 != 4 nrd.
bool quat_is_semisimple(const QuatElement& u, const QuaternionAlgebra& alg);

using RealMatrix2 = std::array<std::array<BigFloat, 2>, 2>;

// Real-algebra isomorphism D tensor R -> Mat_2(R):
//   a > 0:  i -> diag(sqrt a, -sqrt a), j -> [[0, b], [1, 0]]
//   a < 0 < b: j -> diag(sqrt b, -sqrt b), i -> [[0, a], [1, 0]]
// Throws NotSplit when a < 0 and b < 0.
RealMatrix2 split_embedding(const QuatElement& u, const QuaternionAlgebra& alg,
                            mpfr_prec_t bits = 128);

// Same matrix rounded to double.
std::array<std::array<double, 2>, 2> split_embedding_double(const QuatElement& u,
                                                            const QuaternionAlgebra& alg,
                                                            mpfr_prec_t bits = 128);

}  // namespace systole
