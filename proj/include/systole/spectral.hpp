#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "systole/exact.hpp"
#include "systole/integer_matrix.hpp"

namespace systole {

inline constexpr unsigned kDefaultPrecisionBits = 128;

// Root moduli of a characteristic polynomial together with the geometric
// quantities derived from them.
//
// The roots are computed per squarefree factor and certified with
// Weierstrass inclusion disks, so every reported magnitude is within
// `error_radius` of the true modulus. Roots lying exactly on the unit circle
// are identified by exact arithmetic and reported as exactly 1.
struct SpectralData {
  std::size_t n = 0;
  // |a_1| >= ... >= |a_n|, repeated according to multiplicity.
  std::vector<double> magnitudes;
  double error_radius = 0.0;
  // sqrt(2 * sum (log |a_i|)^2), the translation length in the geometric
  // metric, and a bound on its numerical error.
  double length = 0.0;
  double length_error = 0.0;
  // sum |a_i|, the trace of the hyperbolic part, and its error bound.
  double hyp_trace = 0.0;
  double hyp_trace_error = 0.0;
  // Number of roots (with multiplicity) proven to have modulus exactly 1.
  std::size_t unit_circle_roots = 0;
  // Precision (bits) at which certification succeeded.
  unsigned working_bits = 0;
};

enum class ElementClass { Identity, Elliptic, PositiveLength, NonSemisimple };

std::string_view to_string(ElementClass c) noexcept;

// Throws ConvergenceFailure when the roots cannot be certified to
// error_radius <= 2^{-precision_bits/2} * fujiwara_bound(cp) after several
// precision increases.
SpectralData root_magnitudes(const CharPolyData& cp,
                             unsigned precision_bits = kDefaultPrecisionBits);

// Requires det(m) = 1 and m semisimple.
SpectralData translation_length(const IntegerMatrix& m,
                                unsigned precision_bits = kDefaultPrecisionBits);

ElementClass classify(const IntegerMatrix& m, unsigned precision_bits = kDefaultPrecisionBits);

// Number of roots of a squarefree polynomial with modulus exactly 1, decided
// with the reciprocal/trace-polynomial reduction and a Sturm count.
std::size_t unit_circle_root_count(const RationalPolynomial& squarefree);

}  // namespace systole
