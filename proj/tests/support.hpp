#pragma once

// Generators and independent oracles shared by the test binaries.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "systole/exact.hpp"
#include "systole/integer_matrix.hpp"

namespace testing {

using systole::IntegerMatrix;

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed2024ULL + salt); }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline long max_abs_entry(const IntegerMatrix& m) {
  long best = 0;
  for (const mpz_class& e : m.entries()) {
    if (!e.fits_slong_p()) return std::numeric_limits<long>::max();
    best = std::max(best, std::labs(e.get_si()));
  }
  return best;
}

// Signed permutation (det +1) times unit lower times unit upper triangular,
// so the product has determinant exactly 1.
inline IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, long max_entry = 20,
                                       long step = 2) {
  for (;;) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    IntegerMatrix p(n);
    int sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const int s = uniform(rng, 0, 1) ? 1 : -1;
      sign *= s;
      p(i, perm[i]) = s;
    }
    // Fix the determinant: permutation parity times the sign product.
    int parity = 1;
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) parity = -parity;
    }
    if (parity * sign < 0) p(0, perm[0]) = -p(0, perm[0]);

    IntegerMatrix l = IntegerMatrix::identity(n);
    IntegerMatrix u = IntegerMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        l(i, j) = uniform(rng, -step, step);
        u(j, i) = uniform(rng, -step, step);
      }
    }
    IntegerMatrix m = p * l * u;
    if (max_abs_entry(m) <= max_entry) return m;
  }
}

// Hyperbolic element of SL_2(Z) with entries bounded by `bound`.
inline IntegerMatrix random_hyperbolic_sl2(std::mt19937_64& rng, long bound) {
  for (;;) {
    const long a = uniform(rng, -bound, bound);
    const long b = uniform(rng, -bound, bound);
    if (a == 0 || b == 0) continue;
    // ad - bc = 1 with c chosen so that a divides 1 + bc.
    const long c = uniform(rng, -bound, bound);
    const long num = 1 + b * c;
    if (num % a != 0) continue;
    const long d = num / a;
    if (std::labs(d) > bound) continue;
    if (std::labs(a + d) <= 2) continue;
    return IntegerMatrix{{a, b}, {c, d}};
  }
}

// Leibniz determinant, independent of the library's elimination code.
inline mpz_class leibniz_det(const std::vector<mpz_class>& a, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (perm[i] > perm[j]) ++inversions;
      }
    }
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i * n + perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// det(tI - M) evaluated at t = 0..n and interpolated; ascending coefficients.
inline std::vector<mpq_class> charpoly_by_interpolation(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  std::vector<mpq_class> xs(n + 1), ys(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<mpz_class> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = (i == j ? long(k) : 0L) - m(i, j);
    }
    xs[k] = long(k);
    ys[k] = leibniz_det(a, n);
  }
  std::vector<mpq_class> coeffs(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    // Lagrange basis polynomial for node k.
    std::vector<mpq_class> basis{1};
    mpq_class denom = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == k) continue;
      std::vector<mpq_class> next(basis.size() + 1);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[k] - xs[j];
    }
    for (std::size_t i = 0; i <= n; ++i) coeffs[i] += ys[k] * basis[i] / denom;
  }
  return coeffs;
}

using RationalMatrix = std::vector<mpq_class>;

inline RationalMatrix mul(const RationalMatrix& a, const RationalMatrix& b, std::size_t n) {
  RationalMatrix c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i * n + k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    }
  }
  return c;
}

// p(M) by Horner over Q; `ascending` holds the coefficients of p.
inline RationalMatrix evaluate_at(const std::vector<mpq_class>& ascending, const IntegerMatrix& m) {
  const std::size_t n = m.size();
  RationalMatrix mq(n * n);
  for (std::size_t i = 0; i < n * n; ++i) mq[i] = m.entries()[i];
  RationalMatrix acc(n * n);
  for (std::size_t k = ascending.size(); k-- > 0;) {
    acc = mul(acc, mq, n);
    for (std::size_t i = 0; i < n; ++i) acc[i * n + i] += ascending[k];
  }
  return acc;
}

inline bool is_zero(const RationalMatrix& a) {
  return std::all_of(a.begin(), a.end(), [](const mpq_class& x) { return x == 0; });
}

inline IntegerMatrix block_diagonal(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t n = a.size() + b.size();
  IntegerMatrix m(n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) m(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m(a.size() + i, a.size() + j) = b(i, j);
  }
  return m;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace testing
