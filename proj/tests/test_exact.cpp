#include "doctest.h"
#include "support.hpp"
#include "systole/error.hpp"
#include "systole/exact.hpp"
#include "systole/polynomial.hpp"

using namespace systole;
using testing::make_rng;
using testing::random_unimodular;

namespace {

std::vector<mpq_class> ascending(const CharPolyData& cp) { return cp.polynomial().coefficients(); }

IntegerMatrix random_integer_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  IntegerMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = testing::uniform(rng, -bound, bound);
  }
  return m;
}

// Semisimple iff the squarefree part of the characteristic polynomial
// annihilates the matrix.
bool semisimple_by_radical(const IntegerMatrix& m) {
  const RationalPolynomial chi(testing::charpoly_by_interpolation(m));
  const RationalPolynomial g = gcd(chi, chi.derivative());
  const RationalPolynomial radical = exact_quotient(chi, g);
  return testing::is_zero(testing::evaluate_at(radical.coefficients(), m));
}

}  // namespace

TEST_CASE("char_poly on small examples") {
  CHECK(char_poly(IntegerMatrix{{1, 5}, {5, 26}}).sym == std::vector<mpz_class>{27, 1});
  CHECK(char_poly(IntegerMatrix{{2, 1, 0}, {1, 1, 0}, {0, 0, 1}}).sym ==
        std::vector<mpz_class>{4, 4, 1});
  CHECK(char_poly(IntegerMatrix::identity(4)).sym == std::vector<mpz_class>{4, 6, 4, 1});
  // Companion matrix of X^3 + 3X^2 - 1.
  const CharPolyData cp = char_poly(IntegerMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, -3}});
  CHECK(cp.sym == std::vector<mpz_class>{-3, 0, 1});
  CHECK(cp.polynomial().coefficients() == std::vector<mpq_class>{-1, 0, 3, 1});
}

TEST_CASE("char_poly agrees with interpolated det(tI - M)") {
  auto rng = make_rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const IntegerMatrix m = random_integer_matrix(rng, n, 9);
    CHECK(ascending(char_poly(m)) == testing::charpoly_by_interpolation(m));
  }
}

TEST_CASE("Newton identities round trip") {
  auto rng = make_rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const IntegerMatrix m = random_integer_matrix(rng, n, 12);
    const CharPolyData cp = char_poly(m);
    const PowerTraces pt = newton_power_traces(cp);
    // Power traces against direct matrix powers.
    IntegerMatrix power = m;
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(pt.traces[k] == power.trace());
      power = power * m;
    }
    CHECK(newton_symmetric(pt) == cp);
  }
}

TEST_CASE("newton_symmetric rejects inconsistent traces") {
  // p_1 = 1, p_2 = 0 would need s_2 = 1/2.
  CHECK_THROWS_AS(newton_symmetric(PowerTraces{{1, 0}}), Error);
  try {
    newton_symmetric(PowerTraces{{1, 0}});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonIntegralResult);
  }
  const auto s = newton_symmetric_rational({1, 0});
  CHECK(s[0] == 1);
  CHECK(s[1] == mpq_class(1, 2));
}

TEST_CASE("Cayley-Hamilton") {
  auto rng = make_rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const IntegerMatrix m = random_integer_matrix(rng, n, 7);
    CHECK(testing::is_zero(testing::evaluate_at(ascending(char_poly(m)), m)));
  }
}

TEST_CASE("symmetric_of_inverse") {
  auto rng = make_rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const IntegerMatrix m = random_unimodular(rng, n);
    const CharPolyData cp = char_poly(m);
    const CharPolyData inv = symmetric_of_inverse(cp);
    CHECK(inv == char_poly(m.unimodular_inverse()));
    CHECK(symmetric_of_inverse(inv) == cp);
  }
  CHECK(symmetric_of_inverse(char_poly(IntegerMatrix{{1, 5}, {5, 26}})).sym ==
        std::vector<mpz_class>{27, 1});
  CHECK_THROWS_AS(symmetric_of_inverse(char_poly(IntegerMatrix{{2, 0}, {0, 1}})), Error);
}

TEST_CASE("fujiwara_bound examples") {
  // X^2 - 27X + 1: 2 max(27, sqrt(1/2)) = 54.
  CHECK(fujiwara_bound(char_poly(IntegerMatrix{{1, 5}, {5, 26}})) == doctest::Approx(54.0));
  CHECK(fujiwara_bound(char_poly(IntegerMatrix::identity(3))) >= 1.0);
  // The bound is rounded up, never below the exact value 54.
  CHECK(fujiwara_bound(char_poly(IntegerMatrix{{1, 5}, {5, 26}})) >= 54.0);
}

TEST_CASE("is_semisimple against the radical test") {
  CHECK(is_semisimple(IntegerMatrix::identity(3)));
  CHECK_FALSE(is_semisimple(IntegerMatrix{{1, 1}, {0, 1}}));
  CHECK(is_semisimple(IntegerMatrix{{-1, 0}, {0, -1}}));
  CHECK_FALSE(is_semisimple(IntegerMatrix{{-1, 1}, {0, -1}}));
  // Repeated eigenvalue, still diagonalizable.
  const IntegerMatrix a{{2, 1}, {1, 1}};
  CHECK(is_semisimple(testing::block_diagonal(a, a)));
  // Jordan block of 1 next to a hyperbolic block.
  CHECK_FALSE(is_semisimple(testing::block_diagonal(a, IntegerMatrix{{1, 1}, {0, 1}})));

  auto rng = make_rng(5);
  int non_semisimple = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 3;
    // Tiny entries make repeated eigenvalues and Jordan blocks common.
    const IntegerMatrix m = random_integer_matrix(rng, n, 1);
    const bool expected = semisimple_by_radical(m);
    if (!expected) ++non_semisimple;
    CHECK(is_semisimple(m) == expected);
  }
  CHECK(non_semisimple > 10);
}

TEST_CASE("minimal polynomial divides the characteristic polynomial") {
  auto rng = make_rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const IntegerMatrix m = random_integer_matrix(rng, 2 + trial % 3, 1);
    const RationalPolynomial mu = minimal_polynomial(m);
    CHECK(mu.leading() == 1);
    CHECK(testing::is_zero(testing::evaluate_at(mu.coefficients(), m)));
    CHECK(divmod(char_poly(m).polynomial(), mu).second.is_zero());
  }
}

TEST_CASE("determinant and inverse") {
  auto rng = make_rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const IntegerMatrix m = random_integer_matrix(rng, n, 20);
    CHECK(m.determinant() == testing::leibniz_det(m.entries(), n));
    CHECK(m * m.adjugate() == m.determinant() * IntegerMatrix::identity(n));
  }
  const IntegerMatrix u{{2, 1}, {1, 1}};
  CHECK(u * u.unimodular_inverse() == IntegerMatrix::identity(2));
  CHECK_THROWS_AS(IntegerMatrix({{2, 0}, {0, 2}}).unimodular_inverse(), Error);
}
