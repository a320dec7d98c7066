#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "systole/bounds.hpp"
#include "systole/error.hpp"
#include "systole/lattice.hpp"
#include "systole/spectral.hpp"

using namespace systole;
using testing::make_rng;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidInput;
}

const QuaternionAlgebra kAlg23{2, 3};

QuaternionUnit unit(long w, long x, long y, long z, QuaternionAlgebra alg = kAlg23) {
  return {alg, QuatElement::from_integers(w, x, y, z)};
}

QuatElement random_quat(std::mt19937_64& rng, long bound) {
  return QuatElement::from_integers(testing::uniform(rng, -bound, bound),
                                    testing::uniform(rng, -bound, bound),
                                    testing::uniform(rng, -bound, bound),
                                    testing::uniform(rng, -bound, bound));
}

// Norm-one elements w + x i + y j + z ij of (a, b) with small coordinates,
// found by solving for w.
std::vector<QuatElement> small_units(const QuaternionAlgebra& alg, long bound) {
  std::vector<QuatElement> out;
  for (long x = -bound; x <= bound; ++x) {
    for (long y = -bound; y <= bound; ++y) {
      for (long z = -bound; z <= bound; ++z) {
        const long w2 = 1 + alg.a * x * x + alg.b * y * y - alg.a * alg.b * z * z;
        if (w2 < 0) continue;
        const long w = std::lround(std::sqrt(double(w2)));
        if (w * w != w2) continue;
        out.push_back(QuatElement::from_integers(w, x, y, z));
        if (w != 0) out.push_back(QuatElement::from_integers(-w, x, y, z));
      }
    }
  }
  return out;
}

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 mul2(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return c;
}

}  // namespace

TEST_CASE("membership examples") {
  const LatticeElement x = IntegerMatrix{{1, 5}, {5, 26}};
  CHECK(in_congruence(x, 5));
  CHECK_FALSE(in_congruence(x, 25));
  CHECK(in_congruence(IntegerMatrix::identity(3), 1000003));
  CHECK(in_congruence(IntegerMatrix{{-4, 5}, {5, -6}}, 5) == false);
  // Quaternion: w = 1, x = y = z = 0 modulo N.
  CHECK(in_congruence(unit(1, 0, 0, 0), 7));
  CHECK_FALSE(in_congruence(unit(5, 2, 0, 0), 5));
  // Only the coefficients are tested, not the norm.
  CHECK(in_congruence(unit(11, 0, 0, 0), 5) == true);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(IntegerMatrix{{1, 5}, {5, 26}}));
  CHECK(kind_of([] { validate(IntegerMatrix{{2, 0}, {0, 1}}); }) == ErrorKind::NotUnimodular);
  // nrd(1 + 5i) = 1 - 2 * 25 = -49.
  CHECK(kind_of([] { validate(unit(1, 5, 0, 0)); }) == ErrorKind::NotUnimodular);
  QuatElement half = QuatElement::one();
  half.coeffs[1] = mpq_class(1, 2);
  CHECK(kind_of([&] { validate(QuaternionUnit{kAlg23, half}); }) == ErrorKind::InvalidInput);
  CHECK_NOTHROW(validate(unit(3, 2, 0, 0)));  // 9 - 8 = 1
}

TEST_CASE("trace congruence examples") {
  const TraceCongruence t = trace_congruence(IntegerMatrix{{1, 5}, {5, 26}}, 5, 1);
  CHECK(t.residue_ok);
  CHECK(t.k == 5);
  const TraceCongruence id = trace_congruence(IntegerMatrix::identity(2), 5, 1);
  CHECK(id.residue_ok);
  CHECK(id.k == 0);
  const TraceCongruence neg = trace_congruence(IntegerMatrix{{1, 5}, {-5, -24}}, 5, 1);
  CHECK(neg.residue_ok);
  CHECK(neg.k == -5);

  CHECK(kind_of([] { trace_congruence(IntegerMatrix{{2, 1}, {1, 1}}, 5, 1); }) ==
        ErrorKind::NotInSubgroup);
  CHECK(kind_of([] { trace_congruence(unit(1, 0, 0, 0), 3, 1); }) == ErrorKind::RamifiedPrime);
  CHECK(kind_of([] { trace_congruence(unit(1, 0, 0, 0), 2, 1); }) == ErrorKind::RamifiedPrime);
  CHECK(kind_of([] { trace_congruence(IntegerMatrix::identity(2), 6, 1); }) ==
        ErrorKind::InvalidInput);
}

TEST_CASE("trace congruence holds on products of subgroup generators") {
  // Random words in elementary matrices E_ij(N) lie in Gamma(N).
  auto rng = make_rng(31);
  for (unsigned p : {5u, 7u, 11u}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + trial % 3;
      IntegerMatrix x = IntegerMatrix::identity(n);
      for (int step = 0; step < 6; ++step) {
        std::size_t i = testing::uniform(rng, 0, n - 1), j = testing::uniform(rng, 0, n - 1);
        if (i == j) continue;
        IntegerMatrix e = IntegerMatrix::identity(n);
        e(i, j) = static_cast<long>(p) * testing::uniform(rng, -2, 2);
        x = x * e;
      }
      REQUIRE(in_congruence(x, p));
      const TraceCongruence t = trace_congruence(x, p, 1);
      CHECK(t.residue_ok);
      CHECK(x.trace() == t.k * p + static_cast<long>(n));
    }
  }
}

TEST_CASE("witness examples") {
  CHECK(witness_q(IntegerMatrix{{1, 5}, {5, 26}}, 5, 1) == 1);
  CHECK(witness_q(IntegerMatrix{{1, 5}, {-5, -24}}, 5, 1) == 1);
  CHECK(kind_of([] { witness_q(IntegerMatrix{{1, 5}, {0, 1}}, 5, 1); }) ==
        ErrorKind::NotSemisimple);
  CHECK(kind_of([] { witness_q(IntegerMatrix::identity(2), 5, 1); }) ==
        ErrorKind::IdentityElement);
  CHECK(kind_of([] { witness_q(IntegerMatrix{{1, 3}, {3, 10}}, 3, 1); }) ==
        ErrorKind::PrimeTooSmall);
  CHECK(kind_of([] { witness_q(IntegerMatrix{{2, 1}, {1, 1}}, 5, 1); }) ==
        ErrorKind::NotInSubgroup);
}

TEST_CASE("witness exists with |q| <= n/2 on random subgroup elements") {
  auto rng = make_rng(32);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const long p = n == 2 ? 5 : (n == 3 ? 7 : 11);
    IntegerMatrix x = IntegerMatrix::identity(n);
    for (int step = 0; step < 5; ++step) {
      std::size_t i = testing::uniform(rng, 0, n - 1), j = testing::uniform(rng, 0, n - 1);
      if (i == j) continue;
      IntegerMatrix e = IntegerMatrix::identity(n);
      e(i, j) = p * testing::uniform(rng, -1, 1);
      x = x * e;
    }
    if (x == IntegerMatrix::identity(n) || !is_semisimple(LatticeElement{x})) continue;
    const long q = witness_q(x, p, 1);
    CHECK(std::labs(q) * 2 <= static_cast<long>(n));
    const mpz_class tq = trace(power(x, q));
    CHECK(abs(tq) > p - static_cast<long>(n));
    // Every |q'| < |q| fails, so q is minimal.
    for (long r = 1; r < std::labs(q); ++r) {
      CHECK(abs(trace(power(x, r))) <= p - static_cast<long>(n));
      CHECK(abs(trace(power(x, -r))) <= p - static_cast<long>(n));
    }
    // The corresponding length bound holds.
    CHECK(translation_length(x).length >= congruence_length_lb(n, p, 1) - 1e-9);
    ++found;
  }
  CHECK(found > 40);
}

TEST_CASE("length lower bounds") {
  CHECK(congruence_length_lb(2, 5, 1) == doctest::Approx(1.3610725787472008).epsilon(1e-14));
  CHECK(congruence_length_lb(2, 5, 2) == doctest::Approx(4.4315774608844012).epsilon(1e-14));
  CHECK(congruence_length_lb(3, 7, 1) == doctest::Approx(0.74987774820398625).epsilon(1e-14));
  CHECK(sys_lower_bound(2, 5, 1) == doctest::Approx(0.57341425495563926).epsilon(1e-14));
  CHECK(sys_lower_bound(2, 5, 2) == doctest::Approx(3.4540003014408501).epsilon(1e-14));
  CHECK(kind_of([] { sys_lower_bound(2, 3, 1); }) == ErrorKind::LevelTooSmall);
  CHECK(kind_of([] { congruence_length_lb(3, 2, 2); }) == ErrorKind::LevelTooSmall);

  for (unsigned n = 2; n <= 6; ++n) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 101L}) {
      for (unsigned m = 1; m <= 4; ++m) {
        mpz_class level;
        mpz_pow_ui(level.get_mpz_t(), mpz_class(p).get_mpz_t(), m);
        if (level <= 2 * n) continue;
        CHECK(sys_lower_bound(n, p, m) <= congruence_length_lb(n, p, m));
      }
    }
  }
}

TEST_CASE("index bound") {
  CHECK(index_bound(2, 3, 1) == 27);
  CHECK(index_bound(2, 5, 1) == 125);
  mpz_class expected;
  mpz_pow_ui(expected.get_mpz_t(), mpz_class(25).get_mpz_t(), 8);
  CHECK(index_bound(3, 5, 2) == expected);

  // |SL_2(F_p)| = p (p^2 - 1) by brute force, below the bound.
  for (long p : {2L, 3L, 5L, 7L}) {
    long count = 0;
    for (long a = 0; a < p; ++a)
      for (long b = 0; b < p; ++b)
        for (long c = 0; c < p; ++c)
          for (long d = 0; d < p; ++d) count += ((a * d - b * c) % p + p) % p == 1;
    CHECK(count == p * (p * p - 1));
    CHECK(count <= index_bound(2, p, 1));
  }
}

TEST_CASE("growth table") {
  const auto rows = growth_table(2, 5, 4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].sys_lb == doctest::Approx(0.57341425495563926).epsilon(1e-14));
  CHECK(rows[1].sys_lb == doctest::Approx(3.4540003014408501).epsilon(1e-14));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].m == i + 1);
    CHECK(std::abs(rows[i].sys_lb - rows[i].sys_lb_identity) < 1e-12);
    CHECK(rows[i].log_index_ub == doctest::Approx(3.0 * (i + 1) * std::log(5.0)));
    if (i > 0) CHECK(rows[i].sys_lb >= rows[i - 1].sys_lb);
  }
  CHECK(growth_table(3, 7, 0).empty());
  CHECK(kind_of([] { growth_table(3, 5, 2); }) == ErrorKind::LevelTooSmall);
  for (unsigned n = 2; n <= 5; ++n) {
    for (const GrowthRow& r : growth_table(n, 101, 6)) {
      CHECK(std::abs(r.sys_lb - r.sys_lb_identity) < 1e-12);
      CHECK(r.sys_lb == doctest::Approx(sys_lower_bound(n, 101, r.m)).epsilon(1e-15));
    }
  }
}

TEST_CASE("prime powers") {
  const auto pp = as_prime_power(125);
  REQUIRE(pp.has_value());
  CHECK(pp->p == 5);
  CHECK(pp->m == 3u);
  CHECK_FALSE(as_prime_power(12).has_value());
  CHECK_FALSE(as_prime_power(1).has_value());
  CHECK(as_prime_power(7)->m == 1u);
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("quaternion arithmetic") {
  const QuatElement i = QuatElement::from_integers(0, 1, 0, 0);
  const QuatElement j = QuatElement::from_integers(0, 0, 1, 0);
  const QuatElement ij = quat_mult(i, j, kAlg23);
  CHECK(ij == QuatElement::from_integers(0, 0, 0, 1));
  CHECK(quat_mult(j, i, kAlg23) == QuatElement::from_integers(0, 0, 0, -1));
  CHECK(quat_mult(i, i, kAlg23) == QuatElement::from_integers(2, 0, 0, 0));
  CHECK(quat_mult(ij, ij, kAlg23) == QuatElement::from_integers(-6, 0, 0, 0));
  CHECK(quat_trd_nrd(ij, kAlg23).nrd == 6);
  CHECK(quat_trd_nrd(QuatElement::one(), kAlg23).nrd == 1);
  CHECK(quat_trd_nrd(QuatElement::one(), kAlg23).trd == 2);
  CHECK(kind_of([] { QuaternionAlgebra(0, 3); }) == ErrorKind::InvalidInput);

  auto rng = make_rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const QuaternionAlgebra alg(testing::uniform(rng, 1, 7) * (trial % 2 ? 1 : -1),
                                testing::uniform(rng, 1, 7));
    const QuatElement u = random_quat(rng, 9), v = random_quat(rng, 9), w = random_quat(rng, 9);
    // Associativity and multiplicativity of the norm.
    CHECK(quat_mult(quat_mult(u, v, alg), w, alg) == quat_mult(u, quat_mult(v, w, alg), alg));
    CHECK(quat_trd_nrd(quat_mult(u, v, alg), alg).nrd ==
          quat_trd_nrd(u, alg).nrd * quat_trd_nrd(v, alg).nrd);
    // u * conj(u) = nrd(u).
    const QuatElement n = quat_mult(u, quat_conjugate(u), alg);
    CHECK(n.is_scalar());
    CHECK(n.coeffs[0] == quat_trd_nrd(u, alg).nrd);
    if (quat_trd_nrd(u, alg).nrd != 0) {
      CHECK(quat_mult(u, quat_inverse(u, alg), alg) == QuatElement::one());
      CHECK(quat_power(u, -2, alg) == quat_inverse(quat_mult(u, u, alg), alg));
    }
    CHECK(quat_power(u, 3, alg) == quat_mult(u, quat_mult(u, u, alg), alg));
  }
}

TEST_CASE("split embedding") {
  const auto one = split_embedding_double(QuatElement::one(), kAlg23);
  CHECK(one[0][0] == 1.0);
  CHECK(one[0][1] == 0.0);
  CHECK(one[1][0] == 0.0);
  CHECK(one[1][1] == 1.0);
  const auto i = split_embedding_double(QuatElement::from_integers(0, 1, 0, 0), kAlg23);
  CHECK(i[0][0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(i[1][1] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
  CHECK(i[0][0] + i[1][1] == doctest::Approx(0.0));
  CHECK(kind_of([] { split_embedding(QuatElement::one(), QuaternionAlgebra(-1, -1)); }) ==
        ErrorKind::NotSplit);

  auto rng = make_rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    // Both sign patterns that split over R.
    const long a = testing::uniform(rng, 1, 7), b = testing::uniform(rng, 1, 7);
    const QuaternionAlgebra alg = trial % 2 ? QuaternionAlgebra(a, b) : QuaternionAlgebra(-a, b);
    const QuatElement u = random_quat(rng, 6), v = random_quat(rng, 6);
    const Mat2 mu = split_embedding_double(u, alg), mv = split_embedding_double(v, alg);
    const Mat2 muv = split_embedding_double(quat_mult(u, v, alg), alg);
    const Mat2 prod = mul2(mu, mv);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        CHECK(std::abs(prod[r][c] - muv[r][c]) <= 1e-9 * std::max(1.0, std::abs(muv[r][c])));
      }
    }
    const TrdNrd tn = quat_trd_nrd(u, alg);
    CHECK(std::abs(mu[0][0] + mu[1][1] - tn.trd.get_d()) < 1e-10);
    const double det = mu[0][0] * mu[1][1] - mu[0][1] * mu[1][0];
    CHECK(std::abs(det - tn.nrd.get_d()) <= 1e-10 * std::max(1.0, std::abs(tn.nrd.get_d())));
  }
}

TEST_CASE("unit lengths match the SL2 formula") {
  int hyperbolic = 0;
  for (const QuaternionAlgebra alg : {QuaternionAlgebra(2, 3), QuaternionAlgebra(-1, 3),
                                      QuaternionAlgebra(5, 7)}) {
    for (const QuatElement& u : small_units(alg, 3)) {
      const QuaternionUnit x{alg, u};
      CHECK_NOTHROW(validate(x));
      const Mat2 m = split_embedding_double(u, alg);
      CHECK(std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0] - 1) < 1e-9);
      const double trd = trace(x).get_d();
      if (std::abs(trd) <= 2) continue;
      // Eigenvalue of the embedded matrix, computed directly.
      const double t = m[0][0] + m[1][1];
      const double lambda = (std::abs(t) + std::sqrt(t * t - 4)) / 2;
      CHECK(std::abs(2 * std::log(lambda) - exact_length_n2(trd)) < 1e-9);
      ++hyperbolic;
    }
  }
  CHECK(hyperbolic > 20);
}

TEST_CASE("quaternion witnesses") {
  const QuaternionUnit u = unit(5, 2, 2, 0, QuaternionAlgebra(2, 3));  // 25 - 8 - 12 = 5
  CHECK(kind_of([&] { validate(u); }) == ErrorKind::NotUnimodular);

  const QuaternionUnit v = unit(3, 2, 0, 0);  // nrd 1
  // Some power of a unit reduces to the identity mod 5.
  LatticeElement x = v;
  long k = 1;
  while (!in_congruence(x, 5)) x = multiply(x, v), ++k;
  CHECK(k > 1);
  CHECK(witness_q(x, 5, 1) == 1);
  CHECK(trace_congruence(x, 5, 1).residue_ok);
  CHECK(kind_of([&] { witness_q(x, 3, 1); }) == ErrorKind::RamifiedPrime);
}
