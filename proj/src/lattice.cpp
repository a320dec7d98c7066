#include "systole/lattice.hpp"

#include <cmath>

#include "systole/bigfloat.hpp"
#include "systole/bounds.hpp"
#include "systole/error.hpp"
#include "systole/exact.hpp"

namespace systole {

namespace {

constexpr mpfr_prec_t kBits = 128;

bool congruent(const mpq_class& value, long target, const mpz_class& level) {
  if (value.get_den() != 1) return false;
  mpz_class diff = value.get_num() - target;
  return mpz_divisible_p(diff.get_mpz_t(), level.get_mpz_t()) != 0;
}

const QuaternionUnit* as_quat(const LatticeElement& e) { return std::get_if<QuaternionUnit>(&e); }

void check_level(const mpz_class& level) {
  if (level < 1) throw Error(ErrorKind::InvalidInput, "level must be a positive integer");
}

// Shared preconditions of the tower operations.
mpz_class tower_level(const LatticeElement& e, const mpz_class& p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, "p must be prime");
  if (m < 1) throw Error(ErrorKind::InvalidInput, "m must be at least 1");
  if (const QuaternionUnit* q = as_quat(e)) {
    const mpz_class twice_ab = 2 * mpz_class(q->algebra.a) * mpz_class(q->algebra.b);
    if (mpz_divisible_p(twice_ab.get_mpz_t(), p.get_mpz_t())) {
      throw Error(ErrorKind::RamifiedPrime, "p divides 2ab");
    }
  }
  mpz_class level;
  mpz_pow_ui(level.get_mpz_t(), p.get_mpz_t(), m);
  if (!in_congruence(e, level)) {
    throw Error(ErrorKind::NotInSubgroup, "element is not congruent to 1 modulo p^m");
  }
  return level;
}

BigFloat level_ratio(unsigned n, const mpz_class& p, unsigned m) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be positive");
  mpz_class pm;
  mpz_pow_ui(pm.get_mpz_t(), p.get_mpz_t(), m);
  if (pm <= 2 * n) throw Error(ErrorKind::LevelTooSmall, "p^m must exceed 2n");
  return BigFloat(mpq_class(pm - n, n), kBits);
}

BigFloat two_sqrt2_over(unsigned n) {
  return BigFloat(2L, kBits) * sqrt(BigFloat(2L, kBits)) / BigFloat(static_cast<long>(n), kBits);
}

}  // namespace

bool is_prime(const mpz_class& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

std::optional<PrimePower> as_prime_power(const mpz_class& level) {
  if (level < 2) return std::nullopt;
  for (unsigned m = 1; m < mpz_sizeinbase(level.get_mpz_t(), 2) + 1; ++m) {
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), level.get_mpz_t(), m) != 0 && is_prime(root)) {
      // The smallest exponent with a prime root is the only one.
      return PrimePower{root, m};
    }
  }
  return std::nullopt;
}

void validate(const LatticeElement& e) {
  if (const QuaternionUnit* q = as_quat(e)) {
    if (!q->element.is_integral()) {
      throw Error(ErrorKind::InvalidInput, "quaternion coefficients must be integers");
    }
    if (quat_trd_nrd(q->element, q->algebra).nrd != 1) {
      throw Error(ErrorKind::NotUnimodular, "reduced norm must be 1");
    }
    return;
  }
  const IntegerMatrix& m = std::get<IntegerMatrix>(e);
  if (m.size() == 0) throw Error(ErrorKind::InvalidInput, "empty matrix");
  if (m.determinant() != 1) throw Error(ErrorKind::NotUnimodular, "determinant must be 1");
}

unsigned degree(const LatticeElement& e) {
  if (as_quat(e)) return 2;
  return static_cast<unsigned>(std::get<IntegerMatrix>(e).size());
}

mpz_class trace(const LatticeElement& e) {
  if (const QuaternionUnit* q = as_quat(e)) {
    const mpq_class t = quat_trd_nrd(q->element, q->algebra).trd;
    if (t.get_den() != 1) throw Error(ErrorKind::InvalidInput, "non-integral reduced trace");
    return t.get_num();
  }
  return std::get<IntegerMatrix>(e).trace();
}

bool is_identity(const LatticeElement& e) {
  if (const QuaternionUnit* q = as_quat(e)) return q->element == QuatElement::one();
  return std::get<IntegerMatrix>(e).is_identity();
}

bool is_semisimple(const LatticeElement& e) {
  if (const QuaternionUnit* q = as_quat(e)) return quat_is_semisimple(q->element, q->algebra);
  return is_semisimple(std::get<IntegerMatrix>(e));
}

LatticeElement power(const LatticeElement& e, long k) {
  if (const QuaternionUnit* q = as_quat(e)) {
    return QuaternionUnit{q->algebra, quat_power(q->element, k, q->algebra)};
  }
  const IntegerMatrix& m = std::get<IntegerMatrix>(e);
  if (k >= 0) return m.power(static_cast<unsigned long>(k));
  return m.unimodular_inverse().power(0UL - static_cast<unsigned long>(k));
}

LatticeElement multiply(const LatticeElement& x, const LatticeElement& y) {
  if (x.index() != y.index()) throw Error(ErrorKind::InvalidInput, "mixed ambient groups");
  if (const QuaternionUnit* qx = as_quat(x)) {
    const QuaternionUnit& qy = std::get<QuaternionUnit>(y);
    if (!(qx->algebra == qy.algebra)) throw Error(ErrorKind::InvalidInput, "different algebras");
    return QuaternionUnit{qx->algebra, quat_mult(qx->element, qy.element, qx->algebra)};
  }
  const IntegerMatrix& a = std::get<IntegerMatrix>(x);
  const IntegerMatrix& b = std::get<IntegerMatrix>(y);
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "different matrix sizes");
  return a * b;
}

bool in_congruence(const LatticeElement& e, const mpz_class& level) {
  check_level(level);
  if (const QuaternionUnit* q = as_quat(e)) {
    const auto& c = q->element.coeffs;
    return congruent(c[0], 1, level) && congruent(c[1], 0, level) && congruent(c[2], 0, level) &&
           congruent(c[3], 0, level);
  }
  const IntegerMatrix& m = std::get<IntegerMatrix>(e);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      mpz_class diff = m(i, j) - (i == j ? 1 : 0);
      if (!mpz_divisible_p(diff.get_mpz_t(), level.get_mpz_t())) return false;
    }
  }
  return true;
}

TraceCongruence trace_congruence(const LatticeElement& e, const mpz_class& p, unsigned m) {
  const mpz_class level = tower_level(e, p, m);
  const mpz_class diff = trace(e) - degree(e);
  TraceCongruence out;
  out.residue_ok = mpz_divisible_p(diff.get_mpz_t(), level.get_mpz_t()) != 0;
  mpz_fdiv_q(out.k.get_mpz_t(), diff.get_mpz_t(), level.get_mpz_t());
  return out;
}

long witness_q(const LatticeElement& e, const mpz_class& p, unsigned m) {
  const mpz_class level = tower_level(e, p, m);
  const unsigned n = degree(e);
  if (p <= 2 * n) throw Error(ErrorKind::PrimeTooSmall, "p must exceed 2n");
  if (is_identity(e)) throw Error(ErrorKind::IdentityElement, "identity has no witness");
  if (!is_semisimple(e)) throw Error(ErrorKind::NotSemisimple, "element is not semisimple");
  const mpz_class threshold = level - n;
  for (long k = 1; k <= static_cast<long>(n / 2); ++k) {
    for (long q : {k, -k}) {
      if (abs(trace(power(e, q))) > threshold) return q;
    }
  }
  throw Error(ErrorKind::NoWitness, "no power with large trace");
}

double congruence_length_lb(unsigned n, const mpz_class& p, unsigned m) {
  const BigFloat z = level_ratio(n, p, m);
  return (two_sqrt2_over(n) * acosh(z)).to_double();
}

double sys_lower_bound(unsigned n, const mpz_class& p, unsigned m) {
  const BigFloat z = level_ratio(n, p, m);
  return (two_sqrt2_over(n) * log(z)).to_double();
}

mpz_class index_bound(unsigned n, const mpz_class& p, unsigned m) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, "p must be prime");
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidInput, "n and m must be positive");
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(m) * (n * n - 1));
  return out;
}

std::vector<GrowthRow> growth_table(unsigned n, const mpz_class& p, unsigned m_max) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidInput, "p must be prime");
  if (p <= 2 * n) throw Error(ErrorKind::LevelTooSmall, "p must exceed 2n");
  const double c1 = growth_constant({Family::SpecialLinear, n, std::nullopt, 1}).c1;
  const double log_p = log(BigFloat(p, kBits)).to_double();
  const double scale = two_sqrt2_over(n).to_double();
  std::vector<GrowthRow> rows;
  rows.reserve(m_max);
  for (unsigned m = 1; m <= m_max; ++m) {
    GrowthRow r;
    r.m = m;
    r.sys_lb = sys_lower_bound(n, p, m);
    r.log_index_ub = double(n * n - 1) * m * log_p;
    r.predicted = c1 * r.log_index_ub;
    // log(1 - n p^{-m}) through log1p to keep accuracy at large m.
    const double np_m = (BigFloat(static_cast<long>(n), kBits) /
                         pow(BigFloat(p, kBits), static_cast<unsigned long>(m)))
                            .to_double();
    r.sys_lb_identity = scale * (m * log_p + std::log1p(-np_m) - std::log(double(n)));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace systole
