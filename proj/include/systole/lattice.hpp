#pragma once

#include <gmpxx.h>

#include <optional>
#include <variant>
#include <vector>

#include "systole/integer_matrix.hpp"
#include "systole/quaternion.hpp"

namespace systole {

struct SpecialLinear {
  unsigned n = 2;
  friend bool operator==(const SpecialLinear&, const SpecialLinear&) = default;
};

// Units of the standard order Z<1, i, j, ij> of an algebra.
struct QuaternionOrder {
  QuaternionAlgebra algebra;
  friend bool operator==(const QuaternionOrder&, const QuaternionOrder&) = default;
};

using Ambient = std::variant<SpecialLinear, QuaternionOrder>;

struct CongruenceSpec {
  Ambient ambient = SpecialLinear{};
  mpz_class level = 1;
};

struct QuaternionUnit {
  QuaternionAlgebra algebra;
  QuatElement element;
};

// An element of SL_n(Z) or of the norm-one group of the standard order.
using LatticeElement = std::variant<IntegerMatrix, QuaternionUnit>;

// Throws InvalidInput (non-integral quaternion) or NotUnimodular (det/nrd != 1).
void validate(const LatticeElement& e);

// Degree of the ambient matrix algebra (2 for quaternions).
unsigned degree(const LatticeElement& e);
// Matrix trace or reduced trace.
mpz_class trace(const LatticeElement& e);
bool is_identity(const LatticeElement& e);
bool is_semisimple(const LatticeElement& e);
// e^k; negative powers use the exact inverse.
LatticeElement power(const LatticeElement& e, long k);
// Product in the same ambient group; throws InvalidInput on mismatch.
LatticeElement multiply(const LatticeElement& x, const LatticeElement& y);

// e = identity modulo N (entrywise, or w = 1 and x = y = z = 0 mod N).
bool in_congruence(const LatticeElement& e, const mpz_class& level);

struct TraceCongruence {
  bool residue_ok = false;  // tr = n mod p^m
  mpz_class k;              // (tr - n) / p^m, floored
};

// Throws NotInSubgroup, RamifiedPrime (p | 2ab), InvalidInput (p not prime).
TraceCongruence trace_congruence(const LatticeElement& e, const mpz_class& p, unsigned m);

// Smallest |q| <= n/2, positive first, with |tr(e^q)| > p^m - n.
// Throws IdentityElement, NotSemisimple, NotInSubgroup, RamifiedPrime,
// PrimeTooSmall (p <= 2n) and NoWitness.
long witness_q(const LatticeElement& e, const mpz_class& p, unsigned m);

// (2 sqrt 2 / n) acosh((p^m - n) / n); throws LevelTooSmall if p^m <= 2n.
double congruence_length_lb(unsigned n, const mpz_class& p, unsigned m);
// (2 sqrt 2 / n) log((p^m - n) / n); throws LevelTooSmall if p^m <= 2n.
double sys_lower_bound(unsigned n, const mpz_class& p, unsigned m);
// (p^m)^{n^2 - 1}
mpz_class index_bound(unsigned n, const mpz_class& p, unsigned m);

struct GrowthRow {
  unsigned m = 0;
  double sys_lb = 0.0;
  double log_index_ub = 0.0;  // (n^2 - 1) m log p
  double predicted = 0.0;     // c1 * log_index_ub
  // (2 sqrt 2 / n)(m log p + log(1 - n p^{-m}) - log n)
  double sys_lb_identity = 0.0;
};

// Rows m = 1..m_max; throws LevelTooSmall unless p > 2n.
std::vector<GrowthRow> growth_table(unsigned n, const mpz_class& p, unsigned m_max);

// Level N = p^m with p prime, if it has that form.
struct PrimePower {
  mpz_class p;
  unsigned m = 0;
};
std::optional<PrimePower> as_prime_power(const mpz_class& level);

bool is_prime(const mpz_class& p);

}  // namespace systole
