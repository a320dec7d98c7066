#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "systole/lattice.hpp"
#include "systole/spectral.hpp"

namespace systole {

inline constexpr double kDefaultBudget = 1e10;

struct EnumerationFilters {
  bool semisimple_only = false;
  bool exclude_identity = false;
};

struct EnumerationTask {
  CongruenceSpec spec;
  long height = 1;  // max absolute entry / coefficient
  EnumerationFilters filters;
  // Refuse when the congruence-restricted candidate count exceeds this.
  double budget = kDefaultBudget;
  unsigned precision_bits = kDefaultPrecisionBits;
};

struct EnumerationRecord {
  // Matrix entries (row-major) or quaternion coefficients (w, x, y, z).
  std::vector<long> entries;
  mpz_class trace;
  ElementClass element_class = ElementClass::Identity;
  // Absent for non-semisimple elements.
  std::optional<double> length;
  double length_error = 0.0;
  // Present when the level is a usable prime power and the element is
  // semisimple and not the identity.
  std::optional<long> witness_q;
  bool witness_failed = false;
  std::optional<bool> passes_length_bound;

  bool is_semisimple() const { return element_class != ElementClass::NonSemisimple; }
};

struct EnumerationResult {
  // Congruence-restricted candidate count (before determinant pruning).
  double search_space = 0.0;
  std::uint64_t count_total = 0;
  std::uint64_t count_semisimple = 0;
  std::optional<double> min_length;  // over positive-length records
  std::optional<EnumerationRecord> min_length_witness;
  std::optional<mpz_class> min_abs_trace;  // over non-identity semisimple records
  std::uint64_t witness_failures = 0;
  std::uint64_t length_bound_failures = 0;
  // Level as p^m when p is prime, p > 2n and (quaternions) p does not divide 2ab.
  std::optional<PrimePower> tower;
  std::vector<EnumerationRecord> records;
};

// Product of the residue-class sizes; this is what the budget limits.
double candidate_count(const EnumerationTask& task);

EnumerationResult enumerate_sl(const EnumerationTask& task);
EnumerationResult enumerate_quat(const EnumerationTask& task);
// Dispatches on the ambient group and splits the work into `parts`
// contiguous ranges. The merged result does not depend on `parts`.
EnumerationResult partitioned_run(const EnumerationTask& task, unsigned parts);

LatticeElement to_element(const EnumerationTask& task, const EnumerationRecord& r);

void write_csv(std::ostream& os, const EnumerationResult& result);

}  // namespace systole
