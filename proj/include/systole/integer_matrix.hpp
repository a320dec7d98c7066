#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace systole {

// Dense square matrix of arbitrary-precision integers, stored row-major.
// All arithmetic is exact.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  explicit IntegerMatrix(std::size_t n);
  IntegerMatrix(std::size_t n, std::vector<mpz_class> entries);
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntegerMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }

  mpz_class& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }

  // Row-major flattened entry vector.
  const std::vector<mpz_class>& entries() const noexcept { return entries_; }

  mpz_class trace() const;
  // Fraction-free (Bareiss) determinant.
  mpz_class determinant() const;
  // Classical adjugate, so that m * adjugate(m) = det(m) * I.
  IntegerMatrix adjugate() const;
  // Exact inverse of a matrix with determinant +1 or -1.
  IntegerMatrix unimodular_inverse() const;
  IntegerMatrix power(unsigned long exponent) const;
  bool is_identity() const;

  std::string to_string() const;

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<mpz_class> entries_;
};

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix operator*(const mpz_class& s, const IntegerMatrix& m);

}  // namespace systole
