#include "systole/integer_matrix.hpp"

#include <sstream>
#include <utility>

#include "systole/error.hpp"

namespace systole {

IntegerMatrix::IntegerMatrix(std::size_t n) : n_(n), entries_(n * n) {}

IntegerMatrix::IntegerMatrix(std::size_t n, std::vector<mpz_class> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n) {
    throw Error(ErrorKind::InvalidInput, "matrix entry count does not match n*n");
  }
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : n_(rows.size()) {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) {
      throw Error(ErrorKind::InvalidInput, "matrix is not square");
    }
    for (long v : row) {
      entries_.emplace_back(v);
    }
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

mpz_class IntegerMatrix::trace() const {
  mpz_class t = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    t += (*this)(i, i);
  }
  return t;
}

mpz_class IntegerMatrix::determinant() const {
  if (n_ == 0) {
    return 1;
  }
  std::vector<mpz_class> a = entries_;
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * n_ + j]; };
  mpz_class prev_pivot = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n_ && at(swap_row, k) == 0) {
        ++swap_row;
      }
      if (swap_row == n_) {
        return 0;
      }
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(at(k, j), at(swap_row, j));
      }
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) {
        mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev_pivot.get_mpz_t());
      }
    }
    prev_pivot = at(k, k);
  }
  return sign * at(n_ - 1, n_ - 1);
}

IntegerMatrix IntegerMatrix::adjugate() const {
  IntegerMatrix adj(n_);
  if (n_ == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      // Minor with row j and column i removed gives entry (i, j).
      IntegerMatrix minor(n_ - 1);
      for (std::size_t r = 0, mr = 0; r < n_; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, mc = 0; c < n_; ++c) {
          if (c == i) continue;
          minor(mr, mc++) = (*this)(r, c);
        }
        ++mr;
      }
      mpz_class d = minor.determinant();
      adj(i, j) = ((i + j) % 2 == 0) ? d : mpz_class(-d);
    }
  }
  return adj;
}

IntegerMatrix IntegerMatrix::unimodular_inverse() const {
  mpz_class det = determinant();
  if (det == 1) {
    return adjugate();
  }
  if (det == -1) {
    return mpz_class(-1) * adjugate();
  }
  throw Error(ErrorKind::NotUnimodular, "determinant is " + det.get_str());
}

IntegerMatrix IntegerMatrix::power(unsigned long exponent) const {
  IntegerMatrix result = identity(n_);
  IntegerMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1UL) {
      result = result * base;
    }
    exponent >>= 1;
    if (exponent > 0) {
      base = base * base;
    }
  }
  return result;
}

bool IntegerMatrix::is_identity() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

std::string IntegerMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < n_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < n_; ++j) {
      os << (j ? "," : "") << (*this)(i, j).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidInput, "matrix size mismatch");
  }
  const std::size_t n = a.size();
  IntegerMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        c(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return c;
}

IntegerMatrix operator+(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::InvalidInput, "matrix size mismatch");
  }
  std::vector<mpz_class> e(a.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = a.entries()[i] + b.entries()[i];
  }
  return IntegerMatrix(a.size(), std::move(e));
}

IntegerMatrix operator*(const mpz_class& s, const IntegerMatrix& m) {
  std::vector<mpz_class> e(m.entries().size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = s * m.entries()[i];
  }
  return IntegerMatrix(m.size(), std::move(e));
}

}  // namespace systole
