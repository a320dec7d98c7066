#include "systole/exact.hpp"

#include <algorithm>

#include "systole/bigfloat.hpp"
#include "systole/error.hpp"

namespace systole {

mpz_class CharPolyData::s(std::size_t j) const {
  if (j == 0) return 1;
  if (j > sym.size()) return 0;
  return sym[j - 1];
}

RationalPolynomial CharPolyData::polynomial() const {
  const std::size_t n = sym.size();
  std::vector<mpq_class> c(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    mpz_class v = s(j);
    c[n - j] = (j % 2 == 0) ? mpq_class(v) : mpq_class(-v);
  }
  return RationalPolynomial(std::move(c));
}

CharPolyData char_poly(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) {
    return {};
  }
  // coeffs of det(X I - M[t:, t:]) as [1, c_1, ..., c_k], built from the
  // bottom-right corner outward.
  std::vector<mpz_class> vec{1, -m(n - 1, n - 1)};
  for (std::size_t t = n - 1; t-- > 0;) {
    const std::size_t k = n - t;  // size of the current block
    // diags = [1, -a, -R C, -R A C, ..., -R A^{k-2} C]
    std::vector<mpz_class> diags;
    diags.reserve(k + 1);
    diags.emplace_back(1);
    diags.emplace_back(-m(t, t));
    std::vector<mpz_class> col(k - 1);  // A^i C, starting at C
    for (std::size_t r = 0; r + 1 < k; ++r) {
      col[r] = m(t + 1 + r, t);
    }
    for (std::size_t i = 0; i + 1 < k; ++i) {
      mpz_class dot = 0;
      for (std::size_t r = 0; r + 1 < k; ++r) {
        dot += m(t, t + 1 + r) * col[r];
      }
      diags.push_back(-dot);
      if (i + 2 < k) {
        std::vector<mpz_class> next(k - 1);
        for (std::size_t r = 0; r + 1 < k; ++r) {
          for (std::size_t c = 0; c + 1 < k; ++c) {
            next[r] += m(t + 1 + r, t + 1 + c) * col[c];
          }
        }
        col = std::move(next);
      }
    }
    // Lower-triangular Toeplitz (k+1) x k times vec (length k).
    std::vector<mpz_class> out(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = 0; j < k && j <= i; ++j) {
        out[i] += diags[i - j] * vec[j];
      }
    }
    vec = std::move(out);
  }
  CharPolyData cp;
  cp.sym.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    cp.sym[j - 1] = (j % 2 == 0) ? vec[j] : mpz_class(-vec[j]);
  }
  return cp;
}

CharPolyData char_poly_from_polynomial(const RationalPolynomial& p) {
  if (p.degree() < 0 || p.leading() != 1) {
    throw Error(ErrorKind::InvalidInput, "polynomial must be monic");
  }
  const std::size_t n = static_cast<std::size_t>(p.degree());
  CharPolyData cp;
  cp.sym.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    mpq_class c = p.coefficient(n - j);
    if (c.get_den() != 1) {
      throw Error(ErrorKind::NonIntegralResult, "polynomial has non-integer coefficients");
    }
    cp.sym[j - 1] = (j % 2 == 0) ? c.get_num() : mpz_class(-c.get_num());
  }
  return cp;
}

PowerTraces newton_power_traces(const CharPolyData& cp) {
  const std::size_t n = cp.degree();
  PowerTraces pt;
  pt.traces.resize(n);
  // j s_j = sum_{i=1}^{j} (-1)^{i-1} s_{j-i} p_i, solved for p_j.
  for (std::size_t j = 1; j <= n; ++j) {
    mpz_class acc = mpz_class(static_cast<unsigned long>(j)) * cp.s(j);
    for (std::size_t i = 1; i < j; ++i) {
      mpz_class term = cp.s(j - i) * pt.traces[i - 1];
      if (i % 2 == 1) {
        acc -= term;
      } else {
        acc += term;
      }
    }
    pt.traces[j - 1] = (j % 2 == 1) ? acc : mpz_class(-acc);
  }
  return pt;
}

CharPolyData newton_symmetric(const PowerTraces& pt) {
  const std::size_t n = pt.degree();
  CharPolyData cp;
  cp.sym.resize(n);
  for (std::size_t j = 1; j <= n; ++j) {
    mpz_class acc = 0;
    for (std::size_t i = 1; i <= j; ++i) {
      mpz_class term = cp.s(j - i) * pt.traces[i - 1];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), j)) {
      throw Error(ErrorKind::NonIntegralResult,
                  "Newton step " + std::to_string(j) + " does not divide exactly");
    }
    mpz_divexact_ui(cp.sym[j - 1].get_mpz_t(), acc.get_mpz_t(), j);
  }
  return cp;
}

std::vector<mpq_class> newton_symmetric_rational(const std::vector<mpq_class>& traces) {
  const std::size_t n = traces.size();
  std::vector<mpq_class> s(n + 1);
  s[0] = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    mpq_class acc = 0;
    for (std::size_t i = 1; i <= j; ++i) {
      mpq_class term = s[j - i] * traces[i - 1];
      if (i % 2 == 1) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    s[j] = acc / mpq_class(static_cast<unsigned long>(j));
  }
  s.erase(s.begin());
  return s;
}

double fujiwara_bound(const CharPolyData& cp) {
  const std::size_t n = cp.degree();
  constexpr mpfr_prec_t kBits = 128;
  BigFloat best(0L, kBits);
  for (std::size_t k = 1; k <= n; ++k) {
    mpq_class magnitude = abs(mpq_class(cp.s(k)));
    if (k == n) {
      magnitude /= 2;
    }
    if (magnitude == 0) continue;
    BigFloat x(magnitude, kBits);
    BigFloat root(kBits);
    mpfr_rootn_ui(root.get(), x.get(), static_cast<unsigned long>(k), MPFR_RNDU);
    best = max(best, root);
  }
  return 2.0 * best.to_double(MPFR_RNDU);
}

RationalPolynomial minimal_polynomial(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  const std::size_t len = n * n;
  struct Row {
    std::vector<mpq_class> vec;
    std::vector<mpq_class> combo;
    std::size_t pivot;
  };
  std::vector<Row> basis;
  IntegerMatrix power = IntegerMatrix::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<mpq_class> v(len);
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = power.entries()[i];
    }
    std::vector<mpq_class> combo(n + 1);
    combo[k] = 1;
    for (const Row& row : basis) {
      if (v[row.pivot] == 0) continue;
      mpq_class f = v[row.pivot] / row.vec[row.pivot];
      for (std::size_t i = 0; i < len; ++i) {
        if (row.vec[i] != 0) v[i] -= f * row.vec[i];
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (row.combo[i] != 0) combo[i] -= f * row.combo[i];
      }
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const mpq_class& x) { return x != 0; });
    if (nz == v.end()) {
      combo.resize(k + 1);
      return RationalPolynomial(std::move(combo));
    }
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    basis.push_back({std::move(v), std::move(combo), pivot});
    power = power * m;
  }
  // Unreachable by Cayley-Hamilton.
  throw Error(ErrorKind::DomainError, "no linear dependency among matrix powers");
}

bool is_semisimple(const IntegerMatrix& m) {
  // A squarefree characteristic polynomial already is the minimal one.
  if (is_squarefree(char_poly(m).polynomial())) return true;
  return is_squarefree(minimal_polynomial(m));
}

CharPolyData symmetric_of_inverse(const CharPolyData& cp) {
  const std::size_t n = cp.degree();
  if (n == 0 || cp.sym.back() != 1) {
    throw Error(ErrorKind::NotUnimodular, "s_n must equal 1");
  }
  CharPolyData inv;
  inv.sym.resize(n);
  for (std::size_t i = 1; i < n; ++i) {
    inv.sym[i - 1] = cp.sym[n - i - 1];
  }
  inv.sym[n - 1] = 1;
  return inv;
}

}  // namespace systole
