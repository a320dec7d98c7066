#include "systole/polynomial.hpp"

#include <sstream>

#include "systole/error.hpp"

namespace systole {

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coefficients)
    : coeffs_(std::move(coefficients)) {
  for (auto& c : coeffs_) {
    c.canonicalize();
  }
  trim();
}

RationalPolynomial RationalPolynomial::constant(const mpq_class& c) {
  return RationalPolynomial({c});
}

RationalPolynomial RationalPolynomial::linear(const mpq_class& root) {
  return RationalPolynomial({-root, mpq_class(1)});
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) {
    coeffs_.pop_back();
  }
}

mpq_class RationalPolynomial::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : mpq_class(0);
}

mpq_class RationalPolynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) {
    return {};
  }
  std::vector<mpq_class> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  }
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) {
    return {};
  }
  mpq_class lc = leading();
  std::vector<mpq_class> c(coeffs_.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = coeffs_[k] / lc;
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial RationalPolynomial::reciprocal() const {
  return RationalPolynomial(std::vector<mpq_class>(coeffs_.rbegin(), coeffs_.rend()));
}

std::string RationalPolynomial::to_string() const {
  if (is_zero()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpq_class& c = coeffs_[k];
    if (c == 0) continue;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
    } else if (c < 0) {
      os << '-';
    }
    mpq_class a = abs(c);
    if (a != 1 || k == 0) {
      os << a.get_str();
    }
    if (k >= 1) os << 'X';
    if (k >= 2) os << '^' << k;
    first = false;
  }
  return os.str();
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  std::vector<mpq_class> c(std::max(ac.size(), bc.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coefficient(k) + b.coefficient(k);
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  std::vector<mpq_class> c(std::max(ac.size(), bc.size()));
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = a.coefficient(k) - b.coefficient(k);
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) {
    return {};
  }
  const auto& ac = a.coefficients();
  const auto& bc = b.coefficients();
  std::vector<mpq_class> c(ac.size() + bc.size() - 1);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    for (std::size_t j = 0; j < bc.size(); ++j) {
      c[i + j] += ac[i] * bc[j];
    }
  }
  return RationalPolynomial(std::move(c));
}

RationalPolynomial operator*(const mpq_class& s, const RationalPolynomial& p) {
  std::vector<mpq_class> c(p.coefficients().size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = s * p.coefficients()[k];
  }
  return RationalPolynomial(std::move(c));
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  if (b.is_zero()) {
    throw Error(ErrorKind::DomainError, "polynomial division by zero");
  }
  std::vector<mpq_class> rem = a.coefficients();
  const auto& bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  if (rem.size() < bc.size()) {
    return {RationalPolynomial(), a};
  }
  std::vector<mpq_class> quot(rem.size() - db);
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    mpq_class f = rem[k] / bc.back();
    quot[k - db] = f;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[k - db + j] -= f * bc[j];
    }
  }
  rem.resize(db);
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial exact_quotient(const RationalPolynomial& a, const RationalPolynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) {
    throw Error(ErrorKind::NonIntegralResult, "polynomial division is not exact");
  }
  return q;
}

RationalPolynomial gcd(const RationalPolynomial& a, const RationalPolynomial& b) {
  RationalPolynomial x = a.monic();
  RationalPolynomial y = b.monic();
  while (!y.is_zero()) {
    RationalPolynomial r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

bool is_squarefree(const RationalPolynomial& p) {
  if (p.degree() <= 0) {
    return true;
  }
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<SquarefreeFactor> squarefree_decomposition(const RationalPolynomial& p) {
  std::vector<SquarefreeFactor> out;
  if (p.degree() <= 0) {
    return out;
  }
  RationalPolynomial f = p.monic();
  RationalPolynomial fp = f.derivative();
  RationalPolynomial a = gcd(f, fp);
  RationalPolynomial b = exact_quotient(f, a);
  RationalPolynomial c = exact_quotient(fp, a);
  RationalPolynomial d = c - b.derivative();
  unsigned k = 1;
  while (b.degree() > 0) {
    RationalPolynomial g = gcd(b, d);
    if (g.degree() > 0) {
      out.push_back({g, k});
    }
    b = exact_quotient(b, g);
    c = exact_quotient(d, g);
    d = c - b.derivative();
    ++k;
  }
  return out;
}

namespace {

int sign_at(const RationalPolynomial& p, const mpq_class& x) { return sgn(p.evaluate(x)); }

long variations(const std::vector<RationalPolynomial>& chain, const mpq_class& x) {
  long count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

long count_real_roots(const RationalPolynomial& p, const mpq_class& lo, const mpq_class& hi) {
  if (p.is_zero()) {
    throw Error(ErrorKind::DomainError, "Sturm count of the zero polynomial");
  }
  // Work with the squarefree part so that the chain ends in a constant.
  RationalPolynomial f = p.degree() > 0 ? exact_quotient(p, gcd(p, p.derivative())) : p;
  std::vector<RationalPolynomial> chain{f, f.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RationalPolynomial r = divmod(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(mpq_class(-1) * r);
  }
  return variations(chain, lo) - variations(chain, hi);
}

}  // namespace systole
