#include "systole/quaternion.hpp"

#include <sstream>

#include "systole/error.hpp"

namespace systole {

QuaternionAlgebra::QuaternionAlgebra(long a_, long b_) : a(a_), b(b_) {
  if (a == 0 || b == 0) throw Error(ErrorKind::InvalidInput, "quaternion parameters must be nonzero");
}

QuatElement QuatElement::one() { return from_integers(1, 0, 0, 0); }

QuatElement QuatElement::from_integers(long w, long x, long y, long z) {
  QuatElement u;
  u.coeffs = {mpq_class(w), mpq_class(x), mpq_class(y), mpq_class(z)};
  return u;
}

bool QuatElement::is_integral() const {
  for (const mpq_class& c : coeffs) {
    if (c.get_den() != 1) return false;
  }
  return true;
}

bool QuatElement::is_scalar() const { return coeffs[1] == 0 && coeffs[2] == 0 && coeffs[3] == 0; }

std::string QuatElement::to_string() const {
  std::ostringstream os;
  os << coeffs[0].get_str() << " + " << coeffs[1].get_str() << "i + " << coeffs[2].get_str()
     << "j + " << coeffs[3].get_str() << "ij";
  return os.str();
}

QuatElement quat_mult(const QuatElement& u, const QuatElement& v, const QuaternionAlgebra& alg) {
  const mpq_class a(alg.a), b(alg.b);
  const auto& [w1, x1, y1, z1] = u.coeffs;
  const auto& [w2, x2, y2, z2] = v.coeffs;
  QuatElement r;
  r.coeffs[0] = w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2;
  r.coeffs[1] = w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2;
  r.coeffs[2] = w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2;
  r.coeffs[3] = w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2;
  return r;
}

TrdNrd quat_trd_nrd(const QuatElement& u, const QuaternionAlgebra& alg) {
  const mpq_class a(alg.a), b(alg.b);
  const auto& [w, x, y, z] = u.coeffs;
  return {2 * w, w * w - a * x * x - b * y * y + a * b * z * z};
}

QuatElement quat_conjugate(const QuatElement& u) {
  QuatElement r = u;
  for (std::size_t k = 1; k < 4; ++k) r.coeffs[k] = -r.coeffs[k];
  return r;
}

QuatElement quat_inverse(const QuatElement& u, const QuaternionAlgebra& alg) {
  const mpq_class nrd = quat_trd_nrd(u, alg).nrd;
  if (nrd == 0) throw Error(ErrorKind::DomainError, "element has reduced norm 0");
  QuatElement r = quat_conjugate(u);
  for (mpq_class& c : r.coeffs) c /= nrd;
  return r;
}

QuatElement quat_power(const QuatElement& u, long k, const QuaternionAlgebra& alg) {
  QuatElement base = k < 0 ? quat_inverse(u, alg) : u;
  unsigned long e = k < 0 ? 0UL - static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  QuatElement result = QuatElement::one();
  while (e > 0) {
    if (e & 1UL) result = quat_mult(result, base, alg);
    e >>= 1;
    if (e > 0) base = quat_mult(base, base, alg);
  }
  return result;
}

bool quat_is_semisimple(const QuatElement& u, const QuaternionAlgebra& alg) {
  if (u.is_scalar()) return true;
  const TrdNrd tn = quat_trd_nrd(u, alg);
  return tn.trd * tn.trd != 4 * tn.nrd;
}

RealMatrix2 split_embedding(const QuatElement& u, const QuaternionAlgebra& alg, mpfr_prec_t bits) {
  if (!alg.split_real()) throw Error(ErrorKind::NotSplit, "algebra is definite at infinity");
  const BigFloat w(u.coeffs[0], bits), x(u.coeffs[1], bits), y(u.coeffs[2], bits),
      z(u.coeffs[3], bits);
  if (alg.a > 0) {
    const BigFloat r = sqrt(BigFloat(alg.a, bits));
    const BigFloat b(alg.b, bits);
    return {{{w + x * r, b * y + b * r * z}, {y - r * z, w - x * r}}};
  }
  const BigFloat r = sqrt(BigFloat(alg.b, bits));
  const BigFloat a(alg.a, bits);
  return {{{w + y * r, a * x - a * r * z}, {x + r * z, w - y * r}}};
}

std::array<std::array<double, 2>, 2> split_embedding_double(const QuatElement& u,
                                                            const QuaternionAlgebra& alg,
                                                            mpfr_prec_t bits) {
  const RealMatrix2 m = split_embedding(u, alg, bits);
  return {{{m[0][0].to_double(), m[0][1].to_double()}, {m[1][0].to_double(), m[1][1].to_double()}}};
}

}  // namespace systole
