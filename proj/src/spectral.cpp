#include "systole/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "systole/bigfloat.hpp"
#include "systole/error.hpp"

namespace systole {

std::string_view to_string(ElementClass c) noexcept {
  switch (c) {
    case ElementClass::Identity: return "identity";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::PositiveLength: return "positive-length";
    case ElementClass::NonSemisimple: return "non-semisimple";
  }
  return "unknown";
}

namespace {

constexpr int kMaxAttempts = 4;

// Double-precision Aberth iteration used only to seed the refinement.
std::vector<std::complex<double>> seed_roots(const std::vector<double>& c) {
  const std::size_t d = c.size() - 1;
  double radius = 0.0;
  for (std::size_t k = 1; k <= d; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[d - k]), 1.0 / static_cast<double>(k)));
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    radius = 1.0;
  }
  std::vector<std::complex<double>> z(d);
  for (std::size_t k = 0; k < d; ++k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      std::complex<double> p = 1.0, dp = 0.0;
      for (std::size_t k = d; k-- > 0;) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (p == 0.0) continue;
      std::complex<double> ratio = dp == 0.0 ? std::complex<double>(1e-3) : p / dp;
      std::complex<double> repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      std::complex<double> w = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

struct HornerResult {
  BigComplex value;
  BigComplex derivative;
  BigFloat magnitude_sum;  // sum |c_k| |z|^k, for rounding-error bounds
};

HornerResult horner(const std::vector<BigFloat>& c, const BigComplex& z, mpfr_prec_t bits) {
  const std::size_t d = c.size() - 1;
  BigComplex p(c[d], BigFloat(bits));
  BigComplex dp(bits);
  BigFloat az = abs(z);
  BigFloat msum = abs(c[d]);
  for (std::size_t k = d; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + BigComplex(c[k], BigFloat(bits));
    msum = msum * az + abs(c[k]);
  }
  return {std::move(p), std::move(dp), std::move(msum)};
}

void refine(const std::vector<BigFloat>& c, std::vector<BigComplex>& z, mpfr_prec_t bits) {
  const std::size_t d = z.size();
  const BigFloat one(1L, bits);
  const BigFloat tol = BigFloat::pow2(-static_cast<long>(bits) + 16, bits);
  for (int iter = 0; iter < 200; ++iter) {
    bool converged = true;
    for (std::size_t i = 0; i < d; ++i) {
      HornerResult h = horner(c, z[i], bits);
      if (h.value.re.is_zero() && h.value.im.is_zero()) continue;
      if (h.derivative.re.is_zero() && h.derivative.im.is_zero()) {
        converged = false;
        continue;
      }
      BigComplex ratio = h.value / h.derivative;
      BigComplex repulsion(bits);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == i) continue;
        repulsion = repulsion + BigComplex(one, BigFloat(bits)) / (z[i] - z[j]);
      }
      BigComplex denom = BigComplex(one, BigFloat(bits)) - ratio * repulsion;
      if (denom.re.is_zero() && denom.im.is_zero()) {
        converged = false;
        continue;
      }
      BigComplex w = ratio / denom;
      if (!w.re.is_finite() || !w.im.is_finite()) {
        converged = false;
        continue;
      }
      z[i] = z[i] - w;
      if (abs(w) > tol * max(one, abs(z[i]))) {
        converged = false;
      }
    }
    if (converged) break;
  }
}

struct RootEstimate {
  BigFloat modulus;
  BigFloat radius;
  unsigned multiplicity;
  bool on_unit_circle = false;
};

// Certified moduli of the roots of one monic squarefree factor, or false if
// the inclusion disks are not yet disjoint at this precision.
bool certify_factor(const RationalPolynomial& g, unsigned multiplicity, mpfr_prec_t bits,
                    bool last_attempt, std::vector<RootEstimate>& out) {
  const std::size_t d = static_cast<std::size_t>(g.degree());
  std::vector<BigFloat> c;
  std::vector<double> cd;
  c.reserve(d + 1);
  for (const mpq_class& q : g.coefficients()) {
    c.emplace_back(q, bits);
    cd.push_back(q.get_d());
  }

  std::vector<BigComplex> z;
  z.reserve(d);
  if (d == 1) {
    z.emplace_back(BigFloat(mpq_class(-g.coefficient(0)), bits), BigFloat(bits));
  } else {
    for (const auto& s : seed_roots(cd)) {
      z.emplace_back(BigFloat(s.real(), bits), BigFloat(s.imag(), bits));
    }
    refine(c, z, bits);
  }

  const BigFloat ulp = BigFloat::pow2(-static_cast<long>(bits), bits);
  const BigFloat degree(static_cast<long>(d), bits);
  std::vector<BigFloat> radii;
  std::vector<BigFloat> moduli;
  for (std::size_t i = 0; i < d; ++i) {
    HornerResult h = horner(c, z[i], bits);
    BigFloat prod(1L, bits);
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) prod = prod * abs(z[i] - z[j]);
    }
    if (prod.is_zero() || !prod.is_finite()) {
      return false;
    }
    BigFloat eval_err = BigFloat(static_cast<long>(2 * d + 4), bits) * ulp * h.magnitude_sum;
    BigFloat r = degree * (abs(h.value) + eval_err) / prod;
    BigFloat modulus = abs(z[i]);
    r = r * (BigFloat(1L, bits) + BigFloat(256L, bits) * ulp) +
        BigFloat(16L, bits) * ulp * max(BigFloat(1L, bits), modulus);
    if (!r.is_finite()) {
      return false;
    }
    radii.push_back(std::move(r));
    moduli.push_back(std::move(modulus));
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (abs(z[i] - z[j]) <= radii[i] + radii[j]) {
        return false;
      }
    }
  }

  // Decide exactly how many roots sit on the unit circle and match them to
  // the numerically closest ones.
  const std::size_t on_circle = unit_circle_root_count(g);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  const BigFloat one(1L, bits);
  std::vector<BigFloat> dist;
  dist.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    dist.push_back(abs(moduli[i] - one));
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  for (std::size_t rank = 0; rank < d; ++rank) {
    const std::size_t i = order[rank];
    const bool selected = rank < on_circle;
    if (selected && dist[i] > radii[i]) {
      return false;
    }
    if (!selected && dist[i] <= radii[i] && !last_attempt) {
      return false;
    }
  }
  for (std::size_t rank = 0; rank < d; ++rank) {
    const std::size_t i = order[rank];
    RootEstimate est{moduli[i], radii[i], multiplicity, rank < on_circle};
    if (est.on_unit_circle) {
      est.modulus = one;
      est.radius = BigFloat(bits);
    }
    out.push_back(std::move(est));
  }
  return true;
}

}  // namespace

std::size_t unit_circle_root_count(const RationalPolynomial& squarefree) {
  if (squarefree.degree() <= 0) {
    return 0;
  }
  RationalPolynomial h = gcd(squarefree, squarefree.reciprocal());
  std::size_t count = 0;
  for (long endpoint : {1L, -1L}) {
    if (h.degree() > 0 && h.evaluate(mpq_class(endpoint)) == 0) {
      h = exact_quotient(h, RationalPolynomial::linear(mpq_class(endpoint)));
      ++count;
    }
  }
  if (h.degree() <= 0) {
    return count;
  }
  // h is now palindromic of even degree 2e: h(x) = x^e t(x + 1/x).
  const long e = h.degree() / 2;
  const RationalPolynomial y({mpq_class(0), mpq_class(1)});
  RationalPolynomial v_prev = RationalPolynomial::constant(2);  // V_0
  RationalPolynomial v_cur = y;                                 // V_1
  RationalPolynomial t = RationalPolynomial::constant(h.coefficient(static_cast<std::size_t>(e)));
  for (long k = 1; k <= e; ++k) {
    t = t + h.coefficient(static_cast<std::size_t>(e + k)) * v_cur;
    RationalPolynomial v_next = y * v_cur - v_prev;
    v_prev = std::move(v_cur);
    v_cur = std::move(v_next);
  }
  count += 2 * static_cast<std::size_t>(count_real_roots(t, mpq_class(-2), mpq_class(2)));
  return count;
}

SpectralData root_magnitudes(const CharPolyData& cp, unsigned precision_bits) {
  SpectralData out;
  out.n = cp.degree();
  if (out.n == 0) {
    return out;
  }
  precision_bits = std::max(precision_bits, 32U);
  const std::vector<SquarefreeFactor> factors = squarefree_decomposition(cp.polynomial());
  const double fujiwara = fujiwara_bound(cp);
  const double radius_target = std::ldexp(fujiwara, -static_cast<int>(precision_bits / 2));

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const mpfr_prec_t bits = (static_cast<mpfr_prec_t>(precision_bits) << attempt) + 64;
    const bool last = attempt + 1 == kMaxAttempts;
    std::vector<RootEstimate> roots;
    bool ok = true;
    for (const auto& f : factors) {
      if (!certify_factor(f.factor, f.multiplicity, bits, last, roots)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    BigFloat max_radius(bits);
    for (const auto& r : roots) {
      max_radius = max(max_radius, r.radius);
    }
    const double error_radius = max_radius.to_double(MPFR_RNDU);
    if (error_radius > radius_target) continue;

    const BigFloat one(1L, bits);
    BigFloat sum_sq(bits), err_sq(bits), hyp(bits), hyp_err(bits);
    bool finite = true;
    std::vector<std::pair<double, unsigned>> mags;
    std::size_t unit = 0;
    for (const auto& r : roots) {
      const BigFloat mult(static_cast<long>(r.multiplicity), bits);
      mags.emplace_back(r.modulus.to_double(), r.multiplicity);
      hyp = hyp + mult * r.modulus;
      hyp_err = hyp_err + mult * r.radius;
      if (r.on_unit_circle) {
        unit += r.multiplicity;
        continue;
      }
      BigFloat floor_modulus = r.modulus - r.radius;
      if (floor_modulus.sign() <= 0) {
        finite = false;
        continue;
      }
      BigFloat l = log(r.modulus);
      sum_sq = sum_sq + mult * l * l;
      BigFloat dl = r.radius / floor_modulus;
      err_sq = err_sq + mult * dl * dl;
    }
    const BigFloat two(2L, bits);
    BigFloat length = sqrt(two * sum_sq);
    BigFloat length_err = sqrt(two * err_sq);

    std::sort(mags.begin(), mags.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [m, k] : mags) {
      out.magnitudes.insert(out.magnitudes.end(), k, m);
    }
    out.error_radius = error_radius;
    out.unit_circle_roots = unit;
    out.working_bits = static_cast<unsigned>(bits);
    constexpr double kUnit = 0x1p-52;
    if (finite) {
      out.length = length.to_double();
      out.length_error = length_err.to_double(MPFR_RNDU) + kUnit * out.length;
    } else {
      out.length = std::numeric_limits<double>::infinity();
      out.length_error = std::numeric_limits<double>::infinity();
    }
    out.hyp_trace = hyp.to_double();
    out.hyp_trace_error = hyp_err.to_double(MPFR_RNDU) + kUnit * out.hyp_trace;
    return out;
  }
  throw Error(ErrorKind::ConvergenceFailure,
              "root moduli could not be certified; increase the precision");
}

SpectralData translation_length(const IntegerMatrix& m, unsigned precision_bits) {
  if (m.size() == 0) {
    throw Error(ErrorKind::InvalidInput, "empty matrix");
  }
  mpz_class det = m.determinant();
  if (det != 1) {
    throw Error(ErrorKind::NotUnimodular, "determinant is " + det.get_str());
  }
  if (!is_semisimple(m)) {
    throw Error(ErrorKind::NotSemisimple, "minimal polynomial has a repeated factor");
  }
  return root_magnitudes(char_poly(m), precision_bits);
}

ElementClass classify(const IntegerMatrix& m, unsigned precision_bits) {
  if (m.is_identity()) {
    return ElementClass::Identity;
  }
  if (!is_semisimple(m)) {
    return ElementClass::NonSemisimple;
  }
  SpectralData s = root_magnitudes(char_poly(m), precision_bits);
  return s.unit_circle_roots == s.n ? ElementClass::Elliptic : ElementClass::PositiveLength;
}

}  // namespace systole
