#include "systole/bounds.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

#include "systole/error.hpp"

namespace systole {

namespace {

constexpr mpfr_prec_t kBits = 128;

// The 128-bit evaluation is far below one double ulp, so a directed
// conversion plus one extra ulp encloses the exact value.
double round_down(const BigFloat& x) {
  return std::nextafter(x.to_double(MPFR_RNDD), -std::numeric_limits<double>::infinity());
}

double round_up(const BigFloat& x) {
  return std::nextafter(x.to_double(MPFR_RNDU), std::numeric_limits<double>::infinity());
}

BigFloat at_least_one(const BigFloat& x) { return max(x, BigFloat(1L, kBits)); }

// sqrt(2) acosh(max(1, q)) and sqrt(2n) acosh(max(1, q')^{n-1}).
LengthBracket evaluate(const BigFloat& q_lower, const BigFloat& q_upper, unsigned n,
                       BracketVariant variant) {
  const BigFloat two(2L, kBits);
  const BigFloat lower = sqrt(two) * acosh(at_least_one(q_lower));
  const BigFloat upper =
      sqrt(BigFloat(static_cast<long>(2 * n), kBits)) * acosh(pow(at_least_one(q_upper), n - 1));
  LengthBracket b;
  b.lower = std::max(0.0, round_down(lower));
  b.upper = round_up(upper);
  b.variant = variant;
  return b;
}

}  // namespace

LengthBracket bracket_from_hyp_trace(double hyp_trace, unsigned n, double hyp_trace_error) {
  if (n < 2) throw Error(ErrorKind::DomainError, "bracket needs n >= 2");
  if (!std::isfinite(hyp_trace) || !std::isfinite(hyp_trace_error) || hyp_trace_error < 0) {
    throw Error(ErrorKind::InvalidInput, "hyperbolic trace must be finite with non-negative error");
  }
  // tr(x_h) >= n always; a smaller value means the spectral data is wrong.
  if (hyp_trace + hyp_trace_error < n * (1.0 - 8 * DBL_EPSILON)) {
    throw Error(ErrorKind::DomainError, "hyperbolic trace below n");
  }
  const BigFloat h(hyp_trace, kBits);
  const BigFloat e(hyp_trace_error, kBits);
  const BigFloat nn(static_cast<long>(n), kBits);
  return evaluate((h - e) / nn, (h + e) / nn, n, BracketVariant::HyperbolicTrace);
}

LengthBracket bracket_from_power_traces(const PowerTraces& pt) {
  const std::size_t n = pt.degree();
  if (n < 2) throw Error(ErrorKind::DomainError, "bracket needs n >= 2");
  const mpz_class t1 = abs(pt.traces[0]);
  if (t1 < 1) throw Error(ErrorKind::TraceTooSmall, "|tr(x)| < 1");
  mpz_class sum = 0;
  for (const mpz_class& t : pt.traces) sum += abs(t);
  const mpz_class twice = 2 * sum;
  const BigFloat nn(static_cast<long>(n), kBits);
  return evaluate(BigFloat(t1, kBits) / nn, BigFloat(twice, kBits),
                  static_cast<unsigned>(n), BracketVariant::PowerTraces);
}

double exact_length_n2(double trace) {
  if (!std::isfinite(trace)) throw Error(ErrorKind::InvalidInput, "trace must be finite");
  if (std::abs(trace) <= 2) throw Error(ErrorKind::NotHyperbolic, "|tr| <= 2");
  return 2.0 * std::acosh(std::abs(trace) / 2.0);
}

MetricState scale_metric(const MetricState& s, double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::DomainError, "scale factor must be positive");
  }
  MetricState out = s;
  out.sys = std::sqrt(alpha) * s.sys;
  out.vol = std::pow(alpha, s.dim / 2.0) * s.vol;
  return out;
}

GrowthConstants shift_constants(GrowthConstants c, const ShiftContext& context) {
  if (const auto* sc = std::get_if<ScaleMetric>(&context)) {
    if (!(sc->alpha > 0)) throw Error(ErrorKind::DomainError, "scale factor must be positive");
    const double r = std::sqrt(sc->alpha);
    return {r * c.c1, r * (c.c2 + c.c1 * (sc->dim / 2.0) * std::log(sc->alpha))};
  }
  if (const auto* cover = std::get_if<PassToCover>(&context)) {
    if (!(cover->sheets >= 1)) throw Error(ErrorKind::DomainError, "cover degree must be >= 1");
    return {c.c1, c.c2 + c.c1 * std::log(cover->sheets)};
  }
  const auto& m = std::get<RescaleMeasure>(context);
  if (!(m.beta > 0)) throw Error(ErrorKind::DomainError, "measure factor must be positive");
  return {c.c1, c.c2 - c.c1 * std::log(m.beta)};
}

std::string_view to_string(KillingCartan k) noexcept {
  switch (k) {
    case KillingCartan::A: return "A";
    case KillingCartan::B: return "B";
    case KillingCartan::C: return "C";
    case KillingCartan::D: return "D";
    case KillingCartan::E6: return "E6";
    case KillingCartan::E7: return "E7";
    case KillingCartan::E8: return "E8";
    case KillingCartan::F4: return "F4";
    case KillingCartan::G2: return "G2";
  }
  return "?";
}

std::optional<KillingCartan> parse_killing_cartan(std::string_view name) {
  for (KillingCartan k : {KillingCartan::A, KillingCartan::B, KillingCartan::C, KillingCartan::D,
                          KillingCartan::E6, KillingCartan::E7, KillingCartan::E8,
                          KillingCartan::F4, KillingCartan::G2}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

namespace {

unsigned exceptional_rank(KillingCartan k) {
  switch (k) {
    case KillingCartan::E6: return 6;
    case KillingCartan::E7: return 7;
    case KillingCartan::E8: return 8;
    case KillingCartan::F4: return 4;
    case KillingCartan::G2: return 2;
    default: return 0;
  }
}

}  // namespace

KcType make_kc_type(KillingCartan family, unsigned rank) {
  if (const unsigned fixed = exceptional_rank(family)) {
    if (rank != 0 && rank != fixed) {
      throw Error(ErrorKind::InvalidType,
                  std::string(to_string(family)) + " has rank " + std::to_string(fixed));
    }
    return {family, fixed};
  }
  const unsigned min_rank = family == KillingCartan::D ? 3 : 1;
  if (rank < min_rank || rank > kMaxClassicalRank) {
    throw Error(ErrorKind::InvalidType, std::string(to_string(family)) + " rank must be in [" +
                                            std::to_string(min_rank) + ", " +
                                            std::to_string(kMaxClassicalRank) + "]");
  }
  return {family, rank};
}

std::vector<unsigned> exponents(const KcType& t) {
  const KcType v = make_kc_type(t.family, t.rank);
  std::vector<unsigned> m;
  switch (v.family) {
    case KillingCartan::A:
      for (unsigned i = 1; i <= v.rank; ++i) m.push_back(i);
      break;
    case KillingCartan::B:
    case KillingCartan::C:
      for (unsigned i = 1; i <= v.rank; ++i) m.push_back(2 * i - 1);
      break;
    case KillingCartan::D:
      for (unsigned i = 1; i < v.rank; ++i) m.push_back(2 * i - 1);
      m.push_back(v.rank - 1);
      std::sort(m.begin(), m.end());
      break;
    case KillingCartan::E6: m = {1, 4, 5, 7, 8, 11}; break;
    case KillingCartan::E7: m = {1, 5, 7, 9, 11, 13, 17}; break;
    case KillingCartan::E8: m = {1, 7, 11, 13, 17, 19, 23, 29}; break;
    case KillingCartan::F4: m = {1, 5, 7, 11}; break;
    case KillingCartan::G2: m = {1, 5}; break;
  }
  return m;
}

unsigned lie_dimension(const KcType& t) {
  const KcType v = make_kc_type(t.family, t.rank);
  const unsigned r = v.rank;
  switch (v.family) {
    case KillingCartan::A: return r * r + 2 * r;
    case KillingCartan::B:
    case KillingCartan::C: return 2 * r * r + r;
    case KillingCartan::D: return 2 * r * r - r;
    case KillingCartan::E6: return 78;
    case KillingCartan::E7: return 133;
    case KillingCartan::E8: return 248;
    case KillingCartan::F4: return 52;
    case KillingCartan::G2: return 14;
  }
  return 0;
}

BigFloat f_value(const KcType& t, mpfr_prec_t bits) {
  const BigFloat two_pi = BigFloat(2L, bits) * BigFloat::pi(bits);
  BigFloat f(1L, bits);
  for (unsigned m : exponents(t)) {
    f *= BigFloat::factorial(m, bits);
    f /= pow(two_pi, m + 1);
  }
  return f;
}

double f_table_lower_bound(KillingCartan family) {
  switch (family) {
    case KillingCartan::A: return 1e-32;
    case KillingCartan::B:
    case KillingCartan::C: return 1e-16;
    case KillingCartan::D: return 1e-19;
    case KillingCartan::E6: return 1e-15;
    case KillingCartan::E7: return 1e-13;
    case KillingCartan::E8: return 8434.1205;
    case KillingCartan::F4: return 1e-9;
    case KillingCartan::G2: return 1e-5;
  }
  return 0.0;
}

DegreeBound degree_bound(KillingCartan family, double v) {
  if (!(v > 1) || !std::isfinite(v)) throw Error(ErrorKind::DomainError, "volume must exceed 1");
  DegreeBound d;
  d.value = std::log(v) / f_table_lower_bound(family);
  d.caveat = true;
  d.note = "log(v)/f_min from the tabulated lower bound; the step this relies on assumes f > 1, "
           "which holds only for E8, so treat the value as indicative";
  return d;
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::SpecialLinear: return "special-linear";
    case Family::RealHyperbolic: return "real-hyperbolic";
    case Family::ComplexHyperbolic: return "complex-hyperbolic";
    case Family::QuaternionicHyperbolic: return "quaternionic-hyperbolic";
    case Family::RealHyperbolicOverField: return "real-hyperbolic-over-field";
    case Family::General: return "general";
  }
  return "?";
}

double general_growth_constant(double d1, double d2) {
  const double dd = d1 * d2;
  if (!(dd >= 2)) throw Error(ErrorKind::DomainError, "d1 * d2 must be at least 2");
  return 2.0 * std::sqrt(2.0) / (dd * (dd * dd - 1.0));
}

namespace {

// Killing-Cartan type of SO(n,1); none for n = 3 where the algebra is not
// simple over C.
std::optional<KcType> orthogonal_type(unsigned n) {
  if ((n + 1) % 2 == 1) return KcType{KillingCartan::B, n / 2};
  const unsigned r = (n + 1) / 2;
  if (r >= 3) return KcType{KillingCartan::D, r};
  return std::nullopt;
}

// Lattice route: a level-p^m element of SL_D has length at least
// (2 sqrt 2 / D) log(p^m), the level-p^m subgroup has index at most
// p^{m dim}, and the reported metric is renormalization * g.
double lattice_route(unsigned ambient, unsigned dim, double renormalization) {
  const GrowthConstants subspace{2.0 * std::sqrt(2.0) / (double(ambient) * double(dim)), 0.0};
  return shift_constants(subspace, ScaleMetric{renormalization, 0}).c1;
}

void fill_type(ConstantsProfile& p, std::optional<KcType> type) {
  p.type = type;
  if (type) {
    p.rank = type->rank;
    p.exponents = exponents(*type);
    p.f_value = f_value(*type);
  }
}

}  // namespace

ConstantsProfile growth_constant(const FamilySpec& spec) {
  ConstantsProfile p;
  p.family = spec.family;
  const unsigned n = spec.n;
  switch (spec.family) {
    case Family::SpecialLinear:
      if (n < 2) throw Error(ErrorKind::UnsupportedFamily, "special linear degree must be >= 2");
      if (n - 1 > kMaxClassicalRank) throw Error(ErrorKind::InvalidType, "rank too large");
      fill_type(p, KcType{KillingCartan::A, n - 1});
      p.d1 = n * n - 1;
      p.ambient_degree = n;
      p.renormalization = 1.0;
      p.c1 = lattice_route(n, p.d1, 1.0);
      break;
    case Family::RealHyperbolic:
      if (n < 2) throw Error(ErrorKind::UnsupportedFamily, "real hyperbolic dimension must be >= 2");
      fill_type(p, orthogonal_type(n));
      p.d1 = n * (n + 1) / 2;
      p.ambient_degree = n + 1;
      p.renormalization = 0.25;
      p.c1 = lattice_route(p.ambient_degree, p.d1, p.renormalization);
      break;
    case Family::ComplexHyperbolic:
      if (n < 1) throw Error(ErrorKind::UnsupportedFamily, "complex hyperbolic dimension must be >= 1");
      fill_type(p, KcType{KillingCartan::A, n});
      p.d1 = n * (n + 2);
      p.ambient_degree = 2 * (n + 1);
      p.renormalization = 0.5;
      p.c1 = lattice_route(p.ambient_degree, p.d1, p.renormalization);
      break;
    case Family::QuaternionicHyperbolic:
      if (n < 1) {
        throw Error(ErrorKind::UnsupportedFamily, "quaternionic hyperbolic dimension must be >= 1");
      }
      fill_type(p, KcType{KillingCartan::C, n + 1});
      p.d1 = (n + 1) * (2 * n + 3);
      p.ambient_degree = 4 * (n + 1);
      p.renormalization = 0.25;
      p.c1 = lattice_route(p.ambient_degree, p.d1, p.renormalization);
      break;
    case Family::RealHyperbolicOverField: {
      if (n < 4) throw Error(ErrorKind::UnsupportedFamily, "dimension must be >= 4");
      if (spec.field_degree < 1) throw Error(ErrorKind::DomainError, "field degree must be >= 1");
      const double d = spec.field_degree;
      fill_type(p, orthogonal_type(n));
      p.d1 = n * (n + 1) / 2;
      p.d2 = spec.field_degree;
      p.ambient_degree = spec.field_degree * (2 * n * n + 5 * n + 3);
      p.renormalization = 1.0 / (4.0 * (n - 1) * d);
      p.c1 = std::sqrt(2.0) / (144.0 * std::pow(d, 3.5) * std::pow(double(n), 3.5));
      break;
    }
    case Family::General: {
      if (!spec.type) throw Error(ErrorKind::InvalidType, "general family needs a type");
      const KcType t = make_kc_type(spec.type->family, spec.type->rank);
      if (spec.field_degree < 1) throw Error(ErrorKind::DomainError, "field degree must be >= 1");
      fill_type(p, t);
      p.d1 = lie_dimension(t);
      p.d2 = spec.field_degree;
      p.ambient_degree = p.d1 * p.d2;
      p.renormalization = 1.0;
      p.c1 = general_growth_constant(p.d1, p.d2);
      break;
    }
  }
  return p;
}

VolumeConstant growth_constant_from_volume(const KcType& type, double v) {
  const KcType t = make_kc_type(type.family, type.rank);
  VolumeConstant out;
  out.degree = degree_bound(t.family, v);
  const double d2 = std::max(1.0, out.degree.value);
  out.c1 = general_growth_constant(lie_dimension(t), d2);
  return out;
}

}  // namespace systole
