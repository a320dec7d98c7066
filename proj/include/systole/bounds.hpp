#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "systole/bigfloat.hpp"
#include "systole/exact.hpp"

namespace systole {

// ---------------------------------------------------------------------------
// Trace-length brackets

enum class BracketVariant { HyperbolicTrace, PowerTraces };

// Both endpoints are rounded outward, so the bracket is conservative with
// respect to the double-precision evaluation. `upper` may be +infinity.
struct LengthBracket {
  double lower = 0.0;
  double upper = 0.0;
  BracketVariant variant = BracketVariant::HyperbolicTrace;

  bool contains(double length, double tolerance = 0.0) const {
    return lower <= length + tolerance && length - tolerance <= upper;
  }
};

// sqrt(2) acosh(h/n) <= l(x) <= sqrt(2n) acosh((h/n)^{n-1}) with h = tr(x_h).
// `hyp_trace_error` widens the input interval before evaluation.
LengthBracket bracket_from_hyp_trace(double hyp_trace, unsigned n, double hyp_trace_error = 0.0);

// Same shape with the lower bound driven by |tr(x)| and the upper bound by
// 2 sum |tr(x^l)|. Requires |tr(x)| >= 1.
LengthBracket bracket_from_power_traces(const PowerTraces& pt);

// 2 acosh(|tr|/2), the translation length of a hyperbolic element of SL_2(R).
double exact_length_n2(double trace);

// ---------------------------------------------------------------------------
// Metric scaling

struct MetricState {
  double sys = 0.0;
  double vol = 0.0;
  unsigned dim = 0;
};

// sys -> sqrt(alpha) sys, vol -> alpha^{dim/2} vol.
MetricState scale_metric(const MetricState& s, double alpha);

// Constants of a systole-volume bound sys >= c1 log(vol) - c2.
struct GrowthConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};

struct ScaleMetric {
  double alpha;
  unsigned dim;
};
struct PassToCover {
  double sheets;
};
struct RescaleMeasure {
  double beta;
};
using ShiftContext = std::variant<ScaleMetric, PassToCover, RescaleMeasure>;

GrowthConstants shift_constants(GrowthConstants c, const ShiftContext& context);

// ---------------------------------------------------------------------------
// Killing-Cartan data and the f-function

enum class KillingCartan { A, B, C, D, E6, E7, E8, F4, G2 };

struct KcType {
  KillingCartan family;
  unsigned rank;

  friend bool operator==(const KcType&, const KcType&) = default;
};

inline constexpr unsigned kMaxClassicalRank = 100;
inline constexpr mpfr_prec_t kFValueBits = 256;  // > 64 decimal digits

std::string_view to_string(KillingCartan k) noexcept;
std::optional<KillingCartan> parse_killing_cartan(std::string_view name);

// Validates (family, rank); exceptional types accept rank 0 as "the" rank.
// Throws InvalidType.
KcType make_kc_type(KillingCartan family, unsigned rank);

std::vector<unsigned> exponents(const KcType& t);
// dim G as a function of type and rank.
unsigned lie_dimension(const KcType& t);
// prod m_i! / (2 pi)^{m_i + 1}
BigFloat f_value(const KcType& t, mpfr_prec_t bits = kFValueBits);
// The tabulated lower bound for f of the given family.
double f_table_lower_bound(KillingCartan family);

struct DegreeBound {
  double value = 0.0;
  // Always set: the bound is the reciprocal-of-table-constant reading, and
  // the underlying step needs f > 1, which only E8 satisfies.
  bool caveat = true;
  std::string note;
};

// log(v) / f_table_lower_bound(family). Requires v > 1.
DegreeBound degree_bound(KillingCartan family, double v);

// ---------------------------------------------------------------------------
// Growth constants for congruence towers

enum class Family {
  SpecialLinear,           // degree n, geometric metric
  RealHyperbolic,          // dimension n, curvature -1
  ComplexHyperbolic,       // complex dimension n
  QuaternionicHyperbolic,  // quaternionic dimension n
  RealHyperbolicOverField, // dimension n >= 4, field of definition of degree d
  General,                 // (d1, d2) = (dim G, [k:Q])
};

std::string_view to_string(Family f) noexcept;

struct FamilySpec {
  Family family = Family::SpecialLinear;
  unsigned n = 0;
  // General: type determines d1; d2 is the field degree.
  std::optional<KcType> type;
  unsigned field_degree = 1;
};

struct ConstantsProfile {
  Family family = Family::SpecialLinear;
  std::optional<KcType> type;
  unsigned rank = 0;
  std::vector<unsigned> exponents;
  std::optional<BigFloat> f_value;
  double c1 = 0.0;
  // h = renormalization * g, where g is the metric induced from the
  // ambient special linear space and h the reported metric.
  double renormalization = 1.0;
  unsigned d1 = 0;              // dim G
  unsigned d2 = 1;              // [k:Q]
  unsigned ambient_degree = 0;  // degree of the special linear space used
};

ConstantsProfile growth_constant(const FamilySpec& spec);

// 2 sqrt(2) / (D (D^2 - 1)) with D = d1 d2; D must be at least 2.
double general_growth_constant(double d1, double d2);

// One admissible instantiation of a volume-dependent constant: the general
// constant with d2 replaced by degree_bound(type, v).
struct VolumeConstant {
  double c1 = 0.0;
  DegreeBound degree;
};
VolumeConstant growth_constant_from_volume(const KcType& type, double v);

}  // namespace systole
