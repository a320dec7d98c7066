#include "systole/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "systole/error.hpp"
#include "systole/exact.hpp"

namespace systole {

namespace {

using i128 = __int128;

// Values v in [-H, H] with v = residue mod N, ascending.
std::vector<long> progression(long height, long level, long residue) {
  std::vector<long> out;
  long start = -height + (((residue + height) % level) + level) % level;
  for (long v = start; v <= height; v += level) out.push_back(v);
  return out;
}

long level_as_long(const mpz_class& level) {
  if (level < 1) throw Error(ErrorKind::InvalidInput, "level must be a positive integer");
  if (!level.fits_slong_p()) throw Error(ErrorKind::InvalidInput, "level too large");
  return level.get_si();
}

unsigned ambient_degree(const Ambient& a) {
  if (const auto* sl = std::get_if<SpecialLinear>(&a)) return sl->n;
  return 2;
}

std::vector<std::vector<long>> residue_classes(const EnumerationTask& task) {
  if (task.height < 1) throw Error(ErrorKind::InvalidInput, "height must be at least 1");
  const long level = level_as_long(task.spec.level);
  std::vector<std::vector<long>> values;
  if (const auto* sl = std::get_if<SpecialLinear>(&task.spec.ambient)) {
    if (sl->n < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
    for (unsigned i = 0; i < sl->n; ++i) {
      for (unsigned j = 0; j < sl->n; ++j) {
        values.push_back(progression(task.height, level, i == j ? 1 : 0));
      }
    }
  } else {
    for (int k = 0; k < 4; ++k) values.push_back(progression(task.height, level, k == 0 ? 1 : 0));
  }
  return values;
}

std::optional<PrimePower> usable_tower(const EnumerationTask& task) {
  auto pp = as_prime_power(task.spec.level);
  if (!pp) return std::nullopt;
  const unsigned n = ambient_degree(task.spec.ambient);
  if (pp->p <= 2 * n) return std::nullopt;
  if (const auto* q = std::get_if<QuaternionOrder>(&task.spec.ambient)) {
    const mpz_class twice_ab = 2 * mpz_class(q->algebra.a) * mpz_class(q->algebra.b);
    if (mpz_divisible_p(twice_ab.get_mpz_t(), pp->p.get_mpz_t())) return std::nullopt;
  }
  return pp;
}

void check_budget(const EnumerationTask& task) {
  const double count = candidate_count(task);
  if (count > task.budget) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "search space of %.6g candidates exceeds budget %.6g", count,
                  task.budget);
    throw Error(ErrorKind::BudgetExceeded, msg);
  }
}

// Per-element bookkeeping shared by both ambient groups.
class Collector {
 public:
  Collector(const EnumerationTask& task, std::optional<PrimePower> tower)
      : task_(task), tower_(std::move(tower)) {
    if (tower_) {
      lb_ = congruence_length_lb(ambient_degree(task.spec.ambient), tower_->p, tower_->m);
    }
  }

  void add(std::vector<long> entries, const LatticeElement& e, ElementClass cls, double length,
           double length_error) {
    ++result_.count_total;
    const bool semisimple = cls != ElementClass::NonSemisimple;
    if (semisimple) ++result_.count_semisimple;
    if (task_.filters.semisimple_only && !semisimple) return;
    if (task_.filters.exclude_identity && cls == ElementClass::Identity) return;

    EnumerationRecord r;
    r.entries = std::move(entries);
    r.trace = trace(e);
    r.element_class = cls;
    if (semisimple) {
      r.length = length;
      r.length_error = length_error;
    }
    if (tower_ && semisimple && cls != ElementClass::Identity) {
      try {
        r.witness_q = witness_q(e, tower_->p, tower_->m);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::NoWitness) throw;
        r.witness_failed = true;
        ++result_.witness_failures;
      }
      const double slack = length_error + 8 * DBL_EPSILON * lb_;
      r.passes_length_bound = length >= lb_ - slack;
      if (!*r.passes_length_bound) ++result_.length_bound_failures;
    }
    if (cls == ElementClass::PositiveLength &&
        (!result_.min_length || length < *result_.min_length)) {
      result_.min_length = length;
      result_.min_length_witness = r;
    }
    if (semisimple && cls != ElementClass::Identity) {
      const mpz_class t = abs(r.trace);
      if (!result_.min_abs_trace || t < *result_.min_abs_trace) result_.min_abs_trace = t;
    }
    result_.records.push_back(std::move(r));
  }

  EnumerationResult take() { return std::move(result_); }

 private:
  const EnumerationTask& task_;
  std::optional<PrimePower> tower_;
  double lb_ = 0.0;
  EnumerationResult result_;
};

// Walks prefixes [lo, hi) of the first `k` free positions in lexicographic
// order and hands each completed prefix to `descend`.
template <class Descend>
void walk_prefixes(const std::vector<std::vector<long>>& values, std::size_t k, std::uint64_t lo,
                   std::uint64_t hi, std::vector<long>& entries, Descend&& descend) {
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t pos = k; pos-- > 0;) {
      const std::uint64_t size = values[pos].size();
      entries[pos] = values[pos][rest % size];
      rest /= size;
    }
    descend();
  }
}

std::uint64_t prefix_count(const std::vector<std::vector<long>>& values, std::size_t k) {
  std::uint64_t count = 1;
  for (std::size_t pos = 0; pos < k; ++pos) count *= values[pos].size();
  return count;
}

// Smallest prefix length whose count reaches `parts`, capped at `free`.
std::size_t prefix_length(const std::vector<std::vector<long>>& values, std::size_t free,
                          unsigned parts) {
  std::size_t k = 0;
  while (k < free && prefix_count(values, k) < parts) ++k;
  return k;
}

struct Range {
  std::size_t k;
  std::uint64_t lo;
  std::uint64_t hi;
};

// Fraction-free determinant.
i128 determinant(std::vector<i128> a, std::size_t n) {
  if (n == 0) return 1;
  i128 sign = 1;
  i128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

class SlWalker {
 public:
  SlWalker(const EnumerationTask& task, const std::vector<std::vector<long>>& values,
           Collector& out)
      : task_(task), values_(values), out_(out), n_(std::get<SpecialLinear>(task.spec.ambient).n),
        entries_(n_ * n_), cofactors_(n_) {}

  void run(const Range& r) {
    walk_prefixes(values_, r.k, r.lo, r.hi, entries_, [&] {
      for (std::size_t d = 1; d <= r.k; ++d) {
        if (!checkpoint(d)) return;
      }
      descend(r.k);
    });
  }

 private:
  std::size_t free_positions() const { return n_ * n_ - 1; }

  // Pruning at fixed depths; false rejects every completion of the prefix.
  bool checkpoint(std::size_t depth) {
    if (depth == n_ && n_ > 2) {
      i128 g = 0;
      for (std::size_t j = 0; j < n_; ++j) g = gcd128(g, entries_[j]);
      return g == 1;
    }
    if (depth == n_ * (n_ - 1)) {
      i128 g = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        std::vector<i128> minor;
        minor.reserve((n_ - 1) * (n_ - 1));
        for (std::size_t r = 0; r + 1 < n_; ++r) {
          for (std::size_t c = 0; c < n_; ++c) {
            if (c != j) minor.push_back(entries_[r * n_ + c]);
          }
        }
        const i128 d = determinant(std::move(minor), n_ - 1);
        cofactors_[j] = ((n_ - 1 + j) % 2 == 0) ? d : -d;
        g = gcd128(g, cofactors_[j]);
      }
      return g == 1;
    }
    return true;
  }

  void descend(std::size_t pos) {
    if (pos == free_positions()) {
      solve_last();
      return;
    }
    for (long v : values_[pos]) {
      entries_[pos] = v;
      if (checkpoint(pos + 1)) descend(pos + 1);
    }
  }

  void solve_last() {
    const std::size_t row = (n_ - 1) * n_;
    i128 partial = 0;
    for (std::size_t j = 0; j + 1 < n_; ++j) partial += i128(entries_[row + j]) * cofactors_[j];
    const i128 c = cofactors_[n_ - 1];
    const std::vector<long>& last = values_.back();
    if (c != 0) {
      const i128 rhs = 1 - partial;
      if (rhs % c != 0) return;
      const i128 v = rhs / c;
      if (v < -task_.height || v > task_.height) return;
      if (!std::binary_search(last.begin(), last.end(), static_cast<long>(v))) return;
      emit(static_cast<long>(v));
    } else if (partial == 1) {
      for (long v : last) emit(v);
    }
  }

  void emit(long last) {
    entries_.back() = last;
    std::vector<mpz_class> big(entries_.begin(), entries_.end());
    IntegerMatrix m(n_, std::move(big));
    ElementClass cls;
    double length = 0.0, error = 0.0;
    if (m.is_identity()) {
      cls = ElementClass::Identity;
    } else if (!is_semisimple(m)) {
      cls = ElementClass::NonSemisimple;
    } else {
      const SpectralData s = root_magnitudes(char_poly(m), task_.precision_bits);
      cls = s.unit_circle_roots == s.n ? ElementClass::Elliptic : ElementClass::PositiveLength;
      length = s.length;
      error = s.length_error;
    }
    out_.add(entries_, LatticeElement(std::move(m)), cls, length, error);
  }

  const EnumerationTask& task_;
  const std::vector<std::vector<long>>& values_;
  Collector& out_;
  std::size_t n_;
  std::vector<long> entries_;
  std::vector<i128> cofactors_;
};

i128 isqrt(i128 t) {
  i128 s = static_cast<i128>(std::sqrt(static_cast<long double>(t)));
  while (s * s > t) --s;
  while ((s + 1) * (s + 1) <= t) ++s;
  return s;
}

class QuatWalker {
 public:
  QuatWalker(const EnumerationTask& task, const std::vector<std::vector<long>>& values,
             Collector& out)
      : task_(task), values_(values), out_(out),
        alg_(std::get<QuaternionOrder>(task.spec.ambient).algebra), entries_(4) {}

  void run(const Range& r) {
    walk_prefixes(values_, r.k, r.lo, r.hi, entries_, [&] { descend(r.k); });
  }

 private:
  void descend(std::size_t pos) {
    if (pos == 3) {
      solve_last();
      return;
    }
    for (long v : values_[pos]) {
      entries_[pos] = v;
      descend(pos + 1);
    }
  }

  // nrd = 1  <=>  ab z^2 = 1 - w^2 + a x^2 + b y^2
  void solve_last() {
    const i128 w = entries_[0], x = entries_[1], y = entries_[2];
    const i128 ab = i128(alg_.a) * alg_.b;
    const i128 num = 1 - w * w + i128(alg_.a) * x * x + i128(alg_.b) * y * y;
    if (num % ab != 0) return;
    const i128 t = num / ab;
    if (t < 0) return;
    const i128 s = isqrt(t);
    if (s * s != t || s > task_.height) return;
    const std::vector<long>& last = values_[3];
    for (i128 z : {-s, s}) {
      if (std::binary_search(last.begin(), last.end(), static_cast<long>(z))) {
        emit(static_cast<long>(z));
      }
      if (s == 0) break;
    }
  }

  void emit(long z) {
    entries_[3] = z;
    QuatElement u = QuatElement::from_integers(entries_[0], entries_[1], entries_[2], z);
    const mpfr_prec_t bits = task_.precision_bits;
    ElementClass cls;
    double length = 0.0, error = 0.0;
    if (u == QuatElement::one()) {
      cls = ElementClass::Identity;
    } else if (!quat_is_semisimple(u, alg_)) {
      cls = ElementClass::NonSemisimple;
    } else {
      // Eigenvalues of the real image: (t +- sqrt(t^2 - 4 det)) / 2.
      const RealMatrix2 img = split_embedding(u, alg_, bits);
      const BigFloat t = img[0][0] + img[1][1];
      const BigFloat det = img[0][0] * img[1][1] - img[0][1] * img[1][0];
      const BigFloat disc = t * t - BigFloat(4L, bits) * det;
      // A small positive discriminant from rounding cannot occur: exact
      // discriminants are integers, so anything below 1/2 is zero or negative.
      if (disc < BigFloat(0.5, bits)) {
        cls = ElementClass::Elliptic;
      } else {
        cls = ElementClass::PositiveLength;
        const BigFloat lambda = (abs(t) + sqrt(disc)) / BigFloat(2L, bits);
        length = (BigFloat(2L, bits) * log(lambda)).to_double();
        error = std::ldexp(std::max(1.0, length), -static_cast<int>(bits) / 2);
      }
    }
    out_.add(entries_, LatticeElement(QuaternionUnit{alg_, std::move(u)}), cls, length, error);
  }

  const EnumerationTask& task_;
  const std::vector<std::vector<long>>& values_;
  Collector& out_;
  QuaternionAlgebra alg_;
  std::vector<long> entries_;
};

void merge_into(EnumerationResult& acc, EnumerationResult&& part) {
  acc.count_total += part.count_total;
  acc.count_semisimple += part.count_semisimple;
  acc.witness_failures += part.witness_failures;
  acc.length_bound_failures += part.length_bound_failures;
  if (part.min_length && (!acc.min_length || *part.min_length < *acc.min_length)) {
    acc.min_length = part.min_length;
    acc.min_length_witness = std::move(part.min_length_witness);
  }
  if (part.min_abs_trace && (!acc.min_abs_trace || *part.min_abs_trace < *acc.min_abs_trace)) {
    acc.min_abs_trace = part.min_abs_trace;
  }
  acc.records.insert(acc.records.end(), std::make_move_iterator(part.records.begin()),
                     std::make_move_iterator(part.records.end()));
}

EnumerationResult run_parts(const EnumerationTask& task, unsigned parts) {
  if (parts < 1) throw Error(ErrorKind::InvalidInput, "parts must be at least 1");
  const bool is_sl = std::holds_alternative<SpecialLinear>(task.spec.ambient);
  if (!is_sl) {
    if (!std::get<QuaternionOrder>(task.spec.ambient).algebra.split_real()) {
      throw Error(ErrorKind::NotSplit, "algebra is definite at infinity");
    }
  } else {
    const unsigned n = std::get<SpecialLinear>(task.spec.ambient).n;
    if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
    // Hadamard bound on every minor met during pruning and solving.
    const long double bound =
        std::pow(std::sqrt(static_cast<long double>(n)) * task.height, static_cast<long double>(n));
    if (!(bound < 1e30L)) throw Error(ErrorKind::DomainError, "height too large for this degree");
  }
  check_budget(task);
  const auto values = residue_classes(task);
  const auto tower = usable_tower(task);
  const std::size_t free = values.size() - 1;
  const std::size_t k = prefix_length(values, free, parts);
  const std::uint64_t total = prefix_count(values, k);

  std::vector<EnumerationResult> results(parts);
  auto work = [&](unsigned i) {
    const Range r{k, static_cast<std::uint64_t>((unsigned __int128)total * i / parts),
                  static_cast<std::uint64_t>((unsigned __int128)total * (i + 1) / parts)};
    Collector out(task, tower);
    if (is_sl) {
      SlWalker(task, values, out).run(r);
    } else {
      QuatWalker(task, values, out).run(r);
    }
    results[i] = out.take();
  };

  const unsigned workers = std::max(1u, std::min(parts, std::thread::hardware_concurrency()));
  if (workers == 1) {
    for (unsigned i = 0; i < parts; ++i) work(i);
  } else {
    std::atomic<unsigned> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (unsigned i = next++; i < parts; i = next++) work(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EnumerationResult merged;
  merged.search_space = candidate_count(task);
  merged.tower = tower;
  for (auto& r : results) merge_into(merged, std::move(r));
  return merged;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

double candidate_count(const EnumerationTask& task) {
  double count = 1.0;
  for (const auto& v : residue_classes(task)) count *= static_cast<double>(v.size());
  return count;
}

EnumerationResult enumerate_sl(const EnumerationTask& task) {
  if (!std::holds_alternative<SpecialLinear>(task.spec.ambient)) {
    throw Error(ErrorKind::InvalidInput, "task is not a special linear enumeration");
  }
  return run_parts(task, 1);
}

EnumerationResult enumerate_quat(const EnumerationTask& task) {
  if (!std::holds_alternative<QuaternionOrder>(task.spec.ambient)) {
    throw Error(ErrorKind::InvalidInput, "task is not a quaternion enumeration");
  }
  return run_parts(task, 1);
}

EnumerationResult partitioned_run(const EnumerationTask& task, unsigned parts) {
  return run_parts(task, parts);
}

LatticeElement to_element(const EnumerationTask& task, const EnumerationRecord& r) {
  if (const auto* q = std::get_if<QuaternionOrder>(&task.spec.ambient)) {
    return QuaternionUnit{q->algebra, QuatElement::from_integers(r.entries[0], r.entries[1],
                                                                 r.entries[2], r.entries[3])};
  }
  const unsigned n = std::get<SpecialLinear>(task.spec.ambient).n;
  return IntegerMatrix(n, std::vector<mpz_class>(r.entries.begin(), r.entries.end()));
}

void write_csv(std::ostream& os, const EnumerationResult& result) {
  os << "entry_vector,trace,is_semisimple,length,witness_q,passes_cor52\n";
  for (const EnumerationRecord& r : result.records) {
    for (std::size_t i = 0; i < r.entries.size(); ++i) {
      if (i) os << ' ';
      os << r.entries[i];
    }
    os << ',' << r.trace.get_str() << ',' << (r.is_semisimple() ? "true" : "false") << ',';
    os << (r.length ? format_double(*r.length) : "na") << ',';
    if (r.witness_q) {
      os << *r.witness_q;
    } else {
      os << (r.witness_failed ? "none" : "na");
    }
    os << ',' << (r.passes_length_bound ? (*r.passes_length_bound ? "true" : "false") : "na") << '\n';
  }
}

}  // namespace systole
