#include "systole/cli.hpp"

#include <cstdlib>
#include <optional>

#include "CLI11.hpp"
#include "systole/bounds.hpp"
#include "systole/enumerate.hpp"
#include "systole/error.hpp"
#include "systole/exact.hpp"
#include "systole/io.hpp"
#include "systole/lattice.hpp"
#include "systole/spectral.hpp"

namespace systole::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string format = "table";
  std::string enumerate_format = "csv";
  unsigned bits = kDefaultPrecisionBits;
  std::string matrix;
  std::string algebra;
  std::string element;
  std::string other;
  unsigned n = 0;
  long p = 0;
  unsigned m = 0;
  unsigned mmax = 0;
  std::string level;
  long height = 0;
  unsigned jobs = 1;
  std::string family;
  unsigned rank = 0;
  unsigned degree = 1;
  double volume = 0.0;
  std::optional<double> budget;
  bool semisimple_only = false;
  bool exclude_identity = false;
};

OutputFormat output_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return OutputFormat::Table;
}

void add_common(CLI::App* sub, std::string& format) {
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
}

void add_bits(CLI::App* sub, Options& o) {
  sub->add_option("--bits", o.bits, "Working precision in bits for spectral computations")
      ->check(CLI::Range(32u, 1u << 16))
      ->capture_default_str();
}

// Element given either as --matrix or as --algebra with --element.
void add_element_inputs(CLI::App* sub, Options& o) {
  auto* mat = sub->add_option("--matrix", o.matrix, "Matrix JSON file or inline JSON");
  auto* alg = sub->add_option("--algebra", o.algebra, "Quaternion algebra JSON {\"a\", \"b\"}");
  auto* el = sub->add_option("--element", o.element, "Quaternion element JSON {\"coeffs\"}");
  mat->excludes(alg)->excludes(el);
  alg->needs(el);
  el->needs(alg);
}

LatticeElement load_element(const Options& o) {
  if (!o.matrix.empty()) return parse_matrix(load_json(o.matrix));
  if (o.algebra.empty()) throw Error(ErrorKind::InvalidInput, "--matrix or --algebra is required");
  return QuaternionUnit{parse_algebra(load_json(o.algebra)), parse_element(load_json(o.element))};
}

mpz_class parse_level(const std::string& s) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0 || v < 1) {
    throw Error(ErrorKind::InvalidInput, "--level must be a positive integer");
  }
  return v;
}

json integer(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json bracket_json(const LengthBracket& b, double length) {
  Report r;
  r["lower"] = b.lower;
  r["upper"] = b.upper;
  r["contains_length"] = b.contains(length);
  return r;
}

int cmd_length(const Options& o, std::ostream& out) {
  const IntegerMatrix m = parse_matrix(load_json(o.matrix));
  const SpectralData s = translation_length(m, o.bits);
  Report r;
  r["n"] = m.size();
  r["class"] = std::string(to_string(classify(m, o.bits)));
  r["length"] = s.length;
  r["length_error"] = s.length_error;
  r["magnitudes"] = s.magnitudes;
  r["error_radius"] = s.error_radius;
  r["hyp_trace"] = s.hyp_trace;
  r["unit_circle_roots"] = s.unit_circle_roots;
  r["working_bits"] = s.working_bits;
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const IntegerMatrix m = parse_matrix(load_json(o.matrix));
  const SpectralData s = translation_length(m, o.bits);
  const CharPolyData cp = char_poly(m);
  const PowerTraces pt = newton_power_traces(cp);
  Report r;
  r["n"] = m.size();
  r["trace"] = integer(m.trace());
  r["length"] = s.length;
  r["length_error"] = s.length_error;
  r["hyp_trace"] = s.hyp_trace;
  if (m.size() == 2 && abs(m.trace()) > 2) {
    r["exact_length_n2"] = exact_length_n2(m.trace().get_d());
  } else {
    r["exact_length_n2"] = nullptr;
  }
  if (m.size() >= 2) {
    r["hyp_trace_bracket"] =
        bracket_json(bracket_from_hyp_trace(s.hyp_trace, static_cast<unsigned>(m.size()),
                                            s.hyp_trace_error),
                     s.length);
    if (abs(m.trace()) >= 1) {
      r["power_trace_bracket"] = bracket_json(bracket_from_power_traces(pt), s.length);
    } else {
      r["power_trace_bracket"] = nullptr;
    }
  }
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

void add_trace_congruence(Report& r, const LatticeElement& e, const mpz_class& level) {
  r["in_congruence"] = in_congruence(e, level);
  const auto pp = as_prime_power(level);
  r["trace"] = integer(trace(e));
  if (!pp) {
    r["trace_congruence"] = nullptr;
    return;
  }
  try {
    const TraceCongruence tc = trace_congruence(e, pp->p, pp->m);
    Report t;
    t["p"] = integer(pp->p);
    t["m"] = pp->m;
    t["residue_ok"] = tc.residue_ok;
    t["k"] = integer(tc.k);
    r["trace_congruence"] = t;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotInSubgroup && err.kind() != ErrorKind::RamifiedPrime) throw;
    r["trace_congruence"] = nullptr;
  }
}

int cmd_membership(const Options& o, std::ostream& out) {
  const LatticeElement e = load_element(o);
  validate(e);
  Report r;
  r["level"] = o.level;
  add_trace_congruence(r, e, parse_level(o.level));
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const LatticeElement e = load_element(o);
  validate(e);
  const mpz_class p(o.p);
  const long q = witness_q(e, p, o.m);
  mpz_class level;
  mpz_pow_ui(level.get_mpz_t(), p.get_mpz_t(), o.m);
  Report r;
  r["q"] = q;
  r["trace_of_power"] = integer(trace(power(e, q)));
  r["threshold"] = integer(level - degree(e));
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

int cmd_syslb(const Options& o, std::ostream& out) {
  const mpz_class p(o.p);
  Report r;
  r["n"] = o.n;
  r["p"] = o.p;
  r["m"] = o.m;
  r["sys_lower_bound"] = sys_lower_bound(o.n, p, o.m);
  r["congruence_length_lb"] = congruence_length_lb(o.n, p, o.m);
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

int cmd_growth(const Options& o, std::ostream& out) {
  std::vector<Report> rows;
  for (const GrowthRow& g : growth_table(o.n, mpz_class(o.p), o.mmax)) {
    Report r;
    r["m"] = g.m;
    r["sys_lb"] = g.sys_lb;
    r["log_index_ub"] = g.log_index_ub;
    r["predicted"] = g.predicted;
    r["sys_lb_identity"] = g.sys_lb_identity;
    rows.push_back(std::move(r));
  }
  emit_rows(out, rows, output_format(o.format));
  return kExitOk;
}

FamilySpec family_spec(const Options& o) {
  FamilySpec s;
  s.n = o.n;
  s.field_degree = o.degree;
  if (o.family == "sl") {
    s.family = Family::SpecialLinear;
  } else if (o.family == "real") {
    s.family = Family::RealHyperbolic;
  } else if (o.family == "complex") {
    s.family = Family::ComplexHyperbolic;
  } else if (o.family == "quaternionic") {
    s.family = Family::QuaternionicHyperbolic;
  } else if (o.family == "real-field") {
    s.family = Family::RealHyperbolicOverField;
  } else if (const auto k = parse_killing_cartan(o.family)) {
    s.family = Family::General;
    s.type = make_kc_type(*k, o.rank);
  } else {
    throw Error(ErrorKind::UnsupportedFamily, "unknown family " + o.family);
  }
  return s;
}

std::string type_name(const KcType& t) {
  std::string name(to_string(t.family));
  if (name.size() == 1) name += std::to_string(t.rank);
  return name;
}

int cmd_constants(const Options& o, std::ostream& out) {
  const ConstantsProfile p = growth_constant(family_spec(o));
  Report r;
  r["family"] = std::string(to_string(p.family));
  if (p.type) {
    r["type"] = type_name(*p.type);
    r["rank"] = p.rank;
    r["exponents"] = p.exponents;
    r["f_value"] = p.f_value->to_string(40);
  } else {
    r["type"] = nullptr;
  }
  r["c1"] = p.c1;
  r["renormalization"] = p.renormalization;
  r["d1"] = p.d1;
  r["d2"] = p.d2;
  r["ambient_degree"] = p.ambient_degree;
  if (o.volume != 0.0) {
    if (!p.type) throw Error(ErrorKind::UnsupportedFamily, "no Killing-Cartan type for --volume");
    const VolumeConstant vc = growth_constant_from_volume(*p.type, o.volume);
    Report d;
    d["value"] = vc.degree.value;
    d["caveat"] = vc.degree.caveat;
    d["note"] = vc.degree.note;
    r["degree_bound"] = d;
    r["volume_c1"] = vc.c1;
  }
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

double budget_from(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv(kBudgetEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) {
      throw Error(ErrorKind::InvalidInput, std::string(kBudgetEnv) + " must be a positive number");
    }
    return v;
  }
  return kDefaultBudget;
}

std::string joined(const std::vector<long>& v) {
  std::string s;
  for (long x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  EnumerationTask task;
  if (!o.algebra.empty()) {
    task.spec.ambient = QuaternionOrder{parse_algebra(load_json(o.algebra))};
  } else {
    task.spec.ambient = SpecialLinear{o.n == 0 ? 2u : o.n};
  }
  if (!o.level.empty()) {
    task.spec.level = parse_level(o.level);
  } else if (o.p != 0) {
    mpz_pow_ui(task.spec.level.get_mpz_t(), mpz_class(o.p).get_mpz_t(), o.m == 0 ? 1 : o.m);
  }
  task.height = o.height;
  task.filters = {o.semisimple_only, o.exclude_identity};
  task.budget = budget_from(o);
  task.precision_bits = o.bits;
  const EnumerationResult res = partitioned_run(task, o.jobs);
  const OutputFormat fmt = output_format(o.enumerate_format);
  if (fmt == OutputFormat::Csv) {
    write_csv(out, res);
    return kExitOk;
  }
  Report r;
  r["level"] = task.spec.level.get_str();
  r["height"] = task.height;
  r["search_space"] = res.search_space;
  r["count_total"] = res.count_total;
  r["count_semisimple"] = res.count_semisimple;
  r["records"] = res.records.size();
  r["min_length_empirical"] = res.min_length ? json(*res.min_length) : json();
  r["min_length_witness"] =
      res.min_length_witness ? json(joined(res.min_length_witness->entries)) : json();
  r["min_abs_trace_empirical"] = res.min_abs_trace ? integer(*res.min_abs_trace) : json();
  if (res.tower) {
    const auto* sl = std::get_if<SpecialLinear>(&task.spec.ambient);
    r["length_bound"] = congruence_length_lb(sl ? sl->n : 2u, res.tower->p, res.tower->m);
  } else {
    r["length_bound"] = nullptr;
  }
  r["witness_failures"] = res.witness_failures;
  r["length_bound_failures"] = res.length_bound_failures;
  if (fmt == OutputFormat::Json) {
    json records = json::array();
    for (const EnumerationRecord& rec : res.records) {
      json row;
      row["entries"] = rec.entries;
      row["trace"] = integer(rec.trace);
      row["class"] = std::string(to_string(rec.element_class));
      row["length"] = rec.length ? json(*rec.length) : json();
      row["witness_q"] = rec.witness_q ? json(*rec.witness_q) : json();
      row["passes_cor52"] = rec.passes_length_bound ? json(*rec.passes_length_bound) : json();
      records.push_back(std::move(row));
    }
    r["elements"] = records;
  }
  emit_report(out, r, fmt);
  return kExitOk;
}

json rational(const mpq_class& q) {
  if (q.get_den() == 1) return integer(q.get_num());
  return q.get_str();
}

json coeffs_json(const QuatElement& u) {
  json c = json::array();
  for (const mpq_class& x : u.coeffs) c.push_back(rational(x));
  return c;
}

int cmd_quat(const std::string& op, const Options& o, std::ostream& out) {
  const QuaternionAlgebra alg = parse_algebra(load_json(o.algebra));
  const QuatElement u = parse_element(load_json(o.element));
  Report r;
  if (op == "mult") {
    const QuatElement v = parse_element(load_json(o.other));
    const QuatElement w = quat_mult(u, v, alg);
    const TrdNrd tn = quat_trd_nrd(w, alg);
    r["coeffs"] = coeffs_json(w);
    r["trd"] = rational(tn.trd);
    r["nrd"] = rational(tn.nrd);
  } else if (op == "norm") {
    const TrdNrd tn = quat_trd_nrd(u, alg);
    r["trd"] = rational(tn.trd);
    r["nrd"] = rational(tn.nrd);
  } else if (op == "embed") {
    const RealMatrix2 img = split_embedding(u, alg, o.bits);
    r["matrix"] = json::array({json::array({img[0][0].to_double(), img[0][1].to_double()}),
                               json::array({img[1][0].to_double(), img[1][1].to_double()})});
    r["trace"] = (img[0][0] + img[1][1]).to_double();
    r["det"] = (img[0][0] * img[1][1] - img[0][1] * img[1][0]).to_double();
  } else {
    const LatticeElement e = QuaternionUnit{alg, u};
    validate(e);
    r["level"] = o.level;
    add_trace_congruence(r, e, parse_level(o.level));
  }
  emit_report(out, r, output_format(o.format));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Translation lengths, systole bounds and congruence-subgroup checks",
               "systolecalc"};
  app.require_subcommand(1);

  auto* length = app.add_subcommand("length", "Translation length, class and root moduli");
  length->add_option("--matrix", o.matrix, "Matrix JSON file or inline JSON")->required();
  add_bits(length, o);
  add_common(length, o.format);

  auto* bounds = app.add_subcommand("bounds", "Trace-length brackets next to the true length");
  bounds->add_option("--matrix", o.matrix, "Matrix JSON file or inline JSON")->required();
  add_bits(bounds, o);
  add_common(bounds, o.format);

  auto* membership = app.add_subcommand("membership", "Congruence membership and trace residue");
  add_element_inputs(membership, o);
  membership->add_option("--level", o.level, "Level N")->required();
  add_common(membership, o.format);

  auto* witness = app.add_subcommand("witness", "Power q with a large trace");
  add_element_inputs(witness, o);
  witness->add_option("--p", o.p, "Prime p")->required()->check(CLI::PositiveNumber);
  witness->add_option("--m", o.m, "Exponent m")->required()->check(CLI::PositiveNumber);
  add_common(witness, o.format);

  auto* syslb = app.add_subcommand("syslb", "Systole and length lower bounds at level p^m");
  syslb->add_option("--n", o.n, "Degree n")->required()->check(CLI::PositiveNumber);
  syslb->add_option("--p", o.p, "Prime p")->required()->check(CLI::PositiveNumber);
  syslb->add_option("--m", o.m, "Exponent m")->required()->check(CLI::PositiveNumber);
  add_common(syslb, o.format);

  auto* growth = app.add_subcommand("growth", "Growth table for m = 1..mmax");
  growth->add_option("--n", o.n, "Degree n")->required()->check(CLI::PositiveNumber);
  growth->add_option("--p", o.p, "Prime p")->required()->check(CLI::PositiveNumber);
  growth->add_option("--mmax", o.mmax, "Largest exponent")->required()->check(CLI::NonNegativeNumber);
  add_common(growth, o.format);

  auto* constants = app.add_subcommand("constants", "Growth constants and f-values");
  constants
      ->add_option("--family", o.family,
                   "sl, real, complex, quaternionic, real-field, or a type A B C D E6 E7 E8 F4 G2")
      ->required();
  constants->add_option("--n", o.n, "Degree or dimension for geometric families");
  constants->add_option("--rank", o.rank, "Rank for classical types");
  constants->add_option("--degree", o.degree, "Field degree d2")->capture_default_str()->check(CLI::PositiveNumber);
  constants->add_option("--volume", o.volume, "Volume v > 1 for the degree bound");
  add_common(constants, o.format);

  auto* enumerate = app.add_subcommand("enumerate", "Bounded-height enumeration of a congruence subgroup");
  enumerate->add_option("--n", o.n, "Matrix size (special linear)")->check(CLI::Range(2u, 16u));
  auto* alg_opt = enumerate->add_option("--algebra", o.algebra, "Quaternion algebra JSON");
  enumerate->get_option("--n")->excludes(alg_opt);
  auto* level_opt = enumerate->add_option("--level", o.level, "Level N");
  auto* p_opt = enumerate->add_option("--p", o.p, "Prime p (level p^m)")->check(CLI::PositiveNumber);
  enumerate->add_option("--m", o.m, "Exponent m (level p^m)")->check(CLI::PositiveNumber)->needs(p_opt);
  level_opt->excludes(p_opt);
  enumerate->add_option("--height", o.height, "Largest absolute entry")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--jobs", o.jobs, "Number of partitions")->capture_default_str()->check(CLI::Range(1u, 4096u));
  enumerate->add_option("--budget", o.budget, "Largest admissible candidate count");
  enumerate->add_flag("--semisimple-only", o.semisimple_only, "Keep semisimple elements only");
  enumerate->add_flag("--exclude-identity", o.exclude_identity, "Drop the identity");
  add_bits(enumerate, o);
  add_common(enumerate, o.enumerate_format);

  auto* quat = app.add_subcommand("quat", "Quaternion algebra operations");
  quat->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> quat_ops;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"mult", "Product of two elements"},
           {"norm", "Reduced trace and norm"},
           {"embed", "Image in Mat_2(R)"},
           {"membership", "Congruence membership of a unit"}}) {
    auto* op = quat->add_subcommand(name, help);
    op->add_option("--algebra", o.algebra, "Quaternion algebra JSON")->required();
    op->add_option("--element", o.element, "Element JSON")->required();
    if (name == "mult") op->add_option("--other", o.other, "Second element JSON")->required();
    if (name == "membership") op->add_option("--level", o.level, "Level N")->required();
    if (name == "embed") add_bits(op, o);
    add_common(op, o.format);
    quat_ops.emplace_back(name, op);
  }

  std::vector<const char*> argv{"systolecalc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    // Requirement checks run before unknown arguments are reported; name the
    // unknown argument first since it is usually the cause.
    const std::vector<std::string> extra = app.remaining(true);
    if (!extra.empty()) {
      err << "error: unrecognized argument " << extra.front() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return kExitUsage;
  }

  try {
    if (length->parsed()) return cmd_length(o, out);
    if (bounds->parsed()) return cmd_bounds(o, out);
    if (membership->parsed()) return cmd_membership(o, out);
    if (witness->parsed()) return cmd_witness(o, out);
    if (syslb->parsed()) return cmd_syslb(o, out);
    if (growth->parsed()) return cmd_growth(o, out);
    if (constants->parsed()) return cmd_constants(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    for (const auto& [name, op] : quat_ops) {
      if (op->parsed()) return cmd_quat(name, o, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::InvalidInput ? kExitUsage : kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace systole::cli
