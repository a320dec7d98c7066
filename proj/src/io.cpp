#include "systole/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "systole/error.hpp"

namespace systole {

using nlohmann::json;

mpz_class parse_integer(const json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? mpz_class(std::to_string(j.get<std::uint64_t>()))
                                  : mpz_class(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0) {
      throw Error(ErrorKind::InvalidInput, "not an integer: \"" + s + "\"");
    }
    return v;
  }
  throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

mpq_class parse_rational(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return mpq_class(parse_integer(j));
    const mpz_class num = parse_integer(s.substr(0, slash));
    const mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in \"" + s + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  return mpq_class(parse_integer(j));
}

IntegerMatrix parse_matrix(const json& j) {
  if (!j.is_object() || !j.contains("entries")) {
    throw Error(ErrorKind::InvalidInput, "matrix JSON needs an \"entries\" field");
  }
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.empty()) {
    throw Error(ErrorKind::InvalidInput, "\"entries\" must be a non-empty array");
  }
  std::vector<mpz_class> flat;
  std::size_t n = 0;
  if (rows.front().is_array()) {
    n = rows.size();
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != n) {
        throw Error(ErrorKind::InvalidInput, "matrix rows must all have length " + std::to_string(n));
      }
      for (const json& e : row) flat.push_back(parse_integer(e));
    }
  } else {
    for (const json& e : rows) flat.push_back(parse_integer(e));
    while (n * n < flat.size()) ++n;
    if (n * n != flat.size()) {
      throw Error(ErrorKind::InvalidInput, "flat entry list length is not a square");
    }
  }
  if (j.contains("n")) {
    const json& nj = j.at("n");
    if (!nj.is_number_integer() || nj.get<std::int64_t>() != static_cast<std::int64_t>(n)) {
      throw Error(ErrorKind::InvalidInput, "\"n\" does not match the entries");
    }
  }
  return IntegerMatrix(n, std::move(flat));
}

QuaternionAlgebra parse_algebra(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b")) {
    throw Error(ErrorKind::InvalidInput, "algebra JSON needs \"a\" and \"b\"");
  }
  const mpz_class a = parse_integer(j.at("a"));
  const mpz_class b = parse_integer(j.at("b"));
  if (!a.fits_slong_p() || !b.fits_slong_p()) {
    throw Error(ErrorKind::InvalidInput, "algebra parameters out of range");
  }
  return QuaternionAlgebra(a.get_si(), b.get_si());
}

QuatElement parse_element(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array() ||
      j.at("coeffs").size() != 4) {
    throw Error(ErrorKind::InvalidInput, "element JSON needs \"coeffs\" with four entries");
  }
  QuatElement u;
  for (std::size_t k = 0; k < 4; ++k) u.coeffs[k] = parse_rational(j.at("coeffs")[k]);
  return u;
}

json load_json(const std::string& source) {
  try {
    if (!source.empty() && source.front() == '{') return json::parse(source);
    std::ifstream in(source);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + source);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string six_figures(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

namespace {

std::string render(const json& v, OutputFormat format) {
  switch (v.type()) {
    case json::value_t::null: return "na";
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::string: return v.get<std::string>();
    case json::value_t::number_float:
      return format == OutputFormat::Table ? six_figures(v.get<double>()) : shortest(v.get<double>());
    case json::value_t::array: {
      std::string out;
      for (const json& e : v) {
        if (!out.empty()) out += ' ';
        out += render(e, format);
      }
      return out;
    }
    default: return v.dump();
  }
}

void flatten(const Report& r, const std::string& prefix,
             std::vector<std::pair<std::string, json>>& out) {
  for (const auto& [key, value] : r.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else {
      out.emplace_back(name, json(value));
    }
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void emit_report(std::ostream& os, const Report& report, OutputFormat format) {
  if (format == OutputFormat::Json) {
    os << report.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, json>> fields;
  flatten(report, "", fields);
  if (format == OutputFormat::Table) {
    std::size_t width = 0;
    for (const auto& f : fields) width = std::max(width, f.first.size());
    for (const auto& [key, value] : fields) {
      os << std::left << std::setw(static_cast<int>(width)) << key << "  " << render(value, format)
         << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_cell(fields[i].first);
  os << '\n';
  for (std::size_t i = 0; i < fields.size(); ++i) {
    os << (i ? "," : "") << csv_cell(render(fields[i].second, format));
  }
  os << '\n';
}

void emit_rows(std::ostream& os, const std::vector<Report>& rows, OutputFormat format) {
  if (format == OutputFormat::Json) {
    os << Report(rows).dump(2) << '\n';
    return;
  }
  if (rows.empty()) {
    if (format == OutputFormat::Table) os << "(no rows)\n";
    return;
  }
  std::vector<std::string> keys;
  for (const auto& [key, value] : rows.front().items()) keys.push_back(key);
  std::vector<std::vector<std::string>> cells;
  for (const Report& r : rows) {
    std::vector<std::string> line;
    for (const std::string& k : keys) line.push_back(render(r.contains(k) ? json(r.at(k)) : json(), format));
    cells.push_back(std::move(line));
  }
  if (format == OutputFormat::Csv) {
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << csv_cell(keys[i]);
    os << '\n';
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << csv_cell(line[i]);
      os << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    width[i] = keys[i].size();
    for (const auto& line : cells) width[i] = std::max(width[i], line[i].size());
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << keys[i];
  }
  os << '\n';
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << line[i];
    }
    os << '\n';
  }
}

}  // namespace systole
