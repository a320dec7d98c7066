#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "systole/integer_matrix.hpp"
#include "systole/quaternion.hpp"

namespace systole {

// {"n": 2, "entries": [[1, 5], [5, 26]]}; a flat entry list of length n^2
// is also accepted. Entries are JSON integers or decimal strings.
IntegerMatrix parse_matrix(const nlohmann::json& j);
// {"a": 2, "b": 3}
QuaternionAlgebra parse_algebra(const nlohmann::json& j);
// {"coeffs": [w, x, y, z]} with integers or "p/q" strings.
QuatElement parse_element(const nlohmann::json& j);

mpz_class parse_integer(const nlohmann::json& j);
mpq_class parse_rational(const nlohmann::json& j);

// Reads `source` as inline JSON when it starts with '{', else as a file path.
nlohmann::json load_json(const std::string& source);

enum class OutputFormat { Table, Csv, Json };

// Shortest representation that round-trips.
std::string shortest(double v);
// Six significant figures.
std::string six_figures(double v);

using Report = nlohmann::ordered_json;

// A single record: "key: value" lines, a two-line CSV, or a JSON object.
// Nested objects are flattened with dotted keys in table and CSV output.
void emit_report(std::ostream& os, const Report& report, OutputFormat format);
// Rows sharing the same keys: aligned columns, CSV with header, or a JSON array.
void emit_rows(std::ostream& os, const std::vector<Report>& rows, OutputFormat format);

}  // namespace systole
