#pragma once

#include <string>
#include <string_view>

#include "rinv/matrix.hpp"

namespace rinv {

/// Decimal text for a double with 17 significant digits ("%.17g"), which
/// round-trips bit-exactly through strtod. Infinities become "inf"/"-inf".
std::string format_double(double x);

/// CSV: one line per matrix row, comma separated, no header.
std::string to_csv(const Matrix& a);
Matrix matrix_from_csv(std::string_view text);

/// JSON: {"n": rows, "m": cols, "data": [row-major entries]}.
std::string to_json(const Matrix& a);
Matrix matrix_from_json(std::string_view text);

/// Format is chosen by extension: ".json" is JSON, anything else CSV.
Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& a, const std::string& path);

}  // namespace rinv
