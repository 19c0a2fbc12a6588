#pragma once

#include <json.hpp>
#include <string>

namespace rinv::cli {

using Json = nlohmann::ordered_json;

/// Serialises with every floating value printed by format_double (17
/// significant digits); non-finite values become the strings "inf",
/// "-inf" and "nan". Output is deterministic for equal input.
std::string dump(const Json& j, int indent = 2);

/// A double as JSON: a number when finite, otherwise its string form.
Json number(double x);

}  // namespace rinv::cli
