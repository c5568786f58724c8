#pragma once

#include <json.hpp>

#include <string>

namespace bellpoly::cli {

/// Twelve significant digits; non-finite values have no JSON spelling and
/// come out as "null".
std::string format_double(double value);

/// Pretty-printed JSON with keys in sorted order and every floating value
/// written by format_double, so identical reports are byte-identical.
std::string render_json(const nlohmann::json& value);

}  // namespace bellpoly::cli
