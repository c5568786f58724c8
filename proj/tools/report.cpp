#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace bellpoly::cli {

namespace {

void render(const nlohmann::json& value, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    if (value.is_object()) {
        if (value.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, item] : value.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + nlohmann::json(key).dump() + ": ";
            render(item, indent + 2, out);
        }
        out += "\n" + close + "}";
    } else if (value.is_array()) {
        if (value.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line.
        bool scalars = true;
        for (const auto& item : value) {
            scalars = scalars && item.is_primitive();
        }
        out += scalars ? "[" : "[\n";
        bool first = true;
        for (const auto& item : value) {
            if (!first) {
                out += scalars ? ", " : ",\n";
            }
            first = false;
            if (!scalars) {
                out += pad;
            }
            render(item, indent + 2, out);
        }
        out += scalars ? "]" : "\n" + close + "]";
    } else if (value.is_number_float()) {
        out += format_double(value.get<double>());
    } else {
        out += value.dump();
    }
}

}  // namespace

std::string format_double(double value) {
    if (!std::isfinite(value)) {
        return "null";
    }
    if (value == 0.0) {
        return "0";
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::string render_json(const nlohmann::json& value) {
    std::string out;
    render(value, 0, out);
    out += "\n";
    return out;
}

}  // namespace bellpoly::cli
