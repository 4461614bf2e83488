#include "json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace dcrec::cli {

std::string json_quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

std::string json_number(double value) {
    if (!std::isfinite(value)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

JsonObject& JsonObject::raw(std::string_view key, std::string rendered) {
    fields_.emplace_back(std::string(key), std::move(rendered));
    return *this;
}

JsonObject& JsonObject::number(std::string_view key, double value) { return raw(key, json_number(value)); }
JsonObject& JsonObject::integer(std::string_view key, std::int64_t value) {
    return raw(key, std::to_string(value));
}
JsonObject& JsonObject::boolean(std::string_view key, bool value) { return raw(key, value ? "true" : "false"); }
JsonObject& JsonObject::string(std::string_view key, std::string_view value) {
    return raw(key, json_quote(value));
}
JsonObject& JsonObject::strings(std::string_view key, const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + json_quote(values[i]);
    return raw(key, out + "]");
}
JsonObject& JsonObject::object(std::string_view key, const JsonObject& value) { return raw(key, value.dump()); }
JsonObject& JsonObject::null(std::string_view key) { return raw(key, "null"); }

std::string JsonObject::dump() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); ++i)
        out += (i ? "," : "") + json_quote(fields_[i].first) + ":" + fields_[i].second;
    return out + "}";
}

}  // namespace dcrec::cli
