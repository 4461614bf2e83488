#pragma once

// Ordered, compact JSON objects with numbers printed to 17 significant
// digits. Key order is insertion order, so reports diff cleanly.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dcrec::cli {

class JsonObject {
public:
    JsonObject& number(std::string_view key, double value);
    JsonObject& integer(std::string_view key, std::int64_t value);
    JsonObject& boolean(std::string_view key, bool value);
    JsonObject& string(std::string_view key, std::string_view value);
    JsonObject& strings(std::string_view key, const std::vector<std::string>& values);
    JsonObject& object(std::string_view key, const JsonObject& value);
    JsonObject& null(std::string_view key);

    std::string dump() const;

private:
    JsonObject& raw(std::string_view key, std::string rendered);

    std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_quote(std::string_view s);
std::string json_number(double value);

}  // namespace dcrec::cli
