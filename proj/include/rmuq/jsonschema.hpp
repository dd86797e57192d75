// Minimal JSON Schema validator covering the subset used by the shipped
// report schema: type, properties, required, items, enum, additionalProperties.
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace rmuq {

inline bool json_type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

inline bool validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string* error = nullptr, const std::string& path = "$") {
  auto fail = [&](const std::string& why) {
    if (error) *error = path + ": " + why;
    return false;
  };
  if (schema.contains("type")) {
    const auto& type = schema["type"];
    if (type.is_string()) {
      if (!json_type_matches(value, type.get<std::string>()))
        return fail("expected type " + type.get<std::string>());
    } else if (type.is_array()) {
      bool any = false;
      for (const auto& t : type) any |= json_type_matches(value, t.get<std::string>());
      if (!any) return fail("value matches none of the allowed types");
    }
  }
  if (schema.contains("enum")) {
    bool any = false;
    for (const auto& candidate : schema["enum"]) any |= candidate == value;
    if (!any) return fail("value not in enum");
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key " + key.get<std::string>());
    const bool extra_ok = !schema.contains("additionalProperties") ||
                          schema["additionalProperties"].get<bool>();
    for (const auto& [key, sub] : value.items()) {
      if (schema.contains("properties") && schema["properties"].contains(key)) {
        if (!validate_schema(sub, schema["properties"][key], error, path + "." + key))
          return false;
      } else if (!extra_ok) {
        return fail("unexpected key " + key);
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i)
      if (!validate_schema(value[i], schema["items"], error,
                           path + "[" + std::to_string(i) + "]"))
        return false;
  }
  return true;
}

}  // namespace rmuq
