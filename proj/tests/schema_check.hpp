#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace pftest {

// Checks a document against the keywords the shipped schemas use: type,
// enum, required, properties, additionalProperties (false), items, minimum,
// maximum. Returns one message per violation.
inline void check_schema(const nlohmann::json& schema, const nlohmann::json& doc, const std::string& path,
                         std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const auto type = schema["type"].get<std::string>();
    bool ok = false;
    if (type == "object") ok = doc.is_object();
    else if (type == "array") ok = doc.is_array();
    else if (type == "string") ok = doc.is_string();
    else if (type == "integer") ok = doc.is_number_integer();
    else if (type == "number") ok = doc.is_number();
    else if (type == "boolean") ok = doc.is_boolean();
    if (!ok) {
      errors.push_back(path + ": expected " + type);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"]) found = found || v == doc;
    if (!found) errors.push_back(path + ": value not in enum");
  }
  if (doc.is_number()) {
    if (schema.contains("minimum") && doc.get<double>() < schema["minimum"].get<double>()) {
      errors.push_back(path + ": below minimum");
    }
    if (schema.contains("maximum") && doc.get<double>() > schema["maximum"].get<double>()) {
      errors.push_back(path + ": above maximum");
    }
  }
  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!doc.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
      }
    }
    const auto props = schema.value("properties", nlohmann::json::object());
    for (const auto& [key, value] : doc.items()) {
      if (props.contains(key)) {
        check_schema(props[key], value, path + "." + key, errors);
      } else if (schema.contains("additionalProperties") && schema["additionalProperties"] == false) {
        errors.push_back(path + ": unexpected key " + key);
      }
    }
  }
  if (doc.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      check_schema(schema["items"], doc[i], path + "[" + std::to_string(i) + "]", errors);
    }
  }
}

inline std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& doc) {
  std::vector<std::string> errors;
  check_schema(schema, doc, "$", errors);
  return errors;
}

}  // namespace pftest
