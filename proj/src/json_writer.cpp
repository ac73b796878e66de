#include "patternforge/json_writer.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "patternforge/errors.hpp"

namespace patternforge {

std::string format_rate(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value == 0.0 ? 0.0 : value);
  return buf;
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  auto& level = stack_.back();
  if (!level.empty) out_ += ',';
  level.empty = false;
  out_ += '\n';
  out_.append(stack_.size() * 2, ' ');
}

void JsonWriter::open(char bracket) {
  before_value();
  out_ += bracket;
  stack_.push_back(Level{});
}

void JsonWriter::close(char bracket) {
  if (stack_.empty()) throw InternalError("JsonWriter: unbalanced close");
  const bool empty = stack_.back().empty;
  stack_.pop_back();
  if (!empty) {
    out_ += '\n';
    out_.append(stack_.size() * 2, ' ');
  }
  out_ += bracket;
}

JsonWriter& JsonWriter::begin_object() {
  open('{');
  return *this;
}
JsonWriter& JsonWriter::end_object() {
  close('}');
  return *this;
}
JsonWriter& JsonWriter::begin_array() {
  open('[');
  return *this;
}
JsonWriter& JsonWriter::end_array() {
  close(']');
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view name) {
  before_value();
  out_ += nlohmann::json(std::string(name)).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  out_ += ": ";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::string(std::string_view value) {
  before_value();
  out_ += nlohmann::json(std::string(value)).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  return *this;
}

JsonWriter& JsonWriter::integer(std::uint64_t value) {
  before_value();
  out_ += std::to_string(value);
  return *this;
}

JsonWriter& JsonWriter::fixed6(double value) {
  before_value();
  if (!std::isfinite(value)) throw InternalError("JsonWriter: non-finite rate");
  out_ += format_rate(value);
  return *this;
}

JsonWriter& JsonWriter::boolean(bool value) {
  before_value();
  out_ += value ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  out_ += "null";
  return *this;
}

}  // namespace patternforge
