#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace patternforge {

// Fixed six-fractional-digit rendering used for every rate in the outputs.
std::string format_rate(double value);

// Streaming pretty-printer with two-space indentation. Keys appear in the
// order they are written; rates go through fixed6().
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);

  JsonWriter& string(std::string_view value);
  JsonWriter& integer(std::uint64_t value);
  JsonWriter& fixed6(double value);
  JsonWriter& boolean(bool value);
  JsonWriter& null();

  // Returns the document followed by a newline.
  std::string str() const { return out_ + "\n"; }

 private:
  void before_value();
  void open(char bracket);
  void close(char bracket);

  struct Level {
    bool empty = true;
  };
  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

}  // namespace patternforge
