#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace patternforge {

// A header plus rows of raw string cells; every row has header.size() cells.
struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws InvalidInputError listing the available headers.
  std::size_t column_index(std::string_view name) const;
  std::vector<std::string> column(std::size_t index) const;
};

}  // namespace patternforge
