#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "patternforge/sampler.hpp"

namespace pftest {

inline std::string random_string(patternforge::Rng& rng, std::size_t max_len, std::string_view alphabet) {
  const std::size_t len = rng.below(max_len + 1);
  std::string out;
  for (std::size_t i = 0; i < len; ++i) out += alphabet[rng.below(alphabet.size())];
  return out;
}

// Within-cluster squared deviation of a set of values.
inline double sse(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s;
}

// Lowest within-cluster cost over every assignment of the points to two
// classes, found by enumerating all subsets.
inline double min_partition_cost(const std::vector<double>& points) {
  const std::size_t n = points.size();
  double best = sse(points);
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? a : b).push_back(points[i]);
    best = std::min(best, sse(a) + sse(b));
  }
  return best;
}

inline std::vector<std::string> repeat(const std::string& value, std::size_t n) { return std::vector<std::string>(n, value); }

}  // namespace pftest
