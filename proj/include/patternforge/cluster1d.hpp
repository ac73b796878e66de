#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "patternforge/errors.hpp"

namespace patternforge {

// Two-class partition of one-dimensional values. Every high value is at least
// every low value.
template <typename Payload>
struct TwoSplit {
  std::vector<std::pair<double, Payload>> high;
  std::vector<std::pair<double, Payload>> low;
  double boundary = 0.0;  // smallest value assigned to the high cluster
};

// Size of the low cluster in the exact two-means partition of `sorted`
// (ascending). Cuts are only placed between distinct values; among equally
// good cuts the one with the larger high cluster wins. A list with a single
// distinct value is entirely high (returns 0).
std::size_t two_means_cut(std::span<const double> sorted);

// Exact 1-D two-means over values plus sentinel points. Sentinels shape the
// split but are dropped from the output.
template <typename Payload>
TwoSplit<Payload> split_two(std::vector<std::pair<double, Payload>> values,
                            std::span<const double> sentinels) {
  if (values.empty()) throw InvalidInputError("split_two: no values to cluster");
  std::stable_sort(values.begin(), values.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> points;
  points.reserve(values.size() + sentinels.size());
  for (const auto& v : values) points.push_back(v.first);
  points.insert(points.end(), sentinels.begin(), sentinels.end());
  std::sort(points.begin(), points.end());

  const std::size_t cut = two_means_cut(points);
  TwoSplit<Payload> out;
  out.boundary = points[cut];
  for (auto& v : values) {
    if (v.first >= out.boundary) {
      out.high.push_back(std::move(v));
    } else {
      out.low.push_back(std::move(v));
    }
  }
  return out;
}

template <typename Payload>
double high_mass(const TwoSplit<Payload>& split) {
  double mass = 0.0;
  for (const auto& v : split.high) mass += v.first;
  return mass;
}

}  // namespace patternforge
