#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "patternforge/types.hpp"

namespace patternforge {

// Seeded generator whose outputs do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Uniform double in [0, 1).
  double unit();

 private:
  std::mt19937_64 engine_;
};

// Rows drawn uniformly without replacement, ordered by row index.
struct Sample {
  std::vector<std::size_t> indices;
  std::vector<std::string> records;
  std::size_t population = 0;

  std::size_t size() const noexcept { return indices.size(); }
};

// Cochran's sample size at 95% confidence, 5% margin, p = 0.5, with the
// finite-population correction; capped at the population.
std::size_t sample_size(std::size_t population);
std::size_t sample_size(std::size_t population, const SamplePolicy& policy);

Sample draw_sample(std::span<const std::string> column, std::size_t n, std::uint64_t seed);

// k independent samples; the i-th uses seed + i. Subsets may overlap.
std::vector<Sample> draw_subsets(std::span<const std::string> column, std::size_t n, std::size_t k,
                                 std::uint64_t seed);

// Sorted, distinct indices in [0, population). Deterministic for a given
// (population, n, seed) on every platform.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n, std::uint64_t seed);

}  // namespace patternforge
