#include "patternforge/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

constexpr double kZ95 = 1.96;

}  // namespace

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("Rng::below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t draw = engine_();
  while (draw > limit) draw = engine_();
  return draw % bound;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t sample_size(std::size_t population) {
  if (population == 0) throw InvalidInputError("sample_size: population must be at least 1");
  const double p = 0.5;
  const double e = EngineConfig::kMargin;
  const double n0 = kZ95 * kZ95 * p * (1.0 - p) / (e * e);
  const double corrected = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  const auto n = static_cast<std::size_t>(std::ceil(corrected - 1e-9));
  return std::clamp<std::size_t>(n, 1, population);
}

std::size_t sample_size(std::size_t population, const SamplePolicy& policy) {
  if (const auto* ff = std::get_if<FixedFractionSampling>(&policy)) {
    if (population == 0) throw InvalidInputError("sample_size: population must be at least 1");
    const auto n = static_cast<std::size_t>(std::ceil(ff->fraction * static_cast<double>(population) - 1e-9));
    return std::clamp<std::size_t>(n, 1, population);
  }
  return sample_size(population);
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t n, std::uint64_t seed) {
  if (n > population) {
    throw InvalidInputError("cannot draw " + std::to_string(n) + " rows from a column of " +
                            std::to_string(population));
  }
  std::vector<std::size_t> out;
  out.reserve(n);
  if (n == population) {
    for (std::size_t i = 0; i < population; ++i) out.push_back(i);
    return out;
  }
  // Floyd's algorithm: n draws, each row equally likely to be chosen.
  Rng rng(seed);
  std::unordered_set<std::size_t> chosen;
  chosen.reserve(n * 2);
  for (std::size_t j = population - n; j < population; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(j) + 1));
    const std::size_t pick = chosen.contains(t) ? j : t;
    chosen.insert(pick);
    out.push_back(pick);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Sample draw_sample(std::span<const std::string> column, std::size_t n, std::uint64_t seed) {
  Sample sample;
  sample.population = column.size();
  sample.indices = sample_indices(column.size(), n, seed);
  sample.records.reserve(n);
  for (std::size_t idx : sample.indices) sample.records.push_back(column[idx]);
  return sample;
}

std::vector<Sample> draw_subsets(std::span<const std::string> column, std::size_t n, std::size_t k,
                                 std::uint64_t seed) {
  if (k == 0) throw InvalidInputError("draw_subsets: k must be at least 1");
  std::vector<Sample> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(draw_sample(column, n, seed + i));
  return out;
}

}  // namespace patternforge
