#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#include "patternforge/errors.hpp"
#include "patternforge/sampler.hpp"

using namespace patternforge;

namespace {

// Cochran with the finite-population correction, computed independently.
std::size_t cochran(std::size_t n) {
  const double n0 = 1.96 * 1.96 * 0.25 / (0.05 * 0.05);
  const double corrected = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(n));
  return std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(corrected - 1e-9)));
}

std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = "r" + std::to_string(i);
  return out;
}

}  // namespace

TEST_CASE("sample size examples") {
  CHECK(sample_size(100000) == 383);
  CHECK(sample_size(200) == 132);
  CHECK(sample_size(50) == 45);
  CHECK(sample_size(2) == 2);
  CHECK(sample_size(10000) == 370);
  CHECK(sample_size(1000000000) == 385);
  CHECK(sample_size(1) == 1);
  CHECK_THROWS_AS(sample_size(0), InvalidInputError);
}

TEST_CASE("sample size matches the formula, is monotone and bounded") {
  std::size_t previous = 0;
  for (std::size_t n = 1; n <= 20000; n += (n < 2000 ? 1 : 37)) {
    const std::size_t s = sample_size(n);
    CHECK(s == cochran(n));
    CHECK(s >= previous);
    CHECK(s <= 385);
    previous = s;
  }
}

TEST_CASE("fixed fraction policy") {
  CHECK(sample_size(1000, FixedFractionSampling{0.1}) == 100);
  CHECK(sample_size(1000, FixedFractionSampling{1.0}) == 1000);
  CHECK(sample_size(3, FixedFractionSampling{0.01}) == 1);
  CHECK(sample_size(1000, ZScoreSampling{}) == sample_size(1000));
}

TEST_CASE("draw sample examples") {
  const auto ten = numbered(10);
  const auto all = draw_sample(ten, 10, 123);
  CHECK(all.size() == 10);
  CHECK(all.population == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(all.indices[i] == i);
    CHECK(all.records[i] == ten[i]);
  }

  const auto thousand = numbered(1000);
  const auto a = draw_sample(thousand, 278, 7);
  const auto b = draw_sample(thousand, 278, 7);
  CHECK(a.indices == b.indices);
  CHECK(a.records == b.records);
  CHECK_THROWS_AS(draw_sample(ten, 11, 1), InvalidInputError);
}

TEST_CASE("different seeds give different samples") {
  const auto thousand = numbered(1000);
  int identical = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    if (draw_sample(thousand, 278, 2 * s).indices == draw_sample(thousand, 278, 2 * s + 1).indices) ++identical;
  }
  CHECK(identical == 0);
}

TEST_CASE("indices are distinct, sorted and in range") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(500);
    const std::size_t k = rng.below(n + 1);
    const auto idx = sample_indices(n, k, rng.below(1u << 30));
    REQUIRE(idx.size() == k);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == k);
    if (!idx.empty()) CHECK(idx.back() < n);
  }
}

TEST_CASE("draws are roughly uniform") {
  std::vector<int> hits(20, 0);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    for (std::size_t i : sample_indices(20, 5, s)) ++hits[i];
  }
  // 2000 draws of 5 out of 20: 500 expected per row.
  for (int h : hits) CHECK(std::abs(h - 500) < 100);
}

TEST_CASE("subsets") {
  const auto ten = numbered(10);
  const auto full = draw_subsets(ten, 10, 5, 3);
  REQUIRE(full.size() == 5);
  for (const auto& s : full) CHECK(s.indices == full.front().indices);

  const auto one = draw_subsets(numbered(100), 30, 1, 4);
  REQUIRE(one.size() == 1);
  CHECK(one[0].indices == draw_sample(numbered(100), 30, 4).indices);

  const auto column = numbered(10000);
  const auto five = draw_subsets(column, sample_size(column.size()), 5, 9);
  REQUIRE(five.size() == 5);
  for (std::size_t i = 0; i < five.size(); ++i) {
    CHECK(five[i].size() == 370);
    CHECK(five[i].indices == draw_sample(column, 370, 9 + i).indices);
  }
}

TEST_CASE("rng bounds") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.below(7) < 7);
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
