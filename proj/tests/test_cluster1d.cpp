#include <doctest.h>

#include <algorithm>

#include "patternforge/cluster1d.hpp"
#include "support.hpp"

using namespace patternforge;

namespace {

using Split = TwoSplit<int>;

Split split(std::vector<double> values, std::vector<double> sentinels) {
  std::vector<std::pair<double, int>> tagged;
  for (std::size_t i = 0; i < values.size(); ++i) tagged.emplace_back(values[i], static_cast<int>(i));
  return split_two<int>(tagged, sentinels);
}

std::vector<double> values_of(const std::vector<std::pair<double, int>>& v) {
  std::vector<double> out;
  for (const auto& p : v) out.push_back(p.first);
  return out;
}

}  // namespace

TEST_CASE("token range examples") {
  const auto both = split({1.0, 1.0}, {1.0, 0.2});
  CHECK(both.high.size() == 2);
  CHECK(both.low.empty());

  const auto five = split({0.2, 0.2, 0.2, 0.2, 0.2}, {1.0, 1.0 / 6.0});
  CHECK(five.high.empty());
  CHECK(five.low.size() == 5);

  const auto skew = split({0.9, 0.05, 0.05}, {1.0 / 1000.0});
  REQUIRE(skew.high.size() == 1);
  CHECK(skew.high[0].first == 0.9);
  CHECK(skew.high[0].second == 0);
}

TEST_CASE("high mass") {
  Split s;
  CHECK(high_mass(s) == 0.0);
  s.high = {{1.0, 0}};
  CHECK(high_mass(s) == 1.0);
  s.high = {{0.6, 0}, {0.3, 1}};
  CHECK(high_mass(s) == doctest::Approx(0.9));
}

TEST_CASE("single distinct value is all high") {
  const auto s = split({0.4, 0.4, 0.4}, {});
  CHECK(s.high.size() == 3);
  CHECK(two_means_cut(std::vector<double>{0.5}) == 0);
}

TEST_CASE("empty input is rejected") {
  CHECK_THROWS_AS(split({}, {1.0}), InvalidInputError);
}

TEST_CASE("exact split equals exhaustive minimisation") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.below(12);
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse grid so ties and duplicates are common.
      values.push_back(rng.below(3) == 0 ? static_cast<double>(rng.below(5)) / 4.0 : rng.unit());
    }
    const auto s = split(values, {});
    const auto high = values_of(s.high);
    const auto low = values_of(s.low);
    INFO("trial " << trial);
    CHECK(high.size() + low.size() == n);
    CHECK_FALSE(high.empty());
    if (!low.empty()) CHECK(*std::max_element(low.begin(), low.end()) < *std::min_element(high.begin(), high.end()));
    CHECK(pftest::sse(high) + pftest::sse(low) == doctest::Approx(pftest::min_partition_cost(values)).epsilon(1e-9));
  }
}

TEST_CASE("ties go to the larger high cluster") {
  // {0, 1}: both one-vs-one cuts are the only option; {0,0,1,1} symmetric.
  const auto s = split({0.0, 0.0, 1.0, 1.0}, {});
  CHECK(s.high.size() == 2);
  // Symmetric three points: cutting at 0.5 or 1.0 costs the same.
  const auto t = split({0.0, 0.5, 1.0}, {});
  CHECK(t.high.size() == 2);
}

TEST_CASE("order invariance and determinism") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values;
    const std::size_t n = 1 + rng.below(10);
    for (std::size_t i = 0; i < n; ++i) values.push_back(static_cast<double>(rng.below(6)) / 5.0);
    const auto base = split(values, {1.0, 0.1});
    std::vector<double> shuffled = values;
    for (std::size_t i = shuffled.size(); i > 1; --i) std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    const auto other = split(shuffled, {1.0, 0.1});
    auto a = values_of(base.high);
    auto b = values_of(other.high);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(base.boundary == other.boundary);
  }
}

TEST_CASE("payloads travel with values and sentinels are dropped") {
  const auto s = split({0.7, 0.01, 0.25}, {1.0, 0.01});
  CHECK(s.high.size() + s.low.size() == 3);
  for (const auto& [v, tag] : s.high) CHECK(v == (tag == 0 ? 0.7 : tag == 1 ? 0.01 : 0.25));
  for (const auto& [v, tag] : s.low) CHECK(v == (tag == 0 ? 0.7 : tag == 1 ? 0.01 : 0.25));
}
