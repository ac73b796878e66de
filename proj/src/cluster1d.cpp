#include "patternforge/cluster1d.hpp"

#include <limits>

namespace patternforge {

namespace {

// Running mean / sum of squared deviations (Welford).
struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double sse = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    sse += delta * (x - mean);
  }
};

constexpr double kTieTolerance = 1e-12;

}  // namespace

std::size_t two_means_cut(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n < 2) return 0;

  // prefix_sse[c]: within-cluster SSE of sorted[0, c); suffix_sse[c]: of sorted[c, n).
  std::vector<double> prefix_sse(n + 1, 0.0);
  std::vector<double> suffix_sse(n + 1, 0.0);
  Moments forward;
  for (std::size_t i = 0; i < n; ++i) {
    forward.add(sorted[i]);
    prefix_sse[i + 1] = forward.sse;
  }
  Moments backward;
  for (std::size_t i = n; i-- > 0;) {
    backward.add(sorted[i]);
    suffix_sse[i] = backward.sse;
  }

  std::size_t best_cut = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t cut = 1; cut < n; ++cut) {
    if (!(sorted[cut - 1] < sorted[cut])) continue;
    const double total = prefix_sse[cut] + suffix_sse[cut];
    // Scanning cuts left to right grows the low cluster, so only a strictly
    // better cut may replace the current one.
    if (total < best - kTieTolerance) {
      best = total;
      best_cut = cut;
    }
  }
  return best_cut;
}

}  // namespace patternforge
