#include "patternforge/estimator.hpp"

#include <algorithm>

#include "patternforge/errors.hpp"
#include "patternforge/sampler.hpp"

namespace patternforge {

CoverageRate estimate_guided(const LabelSet& labels) {
  if (labels.entries.empty()) throw InvalidInputError("estimate_guided: empty label set");
  const auto healthy = std::count_if(labels.entries.begin(), labels.entries.end(),
                                     [](const auto& entry) { return entry.second == Label::Healthy; });
  const double total = static_cast<double>(labels.entries.size());
  return CoverageRate(std::max(static_cast<double>(healthy), 1.0) / total);
}

CoverageRate estimate_auto(std::span<const std::string> column, const EngineConfig& cfg) {
  return estimate_auto(column, DecodedColumn(column), cfg);
}

CoverageRate estimate_auto(std::span<const std::string> column, const DecodedColumn& decoded,
                           const EngineConfig& cfg) {
  cfg.validate();
  if (column.empty()) throw InvalidInputError("estimate_auto: empty column");
  const std::size_t n_tr = sample_size(column.size(), cfg.sample_policy);
  const CoverageRate r_cov_init(cfg.r_cov_init);
  const ExactMatchingRate r_em_init(cfg.r_cov_init);

  const auto subsets = draw_subsets(column, n_tr, cfg.n_subset, cfg.seed + 1);
  double total = 0.0;
  for (const auto& subset : subsets) {
    auto pool = build_candidate_pool(subset, r_cov_init, r_em_init, decoded);
    const auto selection = select(pool.candidates, column.size(), KMeansSelection{});
    total += pool_coverage(pool, selection.healthy);
  }
  const double mean = total / static_cast<double>(subsets.size());
  const double floor = 1.0 / static_cast<double>(column.size());
  return CoverageRate(std::clamp(mean, floor, 1.0));
}

}  // namespace patternforge
