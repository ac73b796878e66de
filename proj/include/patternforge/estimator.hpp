#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "patternforge/selector.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

enum class Label { Healthy, Anomalous };

// User labels for the sampled rows, keyed by row index.
struct LabelSet {
  std::map<std::size_t, Label> entries;
};

// Healthy share of the labels, never below 1 / |labels|.
CoverageRate estimate_guided(const LabelSet& labels);

// Unsupervised estimate: n_subset samples of size N_tr each yield a pattern
// pool built with r_cov = r_em = r_cov_init; after KMeans selection each
// pool's full-column coverage is measured and the coverages are averaged.
// Subset i is drawn with seed cfg.seed + 1 + i.
CoverageRate estimate_auto(std::span<const std::string> column, const EngineConfig& cfg);
CoverageRate estimate_auto(std::span<const std::string> column, const DecodedColumn& decoded,
                           const EngineConfig& cfg);

}  // namespace patternforge
