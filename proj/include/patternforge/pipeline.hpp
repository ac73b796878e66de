#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/estimator.hpp"
#include "patternforge/table.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

// Sampling, templates at r_em = 1 and patterns at r_cov = 1. Every pattern is
// reported as selected; no anomalies.
ColumnReport profile_column(std::string_view name, std::span<const std::string> column, const EngineConfig& cfg);

// The full five-step run. r_cov comes from cfg.fixed_r_cov, the labels
// (DetectGuided) or the unsupervised estimator; r_em follows r_cov unless
// cfg.fixed_r_em is set. The main sample is drawn with cfg.seed, so it is the
// same sample a guided user labelled.
ColumnReport detect_column(std::string_view name, std::span<const std::string> column, const EngineConfig& cfg,
                           const LabelSet* labels = nullptr);

// The sample the main run of profile_column/detect_column draws.
Sample main_sample(std::span<const std::string> column, const EngineConfig& cfg);

struct ColumnSelection {
  bool all = false;
  std::vector<std::string> names;
};

// Column i (header position) runs with seed cfg.seed + i.
EngineConfig config_for_column(const EngineConfig& cfg, std::size_t ordinal);

// One report per selected column, in selection order (header order for all).
std::vector<ColumnReport> run_table(const Table& table, const EngineConfig& cfg, const ColumnSelection& selection,
                                    const std::map<std::string, LabelSet>& labels = {});

}  // namespace patternforge
