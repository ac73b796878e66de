#include "patternforge/pipeline.hpp"

#include <numeric>

#include "patternforge/errors.hpp"
#include "patternforge/sampler.hpp"
#include "patternforge/selector.hpp"

namespace patternforge {

namespace {

void require_rows(std::span<const std::string> column, std::string_view name) {
  if (column.empty()) throw InvalidInputError("column '" + std::string(name) + "' has no rows");
}

std::vector<TemplateCount> template_counts(const TemplateClustering& clustering) {
  std::vector<TemplateCount> out;
  out.reserve(clustering.clusters.size());
  for (const auto& cluster : clustering.clusters) out.push_back({cluster.key(), cluster.size()});
  return out;
}

void check_label_coverage(const LabelSet& labels, const Sample& sample) {
  std::vector<std::size_t> missing;
  for (std::size_t idx : sample.indices) {
    if (!labels.entries.contains(idx)) missing.push_back(idx);
  }
  if (!missing.empty()) {
    std::string msg = "labels missing for sampled rows:";
    for (std::size_t idx : missing) msg += " " + std::to_string(idx);
    throw InvalidInputError(msg);
  }
  if (labels.entries.size() != sample.size()) {
    throw InvalidInputError("labels include rows outside the drawn sample");
  }
}

}  // namespace

Sample main_sample(std::span<const std::string> column, const EngineConfig& cfg) {
  return draw_sample(column, sample_size(column.size(), cfg.sample_policy), cfg.seed);
}

ColumnReport profile_column(std::string_view name, std::span<const std::string> column, const EngineConfig& cfg) {
  cfg.validate();
  require_rows(column, name);
  const DecodedColumn decoded(column);
  const Sample sample = main_sample(column, cfg);
  auto pool = build_candidate_pool(sample, CoverageRate(1.0), ExactMatchingRate(1.0), decoded);

  ColumnReport report;
  report.column_name = std::string(name);
  report.mode = Mode::Profile;
  report.n = column.size();
  report.n_tr = sample.size();
  report.estimated_r_cov = 1.0;
  report.r_em = 1.0;
  report.templates = template_counts(pool.clustering);
  for (auto& candidate : pool.candidates) candidate.selected = true;
  report.patterns = std::move(pool.candidates);
  return report;
}

ColumnReport detect_column(std::string_view name, std::span<const std::string> column, const EngineConfig& cfg,
                           const LabelSet* labels) {
  cfg.validate();
  require_rows(column, name);
  const bool guided = cfg.mode == Mode::DetectGuided;
  if (guided && labels == nullptr) {
    throw MissingLabelsError("guided detection of column '" + std::string(name) + "' needs a label file");
  }

  const DecodedColumn decoded(column);
  const Sample sample = main_sample(column, cfg);

  double r_cov = 1.0;
  if (cfg.fixed_r_cov) {
    r_cov = *cfg.fixed_r_cov;
  } else if (guided) {
    check_label_coverage(*labels, sample);
    r_cov = estimate_guided(*labels).value();
  } else {
    r_cov = estimate_auto(column, decoded, cfg).value();
  }
  const double r_em = cfg.fixed_r_em.value_or(r_cov);

  auto pool = build_candidate_pool(sample, CoverageRate(r_cov), ExactMatchingRate(r_em), decoded);
  const auto selection = select(pool.candidates, column.size(), cfg.selection);

  ColumnReport report;
  report.column_name = std::string(name);
  report.mode = guided ? Mode::DetectGuided : Mode::DetectAuto;
  report.n = column.size();
  report.n_tr = sample.size();
  report.estimated_r_cov = r_cov;
  report.r_em = r_em;
  report.templates = template_counts(pool.clustering);
  for (std::size_t row = 0; row < column.size(); ++row) {
    bool healthy = false;
    for (std::size_t idx : selection.healthy) {
      if (pool.masks[idx][row]) {
        healthy = true;
        break;
      }
    }
    if (!healthy) report.anomalies.push_back({row, column[row]});
  }
  report.patterns = std::move(pool.candidates);
  return report;
}

EngineConfig config_for_column(const EngineConfig& cfg, std::size_t ordinal) {
  EngineConfig out = cfg;
  out.seed = cfg.seed + ordinal;
  return out;
}

std::vector<ColumnReport> run_table(const Table& table, const EngineConfig& cfg, const ColumnSelection& selection,
                                    const std::map<std::string, LabelSet>& labels) {
  std::vector<std::size_t> ordinals;
  if (selection.all) {
    ordinals.resize(table.header.size());
    std::iota(ordinals.begin(), ordinals.end(), std::size_t{0});
  } else {
    if (selection.names.empty()) throw InvalidInputError("no columns selected");
    for (const auto& name : selection.names) ordinals.push_back(table.column_index(name));
  }

  std::vector<ColumnReport> reports;
  reports.reserve(ordinals.size());
  for (std::size_t ordinal : ordinals) {
    const auto& name = table.header[ordinal];
    const auto column = table.column(ordinal);
    const auto column_cfg = config_for_column(cfg, ordinal);
    if (cfg.mode == Mode::Profile) {
      reports.push_back(profile_column(name, column, column_cfg));
    } else {
      const auto it = labels.find(name);
      reports.push_back(detect_column(name, column, column_cfg, it == labels.end() ? nullptr : &it->second));
    }
  }
  return reports;
}

}  // namespace patternforge
