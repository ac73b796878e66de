#include "patternforge/selector.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "patternforge/cluster1d.hpp"
#include "patternforge/constraints.hpp"
#include "patternforge/errors.hpp"

namespace patternforge {

DecodedColumn::DecodedColumn(std::span<const std::string> column) {
  rows_.reserve(column.size());
  for (const auto& record : column) rows_.push_back(decode_utf8(record));
}

std::vector<bool> DecodedColumn::match_mask(const PatternAST& ast) const {
  const Matcher matcher(ast);
  std::vector<bool> mask(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) mask[i] = matcher.matches(rows_[i]);
  return mask;
}

double matching_rate(const std::vector<bool>& mask) {
  if (mask.empty()) throw InvalidInputError("matching_rate: empty column");
  const auto hits = std::count(mask.begin(), mask.end(), true);
  return static_cast<double>(hits) / static_cast<double>(mask.size());
}

double matching_rate(const PatternAST& ast, std::span<const std::string> column) {
  if (column.empty()) throw InvalidInputError("matching_rate: empty column");
  return matching_rate(DecodedColumn(column).match_mask(ast));
}

Selection select(std::span<CandidatePattern> patterns, std::size_t population, const SelectionPolicy& policy) {
  if (patterns.empty()) throw InvalidInputError("select: no candidate patterns");
  if (population == 0) throw InvalidInputError("select: empty column");

  std::vector<bool> keep(patterns.size(), false);
  if (std::holds_alternative<NoSelection>(policy)) {
    std::fill(keep.begin(), keep.end(), true);
  } else if (const auto* st = std::get_if<StaticThreshold>(&policy)) {
    for (std::size_t i = 0; i < patterns.size(); ++i) keep[i] = patterns[i].column_matching_rate > st->threshold;
  } else {
    std::vector<std::pair<double, std::size_t>> rates;
    rates.reserve(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) rates.emplace_back(patterns[i].column_matching_rate, i);
    const std::array<double, 1> noise{1.0 / static_cast<double>(population)};
    const auto split = split_two(std::move(rates), noise);
    for (const auto& [rate, index] : split.high) keep[index] = true;
    // Every rate fell below the noise point: keep the best ones.
    if (split.high.empty()) {
      double best = 0.0;
      for (const auto& p : patterns) best = std::max(best, p.column_matching_rate);
      for (std::size_t i = 0; i < patterns.size(); ++i) keep[i] = patterns[i].column_matching_rate == best;
    }
  }

  Selection out;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    patterns[i].selected = keep[i];
    (keep[i] ? out.healthy : out.dropped).push_back(i);
  }
  return out;
}

CandidatePool build_candidate_pool(const Sample& sample, CoverageRate r_cov, ExactMatchingRate r_em,
                                   const DecodedColumn& column) {
  CandidatePool pool;
  pool.clustering = cluster_templates(sample, r_em);
  auto generated = generate_patterns(pool.clustering.clusters, r_cov, sample.size());

  std::map<std::string, std::size_t> by_regex;
  for (auto& pattern : generated) {
    if (auto it = by_regex.find(pattern.regex); it != by_regex.end()) {
      auto& kept = pool.candidates[it->second];
      if (pattern.sample_frequency > kept.sample_frequency) {
        kept.sample_frequency = pattern.sample_frequency;
        kept.template_key = pattern.template_key;
      }
      continue;
    }
    by_regex.emplace(pattern.regex, pool.candidates.size());
    CandidatePattern candidate;
    candidate.ast = std::move(pattern.ast);
    candidate.regex = std::move(pattern.regex);
    candidate.template_key = std::move(pattern.template_key);
    candidate.sample_frequency = pattern.sample_frequency;
    pool.candidates.push_back(std::move(candidate));
  }

  pool.masks.reserve(pool.candidates.size());
  for (auto& candidate : pool.candidates) {
    pool.masks.push_back(column.match_mask(candidate.ast));
    candidate.column_matching_rate = matching_rate(pool.masks.back());
  }
  return pool;
}

double pool_coverage(const CandidatePool& pool, std::span<const std::size_t> selected) {
  if (pool.masks.empty()) return 0.0;
  const std::size_t rows = pool.masks.front().size();
  if (rows == 0) return 0.0;
  std::size_t covered = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t idx : selected) {
      if (pool.masks.at(idx)[r]) {
        ++covered;
        break;
      }
    }
  }
  return static_cast<double>(covered) / static_cast<double>(rows);
}

}  // namespace patternforge
