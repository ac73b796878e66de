#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "patternforge/pattern.hpp"
#include "patternforge/sampler.hpp"
#include "patternforge/templates.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

// A column decoded once so that many patterns can be matched against it.
class DecodedColumn {
 public:
  explicit DecodedColumn(std::span<const std::string> column);

  std::size_t size() const noexcept { return rows_.size(); }
  const std::u32string& operator[](std::size_t i) const { return rows_[i]; }

  // One flag per row: does the row fully match `ast`?
  std::vector<bool> match_mask(const PatternAST& ast) const;

 private:
  std::vector<std::u32string> rows_;
};

double matching_rate(const PatternAST& ast, std::span<const std::string> column);
double matching_rate(const std::vector<bool>& mask);

struct Selection {
  std::vector<std::size_t> healthy;  // indices into the candidate list
  std::vector<std::size_t> dropped;
};

// Partitions candidates by their column_matching_rate and writes the selected
// flags back. KMeans splits the rates with a 1/population sentinel so at least
// one pattern always survives.
Selection select(std::span<CandidatePattern> patterns, std::size_t population, const SelectionPolicy& policy);

// Candidates generated from one sample, with full-column match masks.
struct CandidatePool {
  TemplateClustering clustering;
  std::vector<CandidatePattern> candidates;
  std::vector<std::vector<bool>> masks;  // aligned with candidates
};

// Template clustering, pattern generation and full-column rates for one
// sample. Patterns that render identically are merged, keeping the highest
// sample frequency.
CandidatePool build_candidate_pool(const Sample& sample, CoverageRate r_cov, ExactMatchingRate r_em,
                                   const DecodedColumn& column);

// Fraction of rows matched by at least one of the selected candidates.
double pool_coverage(const CandidatePool& pool, std::span<const std::size_t> selected);

}  // namespace patternforge
