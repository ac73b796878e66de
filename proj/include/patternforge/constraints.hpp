#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "patternforge/pattern.hpp"
#include "patternforge/templates.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

struct StaticLen {
  std::size_t len;
  friend bool operator==(const StaticLen&, const StaticLen&) = default;
};
struct MinLen {
  std::size_t len_min;
  friend bool operator==(const MinLen&, const MinLen&) = default;
};
using LengthConstraint = std::variant<StaticLen, MinLen>;

struct StaticChars {
  std::u32string chars;  // sorted, non-empty
  friend bool operator==(const StaticChars&, const StaticChars&) = default;
};
struct StaticType {
  CharClass cls;
  friend bool operator==(const StaticType&, const StaticType&) = default;
};
using SlotConstraint = std::variant<StaticChars, StaticType>;

// Constraints for one token slot, strictest layer first. A range
// short-circuits the waterfall: length, slots and suffix stay empty.
struct TokenConstraint {
  std::optional<std::vector<std::string>> range;
  std::optional<LengthConstraint> length;
  std::vector<SlotConstraint> slots;
  std::optional<CharClass> suffix;  // only with MinLen
};

// Layer 1. Distinct-value frequencies are split by two-means with sentinels
// {1, 1/n_tr}; the high values form a range when their mass reaches r_cov.
std::optional<std::vector<std::string>> infer_token_range(std::span<const std::string> values,
                                                          CoverageRate r_cov, std::size_t n_tr);

// Layer 2. StaticLen when one length covers r_cov of the values, otherwise the
// minimum length.
LengthConstraint infer_token_length(std::span<const std::string> values, CoverageRate r_cov);

// Layers 3 and 4, one constraint per slot up to len (StaticLen) or len_min
// (MinLen).
std::vector<SlotConstraint> infer_slot_constraints(std::span<const std::string> values,
                                                   const LengthConstraint& length, CoverageRate r_cov,
                                                   std::size_t n_tr);

// Kinds seen past len_min, loosened with a star; nullopt when no value is
// longer than len_min.
std::optional<CharClass> infer_suffix(std::span<const std::string> values, std::size_t len_min);

// Runs the full waterfall for one token slot.
TokenConstraint infer_token_constraint(std::span<const std::string> values, CoverageRate r_cov,
                                       std::size_t n_tr);

PatternAST compose_pattern(const RawTemplate& tmpl, std::span<const TokenConstraint> constraints);

// The sub-pattern a single token contributes.
PatternAST compose_token(const TokenConstraint& constraint);

struct GeneratedPattern {
  PatternAST ast;
  std::string regex;
  std::string template_key;
  std::size_t cluster_size = 0;
  double sample_frequency = 0.0;  // cluster size / sample size
};

// One pattern per template cluster, in cluster order.
std::vector<GeneratedPattern> generate_patterns(std::span<const TemplateCluster> clusters,
                                                CoverageRate r_cov, std::size_t n_tr);

}  // namespace patternforge
