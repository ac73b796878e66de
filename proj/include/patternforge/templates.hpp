#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "patternforge/sampler.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

enum class SegmentKind { Token, Delimiter };

// A maximal run of non-symbol (token) or symbol (delimiter) characters.
struct Segment {
  SegmentKind kind;
  std::string text;

  friend bool operator==(const Segment&, const Segment&) = default;
};

std::vector<Segment> tokenize(std::string_view record);

std::size_t delimiter_count(std::string_view record);

// Max-D: the k-th smallest delimiter count with k = round(|counts| * r_em)
// (half up) clamped to [1, |counts|].
std::size_t max_delimiters(std::span<const std::size_t> counts, ExactMatchingRate r_em);

struct TokenSlot {
  friend bool operator==(const TokenSlot&, const TokenSlot&) = default;
};
struct Delimiter {
  std::string text;
  friend bool operator==(const Delimiter&, const Delimiter&) = default;
};
using TemplatePart = std::variant<TokenSlot, Delimiter>;

// Token/delimiter skeleton of a record, e.g. "T-T-T:T:T".
struct RawTemplate {
  std::vector<TemplatePart> parts;

  // Tokens print as "T", delimiters verbatim.
  std::string key() const;
  std::size_t token_count() const;
  std::size_t delimiter_count() const;

  friend bool operator==(const RawTemplate&, const RawTemplate&) = default;
};

struct TemplatedRecord {
  RawTemplate tmpl;
  std::vector<std::string> tokens;
};

// Splits left to right; after `max_d` delimiters the rest of the record
// becomes one final token.
TemplatedRecord build_template(std::string_view record, std::size_t max_d);

// Interleaves token contents with the template's delimiters.
std::string reconstruct(const RawTemplate& tmpl, std::span<const std::string> tokens);

struct ClusterMember {
  std::size_t row = 0;
  std::string record;
  std::vector<std::string> tokens;  // aligned to the template's token slots
};

struct TemplateCluster {
  RawTemplate tmpl;
  std::vector<ClusterMember> members;

  std::size_t size() const noexcept { return members.size(); }
  std::string key() const { return tmpl.key(); }
  // Contents of token slot `slot` across all members.
  std::vector<std::string> token_column(std::size_t slot) const;
};

struct TemplateClustering {
  std::size_t max_d = 0;
  std::vector<TemplateCluster> clusters;  // descending size, then key
};

TemplateClustering cluster_templates(const Sample& sample, ExactMatchingRate r_em);

}  // namespace patternforge
