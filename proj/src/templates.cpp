#include "patternforge/templates.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "patternforge/chars.hpp"
#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

SegmentKind kind_of(char32_t c) {
  return classify_char(c) == CharKind::Symbol ? SegmentKind::Delimiter : SegmentKind::Token;
}

}  // namespace

std::vector<Segment> tokenize(std::string_view record) {
  std::vector<Segment> out;
  std::size_t pos = 0;
  while (pos < record.size()) {
    const std::size_t start = pos;
    const SegmentKind kind = kind_of(next_code_point(record, pos));
    std::size_t end = pos;
    while (end < record.size()) {
      std::size_t probe = end;
      if (kind_of(next_code_point(record, probe)) != kind) break;
      end = probe;
    }
    out.push_back(Segment{kind, std::string(record.substr(start, end - start))});
    pos = end;
  }
  return out;
}

std::size_t delimiter_count(std::string_view record) {
  const auto segments = tokenize(record);
  return static_cast<std::size_t>(std::count_if(
      segments.begin(), segments.end(), [](const Segment& s) { return s.kind == SegmentKind::Delimiter; }));
}

std::size_t max_delimiters(std::span<const std::size_t> counts, ExactMatchingRate r_em) {
  if (counts.empty()) throw InvalidInputError("max_delimiters: no delimiter counts");
  const double scaled = static_cast<double>(counts.size()) * r_em.value();
  auto k = static_cast<std::size_t>(std::floor(scaled + 0.5 + 1e-9));
  k = std::clamp<std::size_t>(k, 1, counts.size());
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
  return sorted[k - 1];
}

std::string RawTemplate::key() const {
  std::string out;
  for (const auto& part : parts) {
    if (const auto* delim = std::get_if<Delimiter>(&part)) {
      out += delim->text;
    } else {
      out += 'T';
    }
  }
  return out;
}

std::size_t RawTemplate::token_count() const {
  return static_cast<std::size_t>(std::count_if(
      parts.begin(), parts.end(), [](const TemplatePart& p) { return std::holds_alternative<TokenSlot>(p); }));
}

std::size_t RawTemplate::delimiter_count() const { return parts.size() - token_count(); }

TemplatedRecord build_template(std::string_view record, std::size_t max_d) {
  TemplatedRecord out;
  const auto segments = tokenize(record);
  std::size_t delimiters = 0;
  std::size_t offset = 0;
  for (const auto& segment : segments) {
    if (delimiters == max_d) {
      // Budget exhausted: everything from here on is a single token.
      out.tmpl.parts.emplace_back(TokenSlot{});
      out.tokens.emplace_back(record.substr(offset));
      return out;
    }
    if (segment.kind == SegmentKind::Delimiter) {
      out.tmpl.parts.emplace_back(Delimiter{segment.text});
      ++delimiters;
    } else {
      out.tmpl.parts.emplace_back(TokenSlot{});
      out.tokens.push_back(segment.text);
    }
    offset += segment.text.size();
  }
  return out;
}

std::string reconstruct(const RawTemplate& tmpl, std::span<const std::string> tokens) {
  std::string out;
  std::size_t next_token = 0;
  for (const auto& part : tmpl.parts) {
    if (const auto* delim = std::get_if<Delimiter>(&part)) {
      out += delim->text;
    } else {
      if (next_token >= tokens.size()) throw InternalError("reconstruct: too few token contents");
      out += tokens[next_token++];
    }
  }
  if (next_token != tokens.size()) throw InternalError("reconstruct: too many token contents");
  return out;
}

std::vector<std::string> TemplateCluster::token_column(std::size_t slot) const {
  std::vector<std::string> out;
  out.reserve(members.size());
  for (const auto& member : members) out.push_back(member.tokens.at(slot));
  return out;
}

TemplateClustering cluster_templates(const Sample& sample, ExactMatchingRate r_em) {
  if (sample.size() == 0) throw InvalidInputError("cluster_templates: empty sample");
  std::vector<std::size_t> counts;
  counts.reserve(sample.size());
  for (const auto& record : sample.records) counts.push_back(delimiter_count(record));

  TemplateClustering out;
  out.max_d = max_delimiters(counts, r_em);

  std::map<std::string, TemplateCluster> by_key;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    auto templated = build_template(sample.records[i], out.max_d);
    auto& cluster = by_key[templated.tmpl.key()];
    if (cluster.members.empty()) cluster.tmpl = templated.tmpl;
    cluster.members.push_back(ClusterMember{sample.indices[i], sample.records[i], std::move(templated.tokens)});
  }
  out.clusters.reserve(by_key.size());
  for (auto& [key, cluster] : by_key) out.clusters.push_back(std::move(cluster));
  std::stable_sort(out.clusters.begin(), out.clusters.end(),
                   [](const TemplateCluster& a, const TemplateCluster& b) { return a.size() > b.size(); });
  return out;
}

}  // namespace patternforge
