#include "patternforge/constraints.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "patternforge/chars.hpp"
#include "patternforge/cluster1d.hpp"
#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

// Frequencies are ratios of small counts; absorb rounding in sums like 0.1 + 0.7.
bool reaches(double mass, CoverageRate r_cov) { return mass + 1e-9 >= r_cov.value(); }

std::array<double, 2> sentinels_for(std::size_t n_tr) {
  if (n_tr == 0) throw InvalidInputError("sample size must be at least 1");
  return {1.0, 1.0 / static_cast<double>(n_tr)};
}

std::vector<std::u32string> decode_all(std::span<const std::string> values) {
  std::vector<std::u32string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(decode_utf8(v));
  return out;
}

std::size_t slot_count(const LengthConstraint& length) {
  if (const auto* fixed = std::get_if<StaticLen>(&length)) return fixed->len;
  return std::get<MinLen>(length).len_min;
}

SlotConstraint infer_slot(const std::vector<std::u32string>& values, std::size_t slot, CoverageRate r_cov,
                          const std::array<double, 2>& sentinels) {
  const double size = static_cast<double>(values.size());
  std::map<char32_t, std::size_t> char_counts;
  std::array<std::size_t, kCharKindCount> kind_counts{};
  for (const auto& v : values) {
    if (v.size() <= slot) continue;
    ++char_counts[v[slot]];
    ++kind_counts[static_cast<std::size_t>(classify_char(v[slot]))];
  }

  if (!char_counts.empty()) {
    std::vector<std::pair<double, char32_t>> freqs;
    freqs.reserve(char_counts.size());
    for (const auto& [c, count] : char_counts) freqs.emplace_back(static_cast<double>(count) / size, c);
    const auto split = split_two(std::move(freqs), sentinels);
    if (!split.high.empty() && reaches(high_mass(split), r_cov)) {
      std::u32string chars;
      for (const auto& [freq, c] : split.high) chars.push_back(c);
      std::sort(chars.begin(), chars.end());
      return StaticChars{std::move(chars)};
    }
  }

  // Static type: rank kinds by frequency and take them until r_cov is covered.
  std::array<std::size_t, kCharKindCount> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return kind_counts[a] > kind_counts[b]; });
  std::array<bool, kCharKindCount> chosen{};
  double cumulative = 0.0;
  for (std::size_t kind : order) {
    if (kind_counts[kind] == 0) break;
    chosen[kind] = true;
    cumulative += static_cast<double>(kind_counts[kind]) / size;
    if (reaches(cumulative, r_cov)) break;
  }
  const auto idx = [](CharKind k) { return static_cast<std::size_t>(k); };
  return StaticType{CharClass::from_kinds(chosen[idx(CharKind::Digit)], chosen[idx(CharKind::Upper)],
                                          chosen[idx(CharKind::Lower)], chosen[idx(CharKind::Symbol)])};
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

class AstBuilder {
 public:
  void literal(std::string_view text) {
    if (!elements_.empty()) {
      if (auto* last = std::get_if<Literal>(&elements_.back())) {
        last->text += text;
        return;
      }
    }
    elements_.emplace_back(Literal{std::string(text)});
  }

  void one_of(CharClass cls) {
    if (!elements_.empty()) {
      if (auto* last = std::get_if<ClassRun>(&elements_.back())) {
        if (auto* exact = std::get_if<Exactly>(&last->quant); exact && last->cls == cls) {
          ++exact->count;
          return;
        }
      }
    }
    elements_.emplace_back(ClassRun{cls, Exactly{1}});
  }

  void any_number_of(CharClass cls) { elements_.emplace_back(ClassRun{cls, Star{}}); }
  void set(std::u32string chars) { elements_.emplace_back(CharSet{std::move(chars)}); }
  void alternation(std::vector<std::string> choices) { elements_.emplace_back(Alternation{std::move(choices)}); }

  void token(const TokenConstraint& c) {
    if (c.range) {
      alternation(*c.range);
      return;
    }
    for (const auto& slot : c.slots) {
      std::visit(Overloaded{
                     [&](const StaticChars& sc) {
                       if (sc.chars.size() == 1) {
                         literal(encode_utf8(sc.chars));
                       } else {
                         set(sc.chars);
                       }
                     },
                     [&](const StaticType& st) { one_of(st.cls); },
                 },
                 slot);
    }
    if (c.suffix) any_number_of(*c.suffix);
  }

  PatternAST finish() && { return PatternAST{std::move(elements_)}; }

 private:
  std::vector<PatternElement> elements_;
};

}  // namespace

std::optional<std::vector<std::string>> infer_token_range(std::span<const std::string> values,
                                                          CoverageRate r_cov, std::size_t n_tr) {
  if (values.empty()) throw InvalidInputError("infer_token_range: no token values");
  const auto sentinels = sentinels_for(n_tr);
  std::map<std::string, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  const double size = static_cast<double>(values.size());
  std::vector<std::pair<double, std::string>> freqs;
  freqs.reserve(counts.size());
  for (const auto& [value, count] : counts) freqs.emplace_back(static_cast<double>(count) / size, value);
  const auto split = split_two(std::move(freqs), sentinels);
  if (split.high.empty() || !reaches(high_mass(split), r_cov)) return std::nullopt;
  std::vector<std::string> range;
  range.reserve(split.high.size());
  for (const auto& [freq, value] : split.high) range.push_back(value);
  std::sort(range.begin(), range.end());
  return range;
}

LengthConstraint infer_token_length(std::span<const std::string> values, CoverageRate r_cov) {
  if (values.empty()) throw InvalidInputError("infer_token_length: no token values");
  std::map<std::size_t, std::size_t> counts;
  for (const auto& v : values) ++counts[decode_utf8(v).size()];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  const double freq = static_cast<double>(best->second) / static_cast<double>(values.size());
  if (reaches(freq, r_cov)) return StaticLen{best->first};
  return MinLen{counts.begin()->first};
}

std::vector<SlotConstraint> infer_slot_constraints(std::span<const std::string> values,
                                                   const LengthConstraint& length, CoverageRate r_cov,
                                                   std::size_t n_tr) {
  if (values.empty()) throw InvalidInputError("infer_slot_constraints: no token values");
  const auto sentinels = sentinels_for(n_tr);
  const auto decoded = decode_all(values);
  std::vector<SlotConstraint> out;
  const std::size_t slots = slot_count(length);
  out.reserve(slots);
  for (std::size_t k = 0; k < slots; ++k) out.push_back(infer_slot(decoded, k, r_cov, sentinels));
  return out;
}

std::optional<CharClass> infer_suffix(std::span<const std::string> values, std::size_t len_min) {
  std::array<bool, kCharKindCount> seen{};
  bool any = false;
  for (const auto& v : values) {
    const auto decoded = decode_utf8(v);
    for (std::size_t i = len_min; i < decoded.size(); ++i) {
      seen[static_cast<std::size_t>(classify_char(decoded[i]))] = true;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return CharClass::from_kinds(seen[0], seen[1], seen[2], seen[3]);
}

TokenConstraint infer_token_constraint(std::span<const std::string> values, CoverageRate r_cov,
                                       std::size_t n_tr) {
  TokenConstraint out;
  out.range = infer_token_range(values, r_cov, n_tr);
  if (out.range) return out;
  out.length = infer_token_length(values, r_cov);
  out.slots = infer_slot_constraints(values, *out.length, r_cov, n_tr);
  if (const auto* min_len = std::get_if<MinLen>(&*out.length)) out.suffix = infer_suffix(values, min_len->len_min);
  return out;
}

PatternAST compose_pattern(const RawTemplate& tmpl, std::span<const TokenConstraint> constraints) {
  if (constraints.size() != tmpl.token_count()) {
    throw InternalError("compose_pattern: " + std::to_string(constraints.size()) + " constraints for " +
                        std::to_string(tmpl.token_count()) + " token slots");
  }
  AstBuilder builder;
  std::size_t next = 0;
  for (const auto& part : tmpl.parts) {
    if (const auto* delim = std::get_if<Delimiter>(&part)) {
      builder.literal(delim->text);
    } else {
      builder.token(constraints[next++]);
    }
  }
  return std::move(builder).finish();
}

PatternAST compose_token(const TokenConstraint& constraint) {
  AstBuilder builder;
  builder.token(constraint);
  return std::move(builder).finish();
}

std::vector<GeneratedPattern> generate_patterns(std::span<const TemplateCluster> clusters, CoverageRate r_cov,
                                                std::size_t n_tr) {
  std::vector<GeneratedPattern> out;
  out.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    std::vector<TokenConstraint> constraints;
    const std::size_t tokens = cluster.tmpl.token_count();
    constraints.reserve(tokens);
    for (std::size_t slot = 0; slot < tokens; ++slot) {
      constraints.push_back(infer_token_constraint(cluster.token_column(slot), r_cov, n_tr));
    }
    GeneratedPattern pattern;
    pattern.ast = compose_pattern(cluster.tmpl, constraints);
    pattern.regex = render_regex(pattern.ast);
    pattern.template_key = cluster.key();
    pattern.cluster_size = cluster.size();
    pattern.sample_frequency = static_cast<double>(cluster.size()) / static_cast<double>(n_tr);
    out.push_back(std::move(pattern));
  }
  return out;
}

}  // namespace patternforge
