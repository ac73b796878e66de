#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "patternforge/pattern.hpp"

namespace patternforge {

// Estimated fraction of healthy values in a column; every constraint must
// cover at least this share of its cluster.
class CoverageRate {
 public:
  explicit CoverageRate(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

// Fraction of sampled records that must be split at every delimiter.
class ExactMatchingRate {
 public:
  explicit ExactMatchingRate(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class Mode { Profile, DetectAuto, DetectGuided };

const char* to_string(Mode mode) noexcept;

struct KMeansSelection {};
struct StaticThreshold {
  double threshold = 0.01;
};
struct NoSelection {};
using SelectionPolicy = std::variant<KMeansSelection, StaticThreshold, NoSelection>;

struct ZScoreSampling {};
struct FixedFractionSampling {
  double fraction = 1.0;
};
using SamplePolicy = std::variant<ZScoreSampling, FixedFractionSampling>;

struct EngineConfig {
  static constexpr double kConfidence = 0.95;
  static constexpr double kMargin = 0.05;

  Mode mode = Mode::DetectAuto;
  double r_cov_init = 0.95;
  std::size_t n_subset = 5;
  std::uint64_t seed = 0;

  // Ablation switches.
  std::optional<double> fixed_r_cov;
  std::optional<double> fixed_r_em;
  SelectionPolicy selection = KMeansSelection{};
  SamplePolicy sample_policy = ZScoreSampling{};

  // Throws InvalidInputError when a fraction lies outside (0,1] or n_subset is 0.
  void validate() const;
};

struct CandidatePattern {
  PatternAST ast;
  std::string regex;
  std::string template_key;
  double sample_frequency = 0.0;
  double column_matching_rate = 0.0;
  bool selected = false;
};

struct TemplateCount {
  std::string key;
  std::size_t count = 0;
};

struct AnomalyRow {
  std::size_t row = 0;
  std::string value;
};

struct DetectionMetrics {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the corresponding ratio had a zero denominator.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

struct ColumnReport {
  std::string column_name;
  std::size_t n = 0;
  std::size_t n_tr = 0;
  Mode mode = Mode::Profile;
  double estimated_r_cov = 1.0;
  double r_em = 1.0;
  std::vector<TemplateCount> templates;
  std::vector<CandidatePattern> patterns;
  std::vector<AnomalyRow> anomalies;
  std::optional<DetectionMetrics> metrics;
};

}  // namespace patternforge
