#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "patternforge/estimator.hpp"
#include "patternforge/sampler.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

// A single-column dataset from one domain.
struct Domain {
  std::string name;
  std::vector<std::string> records;
};

struct ProfilingScore {
  std::string name;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::size_t other_size = 0;
  std::size_t true_positives = 0;   // held-out rows matched
  std::size_t false_positives = 0;  // foreign rows matched
  std::size_t patterns = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
};

struct ProfilingSummary {
  std::vector<ProfilingScore> domains;
  double tp_rate = 0.0;  // macro averages over domains
  double fp_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Profiles a random train_fraction of each domain, then measures the pool's
// match rate on the held-out rows (TP) and on an equally sized seeded draw
// from all other domains pooled (FP). Precision uses the match counts.
// Domain i uses seed + i.
ProfilingSummary eval_profiling(std::span<const Domain> domains, double train_fraction, std::uint64_t seed,
                                const EngineConfig& base = {});

// Every regular file in `dir` (sorted by name) is one domain, one record per line.
std::vector<Domain> load_domains(const std::filesystem::path& dir);

std::string profiling_json(const ProfilingSummary& summary, double train_fraction, std::uint64_t seed);

// Ground truth anomalies are the rows where dirty and clean differ. A ratio
// with a zero denominator is reported as 0 and flagged, except that an empty
// prediction on a column with no true anomalies scores precision = recall =
// f1 = 1 (both flags still set).
DetectionMetrics eval_detection(const ColumnReport& report, std::span<const std::string> dirty,
                                std::span<const std::string> clean);

// Labels the sampled rows from a clean twin: anomalous where dirty != clean.
LabelSet truth_labels(const Sample& sample, std::span<const std::string> clean);

struct SynthSpec {
  std::string generator;  // date, zip, phone, state-code, duration, datetime
  double anomaly_rate = 0.0;
  std::size_t rows = 1000;
  // Subset of truncate, case-flip, symbol-insert, tail-append; empty means
  // truncate, case-flip and symbol-insert.
  std::vector<std::string> injectors;
};

struct SynthCorpus {
  std::vector<std::string> dirty;
  std::vector<std::string> clean;
  std::size_t anomalies = 0;
};

// Deterministic corpus with exactly round(rate * rows) anomalous rows.
SynthCorpus synth_corpus(const SynthSpec& spec, std::uint64_t seed);

std::vector<std::string> generator_names();
std::vector<std::string> injector_names();

}  // namespace patternforge
