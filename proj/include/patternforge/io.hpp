#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patternforge/estimator.hpp"
#include "patternforge/json_writer.hpp"
#include "patternforge/sampler.hpp"
#include "patternforge/table.hpp"
#include "patternforge/types.hpp"

namespace patternforge {

// RFC 4180 CSV: first record is the header, cells stay raw strings (empty
// cells included), CRLF or LF line ends, quoted cells may hold commas, quotes
// ("") and newlines. Ragged rows and malformed quoting raise
// InvalidInputError naming the line.
Table parse_csv(std::string_view text, std::string source = "<memory>");
Table read_csv(const std::filesystem::path& path);

// One record per line, no header; a final line terminator does not start a
// record.
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string csv_escape(std::string_view cell);
std::string to_csv(const Table& table);

// Sample manifest: {"column", "seed", "n", "n_tr", "rows": [{"row", "value"}]}.
struct SampleManifest {
  std::string column;
  std::uint64_t seed = 0;
  Sample sample;
};

std::string sample_manifest_json(const SampleManifest& manifest);
void emit_sample_manifest(const SampleManifest& manifest, const std::filesystem::path& path);
SampleManifest read_sample_manifest(const std::filesystem::path& path);

// Label file: {"<row index>": "healthy" | "anomalous", ...}. The keys must be
// exactly the sampled row indices.
LabelSet parse_labels(std::string_view json_text, const Sample& manifest);
LabelSet read_labels(const std::filesystem::path& path, const Sample& manifest);
std::string labels_json(const LabelSet& labels);

// {"columns": [<column report>...]}, stable key order, rates with six
// fractional digits.
std::string report_json(std::span<const ColumnReport> reports);
void write_report(std::span<const ColumnReport> reports, const std::filesystem::path& path);

}  // namespace patternforge
