#include "patternforge/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "patternforge/errors.hpp"
#include "patternforge/json_writer.hpp"

namespace patternforge {

namespace {

std::string line_prefix(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

nlohmann::json parse_json(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInputError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  std::string available;
  for (const auto& h : header) available += (available.empty() ? "" : ", ") + h;
  throw InvalidInputError("unknown column '" + std::string(name) + "'; available: " + available);
}

std::vector<std::string> Table::column(std::size_t index) const {
  if (index >= header.size()) throw InvalidInputError("column index out of range");
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[index]);
  return out;
}

Table parse_csv(std::string_view text, std::string source) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  Table table;
  table.source = std::move(source);

  std::size_t pos = 0;
  std::size_t line = 1;
  bool have_header = false;
  while (pos < text.size()) {
    const std::size_t record_line = line;
    std::vector<std::string> cells;
    std::string cell;
    bool record_done = false;
    while (!record_done) {
      cell.clear();
      if (pos < text.size() && text[pos] == '"') {
        ++pos;
        bool closed = false;
        while (pos < text.size()) {
          const char c = text[pos++];
          if (c == '"') {
            if (pos < text.size() && text[pos] == '"') {
              cell += '"';
              ++pos;
            } else {
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            cell += c;
          }
        }
        if (!closed) throw InvalidInputError(line_prefix(table.source, record_line) + "unterminated quoted cell");
        if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') {
          throw InvalidInputError(line_prefix(table.source, line) + "unexpected character after closing quote");
        }
      } else {
        while (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') {
          if (text[pos] == '"') {
            throw InvalidInputError(line_prefix(table.source, line) + "quote inside unquoted cell");
          }
          cell += text[pos++];
        }
      }
      cells.push_back(cell);
      if (pos >= text.size()) {
        record_done = true;
      } else if (text[pos] == ',') {
        ++pos;
      } else {
        if (text[pos] == '\r') {
          ++pos;
          if (pos < text.size() && text[pos] != '\n') {
            throw InvalidInputError(line_prefix(table.source, line) + "bare carriage return");
          }
        }
        if (pos < text.size()) ++pos;
        ++line;
        record_done = true;
      }
    }

    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
    } else {
      if (cells.size() != table.header.size()) {
        throw InvalidInputError(line_prefix(table.source, record_line) + "expected " +
                                std::to_string(table.header.size()) + " fields, found " +
                                std::to_string(cells.size()));
      }
      table.rows.push_back(std::move(cells));
    }
  }
  if (!have_header) throw InvalidInputError(table.source + ": missing header row");
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Table read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.string()); }

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(std::move(line));
    start = end + 1;
  }
  return out;
}

std::string csv_escape(std::string_view cell) {
  if (cell.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(cell);
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table& table) {
  std::string out;
  const auto append_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  };
  append_row(table.header);
  for (const auto& row : table.rows) append_row(row);
  return out;
}

std::string sample_manifest_json(const SampleManifest& manifest) {
  JsonWriter w;
  w.begin_object();
  w.key("column").string(manifest.column);
  w.key("seed").integer(manifest.seed);
  w.key("n").integer(manifest.sample.population);
  w.key("n_tr").integer(manifest.sample.size());
  w.key("rows").begin_array();
  for (std::size_t i = 0; i < manifest.sample.size(); ++i) {
    w.begin_object();
    w.key("row").integer(manifest.sample.indices[i]);
    w.key("value").string(manifest.sample.records[i]);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

void emit_sample_manifest(const SampleManifest& manifest, const std::filesystem::path& path) {
  write_file(path, sample_manifest_json(manifest));
}

SampleManifest read_sample_manifest(const std::filesystem::path& path) {
  const auto doc = parse_json(read_file(path), "sample manifest");
  SampleManifest manifest;
  try {
    manifest.column = doc.at("column").get<std::string>();
    manifest.seed = doc.at("seed").get<std::uint64_t>();
    manifest.sample.population = doc.at("n").get<std::size_t>();
    for (const auto& row : doc.at("rows")) {
      manifest.sample.indices.push_back(row.at("row").get<std::size_t>());
      manifest.sample.records.push_back(row.at("value").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError("malformed sample manifest: " + std::string(e.what()));
  }
  if (manifest.sample.size() != doc.value("n_tr", manifest.sample.size())) {
    throw InvalidInputError("sample manifest: n_tr does not match the number of rows");
  }
  return manifest;
}

LabelSet parse_labels(std::string_view json_text, const Sample& manifest) {
  const auto doc = parse_json(json_text, "label file");
  if (!doc.is_object()) throw InvalidInputError("label file must be a JSON object of row -> label");

  const std::set<std::size_t> sampled(manifest.indices.begin(), manifest.indices.end());
  LabelSet labels;
  std::vector<std::string> problems;
  for (const auto& [key, value] : doc.items()) {
    std::size_t row = 0;
    const bool numeric = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!numeric) {
      problems.push_back("'" + key + "' is not a row index");
      continue;
    }
    row = std::stoull(key);
    if (!value.is_string()) {
      problems.push_back("row " + key + ": label must be a string");
      continue;
    }
    const auto text = value.get<std::string>();
    Label label;
    if (text == "healthy") {
      label = Label::Healthy;
    } else if (text == "anomalous") {
      label = Label::Anomalous;
    } else {
      problems.push_back("row " + key + ": unknown label '" + text + "'");
      continue;
    }
    if (!sampled.contains(row)) {
      problems.push_back("row " + key + " is not in the sample");
      continue;
    }
    labels.entries[row] = label;
  }
  std::string missing;
  for (std::size_t idx : manifest.indices) {
    if (!labels.entries.contains(idx) && !doc.contains(std::to_string(idx))) missing += " " + std::to_string(idx);
  }
  if (!missing.empty()) problems.push_back("missing labels for rows:" + missing);
  if (!problems.empty()) {
    std::string msg = "invalid label file:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw InvalidInputError(msg);
  }
  return labels;
}

LabelSet read_labels(const std::filesystem::path& path, const Sample& manifest) {
  return parse_labels(read_file(path), manifest);
}

std::string labels_json(const LabelSet& labels) {
  JsonWriter w;
  w.begin_object();
  for (const auto& [row, label] : labels.entries) {
    w.key(std::to_string(row)).string(label == Label::Healthy ? "healthy" : "anomalous");
  }
  w.end_object();
  return w.str();
}

std::string report_json(std::span<const ColumnReport> reports) {
  JsonWriter w;
  w.begin_object();
  w.key("columns").begin_array();
  for (const auto& report : reports) {
    w.begin_object();
    w.key("column").string(report.column_name);
    w.key("mode").string(to_string(report.mode));
    w.key("n").integer(report.n);
    w.key("n_tr").integer(report.n_tr);
    w.key("r_cov_estimated").fixed6(report.estimated_r_cov);
    w.key("templates").begin_array();
    for (const auto& t : report.templates) {
      w.begin_object().key("key").string(t.key).key("count").integer(t.count).end_object();
    }
    w.end_array();
    w.key("patterns").begin_array();
    for (const auto& p : report.patterns) {
      w.begin_object();
      w.key("regex").string(p.regex);
      w.key("template_key").string(p.template_key);
      w.key("sample_frequency").fixed6(p.sample_frequency);
      w.key("column_matching_rate").fixed6(p.column_matching_rate);
      w.key("selected").boolean(p.selected);
      w.end_object();
    }
    w.end_array();
    w.key("anomalies").begin_array();
    for (const auto& a : report.anomalies) {
      w.begin_object().key("row").integer(a.row).key("value").string(a.value).end_object();
    }
    w.end_array();
    if (report.metrics) {
      const auto& m = *report.metrics;
      w.key("metrics").begin_object();
      w.key("precision").fixed6(m.precision);
      w.key("recall").fixed6(m.recall);
      w.key("f1").fixed6(m.f1);
      w.key("true_positives").integer(m.true_positives);
      w.key("false_positives").integer(m.false_positives);
      w.key("false_negatives").integer(m.false_negatives);
      w.key("precision_undefined").boolean(m.precision_undefined);
      w.key("recall_undefined").boolean(m.recall_undefined);
      w.end_object();
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

void write_report(std::span<const ColumnReport> reports, const std::filesystem::path& path) {
  write_file(path, report_json(reports));
}

}  // namespace patternforge
