#include "patternforge/evalkit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>

#include "patternforge/errors.hpp"
#include "patternforge/io.hpp"
#include "patternforge/json_writer.hpp"
#include "patternforge/pipeline.hpp"
#include "patternforge/selector.hpp"

namespace patternforge {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::string digits(Rng& rng, std::size_t count) {
  std::string out;
  for (std::size_t i = 0; i < count; ++i) out += static_cast<char>('0' + rng.below(10));
  return out;
}

std::string padded(std::uint64_t value, int width) {
  std::string s = std::to_string(value);
  if (static_cast<int>(s.size()) < width) s.insert(0, static_cast<std::size_t>(width) - s.size(), '0');
  return s;
}

constexpr std::array<const char*, 51> kStateCodes = {
    "AL", "AK", "AZ", "AR", "CA", "CO", "CT", "DE", "DC", "FL", "GA", "HI", "ID", "IL", "IN", "IA", "KS",
    "KY", "LA", "ME", "MD", "MA", "MI", "MN", "MS", "MO", "MT", "NE", "NV", "NH", "NJ", "NM", "NY", "NC",
    "ND", "OH", "OK", "OR", "PA", "RI", "SC", "SD", "TN", "TX", "UT", "VT", "VA", "WA", "WV", "WI", "WY"};

std::string date_value(Rng& rng) {
  return std::to_string(1950 + rng.below(81)) + "-" + padded(1 + rng.below(12), 2) + "-" + padded(1 + rng.below(28), 2);
}

using Generator = std::function<std::string(Rng&)>;

const std::map<std::string, Generator>& generators() {
  static const std::map<std::string, Generator> table = {
      {"date", date_value},
      {"zip", [](Rng& rng) { return digits(rng, 5); }},
      {"phone", [](Rng& rng) { return std::to_string(2 + rng.below(8)) + digits(rng, 9); }},
      {"state-code", [](Rng& rng) { return std::string(kStateCodes[rng.below(kStateCodes.size())]); }},
      {"duration", [](Rng& rng) { return std::to_string(45 + rng.below(196)) + " min"; }},
      {"datetime",
       [](Rng& rng) {
         return date_value(rng) + " " + padded(rng.below(24), 2) + ":" + padded(rng.below(60), 2) + ":" +
                padded(rng.below(60), 2);
       }},
  };
  return table;
}

char flip_case(char c) {
  if (c >= 'a' && c <= 'z') return static_cast<char>(c - 'a' + 'A');
  if (c >= 'A' && c <= 'Z') return static_cast<char>(c - 'A' + 'a');
  return c;
}

// Letters commonly confused with digits.
char letter_for_digit(char d) {
  static constexpr std::string_view kLookAlike = "OlZEASGTBg";
  return kLookAlike[static_cast<std::size_t>(d - '0')];
}

std::string truncate(std::string value, Rng& rng) {
  const std::size_t drop = value.size() > 3 ? 1 + rng.below(2) : 1;
  value.resize(value.size() > drop ? value.size() - drop : 0);
  return value;
}

std::string case_flip(std::string value, Rng& rng) {
  std::vector<std::size_t> letters;
  std::vector<std::size_t> digit_pos;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const char c = value[i];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) letters.push_back(i);
    if (c >= '0' && c <= '9') digit_pos.push_back(i);
  }
  if (!letters.empty()) {
    const std::size_t i = letters[rng.below(letters.size())];
    value[i] = flip_case(value[i]);
  } else if (!digit_pos.empty()) {
    const std::size_t i = digit_pos[rng.below(digit_pos.size())];
    value[i] = letter_for_digit(value[i]);
  }
  return value;
}

std::string symbol_insert(std::string value, Rng& rng) {
  static constexpr std::string_view kSymbols = "-./#*_";
  const char symbol = kSymbols[rng.below(kSymbols.size())];
  const std::size_t at = value.size() < 2 ? value.size() : 1 + rng.below(value.size() - 1);
  value.insert(value.begin() + static_cast<std::ptrdiff_t>(at), symbol);
  return value;
}

std::string tail_append(std::string value, Rng& rng) {
  static constexpr std::array<std::string_view, 3> kJoins = {"++", "+", " ~ "};
  return value + std::string(kJoins[rng.below(kJoins.size())]) + digits(rng, 2);
}

using Injector = std::function<std::string(std::string, Rng&)>;

const std::map<std::string, Injector>& injectors() {
  static const std::map<std::string, Injector> table = {
      {"truncate", truncate},
      {"case-flip", case_flip},
      {"symbol-insert", symbol_insert},
      {"tail-append", tail_append},
  };
  return table;
}

}  // namespace

std::vector<std::string> generator_names() {
  std::vector<std::string> out;
  for (const auto& [name, gen] : generators()) out.push_back(name);
  return out;
}

std::vector<std::string> injector_names() {
  std::vector<std::string> out;
  for (const auto& [name, inj] : injectors()) out.push_back(name);
  return out;
}

SynthCorpus synth_corpus(const SynthSpec& spec, std::uint64_t seed) {
  const auto gen = generators().find(spec.generator);
  if (gen == generators().end()) throw InvalidInputError("unknown generator '" + spec.generator + "'");
  if (!(spec.anomaly_rate >= 0.0 && spec.anomaly_rate <= 1.0)) {
    throw InvalidInputError("anomaly rate must lie in [0, 1]");
  }
  std::vector<std::string> names = spec.injectors;
  if (names.empty()) names = {"truncate", "case-flip", "symbol-insert"};
  std::vector<const Injector*> chosen;
  for (const auto& name : names) {
    const auto it = injectors().find(name);
    if (it == injectors().end()) throw InvalidInputError("unknown anomaly injector '" + name + "'");
    chosen.push_back(&it->second);
  }

  Rng rng(seed);
  SynthCorpus corpus;
  corpus.clean.reserve(spec.rows);
  for (std::size_t i = 0; i < spec.rows; ++i) corpus.clean.push_back(gen->second(rng));
  corpus.dirty = corpus.clean;

  const auto count = static_cast<std::size_t>(std::floor(spec.anomaly_rate * static_cast<double>(spec.rows) + 0.5));
  const auto rows = sample_indices(spec.rows, std::min(count, spec.rows), seed ^ 0x9E3779B97F4A7C15ull);
  for (std::size_t row : rows) {
    const Injector& inject = *chosen[rng.below(chosen.size())];
    std::string dirty = inject(corpus.clean[row], rng);
    if (dirty == corpus.clean[row]) dirty = symbol_insert(corpus.clean[row], rng);
    corpus.dirty[row] = std::move(dirty);
  }
  corpus.anomalies = rows.size();
  return corpus;
}

DetectionMetrics eval_detection(const ColumnReport& report, std::span<const std::string> dirty,
                                std::span<const std::string> clean) {
  if (dirty.size() != clean.size()) {
    throw InvalidInputError("truth has " + std::to_string(clean.size()) + " rows but the column has " +
                            std::to_string(dirty.size()));
  }
  if (report.n != dirty.size()) throw InvalidInputError("report row count does not match the column");

  std::vector<bool> predicted(dirty.size(), false);
  for (const auto& a : report.anomalies) {
    if (a.row >= predicted.size()) throw InvalidInputError("anomaly row out of range");
    predicted[a.row] = true;
  }
  DetectionMetrics m;
  for (std::size_t i = 0; i < dirty.size(); ++i) {
    const bool truth = dirty[i] != clean[i];
    if (predicted[i] && truth) ++m.true_positives;
    if (predicted[i] && !truth) ++m.false_positives;
    if (!predicted[i] && truth) ++m.false_negatives;
  }
  const std::size_t predicted_count = m.true_positives + m.false_positives;
  const std::size_t truth_count = m.true_positives + m.false_negatives;
  m.precision_undefined = predicted_count == 0;
  m.recall_undefined = truth_count == 0;
  if (m.precision_undefined && m.recall_undefined) {
    m.precision = m.recall = m.f1 = 1.0;
    return m;
  }
  m.precision = ratio(m.true_positives, predicted_count);
  m.recall = ratio(m.true_positives, truth_count);
  m.f1 = harmonic(m.precision, m.recall);
  return m;
}

LabelSet truth_labels(const Sample& sample, std::span<const std::string> clean) {
  LabelSet labels;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const std::size_t row = sample.indices[i];
    if (row >= clean.size()) throw InvalidInputError("sampled row outside the clean column");
    labels.entries[row] = sample.records[i] == clean[row] ? Label::Healthy : Label::Anomalous;
  }
  return labels;
}

ProfilingSummary eval_profiling(std::span<const Domain> domains, double train_fraction, std::uint64_t seed,
                                const EngineConfig& base) {
  if (domains.size() < 2) throw InvalidInputError("eval_profiling needs at least two domains");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidInputError("train fraction must lie in (0, 1)");
  }

  ProfilingSummary summary;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    const auto& domain = domains[d];
    if (domain.records.size() < 2) {
      throw InvalidInputError("domain '" + domain.name + "' needs at least two records");
    }
    const std::uint64_t domain_seed = seed + d;
    const std::size_t n = domain.records.size();
    const auto train_n = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n) + 0.5)), 1, n - 1);
    const auto train_idx = sample_indices(n, train_n, domain_seed);

    std::vector<std::string> train;
    std::vector<std::string> test;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (next < train_idx.size() && train_idx[next] == i) {
        train.push_back(domain.records[i]);
        ++next;
      } else {
        test.push_back(domain.records[i]);
      }
    }

    std::vector<std::string> pooled;
    for (std::size_t o = 0; o < domains.size(); ++o) {
      if (o == d) continue;
      pooled.insert(pooled.end(), domains[o].records.begin(), domains[o].records.end());
    }
    const auto other_idx = sample_indices(pooled.size(), std::min(test.size(), pooled.size()),
                                          domain_seed ^ 0xD1B54A32D192ED03ull);
    std::vector<std::string> other;
    other.reserve(other_idx.size());
    for (std::size_t i : other_idx) other.push_back(pooled[i]);

    EngineConfig cfg = base;
    cfg.mode = Mode::Profile;
    cfg.seed = domain_seed;
    const auto report = profile_column(domain.name, train, cfg);

    std::vector<Matcher> matchers;
    matchers.reserve(report.patterns.size());
    for (const auto& p : report.patterns) matchers.emplace_back(p.ast);
    const auto matched = [&](const std::string& record) {
      const auto decoded = decode_utf8(record);
      return std::any_of(matchers.begin(), matchers.end(), [&](const Matcher& m) { return m.matches(decoded); });
    };

    ProfilingScore score;
    score.name = domain.name;
    score.train_size = train.size();
    score.test_size = test.size();
    score.other_size = other.size();
    score.patterns = report.patterns.size();
    score.true_positives = static_cast<std::size_t>(std::count_if(test.begin(), test.end(), matched));
    score.false_positives = static_cast<std::size_t>(std::count_if(other.begin(), other.end(), matched));
    score.tp_rate = ratio(score.true_positives, score.test_size);
    score.fp_rate = ratio(score.false_positives, score.other_size);
    score.precision_undefined = score.true_positives + score.false_positives == 0;
    score.precision = ratio(score.true_positives, score.true_positives + score.false_positives);
    score.recall = score.tp_rate;
    score.f1 = harmonic(score.precision, score.recall);
    summary.domains.push_back(std::move(score));
  }

  const double count = static_cast<double>(summary.domains.size());
  for (const auto& s : summary.domains) {
    summary.tp_rate += s.tp_rate / count;
    summary.fp_rate += s.fp_rate / count;
    summary.precision += s.precision / count;
    summary.recall += s.recall / count;
    summary.f1 += s.f1 / count;
  }
  return summary;
}

std::vector<Domain> load_domains(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw IoError("'" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && !entry.path().filename().string().starts_with(".")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Domain> domains;
  domains.reserve(files.size());
  for (const auto& file : files) domains.push_back(Domain{file.filename().string(), read_lines(file)});
  return domains;
}

std::string profiling_json(const ProfilingSummary& summary, double train_fraction, std::uint64_t seed) {
  JsonWriter w;
  w.begin_object();
  w.key("train_fraction").fixed6(train_fraction);
  w.key("seed").integer(seed);
  w.key("domains").begin_array();
  for (const auto& s : summary.domains) {
    w.begin_object();
    w.key("name").string(s.name);
    w.key("train").integer(s.train_size);
    w.key("test").integer(s.test_size);
    w.key("other").integer(s.other_size);
    w.key("patterns").integer(s.patterns);
    w.key("tp_rate").fixed6(s.tp_rate);
    w.key("fp_rate").fixed6(s.fp_rate);
    w.key("precision").fixed6(s.precision);
    w.key("recall").fixed6(s.recall);
    w.key("f1").fixed6(s.f1);
    w.key("precision_undefined").boolean(s.precision_undefined);
    w.end_object();
  }
  w.end_array();
  w.key("average").begin_object();
  w.key("tp_rate").fixed6(summary.tp_rate);
  w.key("fp_rate").fixed6(summary.fp_rate);
  w.key("precision").fixed6(summary.precision);
  w.key("recall").fixed6(summary.recall);
  w.key("f1").fixed6(summary.f1);
  w.end_object();
  w.end_object();
  return w.str();
}

}  // namespace patternforge
