#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "patternforge/errors.hpp"
#include "patternforge/evalkit.hpp"
#include "patternforge/io.hpp"
#include "patternforge/pipeline.hpp"

namespace pf = patternforge;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineFlags {
  std::vector<std::string> columns;
  bool all = false;
  std::uint64_t seed = 0;
  double rcov_init = 0.95;
  std::size_t n_subset = 5;
  std::optional<double> fixed_rcov;
  std::optional<double> fixed_rem;
  std::string selection = "kmeans";
  std::string out;
};

void add_seed(CLI::App* cmd, std::uint64_t& seed) {
  cmd->add_option("--seed", seed, "Random seed (default: $PATTERNFORGE_SEED or 0)")->envname("PATTERNFORGE_SEED");
}

void add_engine_flags(CLI::App* cmd, EngineFlags& f, bool with_columns = true) {
  if (with_columns) {
    auto* column = cmd->add_option("--column", f.columns, "Column to process (repeatable)");
    auto* all = cmd->add_flag("--all", f.all, "Process every column");
    column->excludes(all);
  }
  add_seed(cmd, f.seed);
  cmd->add_option("--rcov-init", f.rcov_init, "Initial coverage rate for the estimator");
  cmd->add_option("--n-subset", f.n_subset, "Number of estimator subsets");
  cmd->add_option("--fixed-rcov", f.fixed_rcov, "Use this coverage rate instead of estimating it");
  cmd->add_option("--fixed-rem", f.fixed_rem, "Use this exact-matching rate instead of r_cov");
  cmd->add_option("--selection", f.selection, "kmeans | static:<t> | none");
  cmd->add_option("--out", f.out, "Output path (default: stdout)");
}

pf::SelectionPolicy parse_selection(const std::string& text) {
  if (text == "kmeans") return pf::KMeansSelection{};
  if (text == "none") return pf::NoSelection{};
  if (text.rfind("static:", 0) == 0) {
    const std::string value = text.substr(7);
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !(t >= 0.0 && t < 1.0)) {
      throw UsageError("--selection static:<t> needs a threshold in [0, 1), got '" + value + "'");
    }
    return pf::StaticThreshold{t};
  }
  if (text == "static") return pf::StaticThreshold{};
  throw UsageError("--selection must be kmeans, static:<t> or none, got '" + text + "'");
}

pf::EngineConfig make_config(const EngineFlags& f, pf::Mode mode) {
  pf::EngineConfig cfg;
  cfg.mode = mode;
  cfg.seed = f.seed;
  cfg.r_cov_init = f.rcov_init;
  cfg.n_subset = f.n_subset;
  cfg.fixed_r_cov = f.fixed_rcov;
  cfg.fixed_r_em = f.fixed_rem;
  cfg.selection = parse_selection(f.selection);
  try {
    cfg.validate();
  } catch (const pf::InvalidInputError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

pf::ColumnSelection make_selection(const EngineFlags& f) {
  if (!f.all && f.columns.empty()) throw UsageError("pass --column <name> or --all");
  return pf::ColumnSelection{f.all, f.columns};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    pf::write_file(out, text);
  }
}

// Label files carry one column's labels; they are checked against the sample
// the run itself draws for that column.
std::map<std::string, pf::LabelSet> load_labels(const pf::Table& table, const EngineFlags& f,
                                                const pf::EngineConfig& cfg, const std::string& path) {
  if (f.all || f.columns.size() != 1) throw UsageError("--labels needs exactly one --column");
  const std::size_t ordinal = table.column_index(f.columns.front());
  const auto column = table.column(ordinal);
  if (column.empty()) throw pf::InvalidInputError("column '" + f.columns.front() + "' has no rows");
  const auto sample = pf::main_sample(column, pf::config_for_column(cfg, ordinal));
  return {{f.columns.front(), pf::read_labels(path, sample)}};
}

std::vector<pf::ColumnReport> run_detect(const std::string& input, const EngineFlags& f, const std::string& labels) {
  const auto table = pf::read_csv(input);
  const auto selection = make_selection(f);
  auto cfg = make_config(f, labels.empty() ? pf::Mode::DetectAuto : pf::Mode::DetectGuided);
  std::map<std::string, pf::LabelSet> label_map;
  if (!labels.empty()) label_map = load_labels(table, f, cfg, labels);
  return pf::run_table(table, cfg, selection, label_map);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infer regex patterns from CSV columns, profile them and flag pattern anomalies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("patternforge 0.1.0"));

  std::string input;
  EngineFlags flags;
  std::string labels;

  auto* profile = app.add_subcommand("profile", "Emit every pattern that covers the sampled records");
  profile->add_option("input", input, "CSV file with a header row")->required();
  add_engine_flags(profile, flags);

  auto* detect = app.add_subcommand("detect", "Flag rows that match no healthy pattern");
  detect->add_option("input", input, "CSV file with a header row")->required();
  add_engine_flags(detect, flags);
  detect->add_option("--labels", labels, "Label JSON for the sample (switches to guided mode)");

  auto* sample = app.add_subcommand("sample", "Write the sample manifest a guided run will label");
  sample->add_option("input", input, "CSV file with a header row")->required();
  add_engine_flags(sample, flags);

  std::string truth;
  auto* eval_det = app.add_subcommand("eval-detection", "Detect, then score against a cleaned twin");
  eval_det->add_option("input", input, "Dirty CSV file")->required();
  eval_det->add_option("--truth", truth, "Clean CSV aligned row by row with the input")->required();
  add_engine_flags(eval_det, flags);
  eval_det->add_option("--labels", labels, "Label JSON for the sample (switches to guided mode)");

  std::string dir;
  double train_fraction = 0.2;
  auto* eval_prof = app.add_subcommand("eval-profiling", "Score profiling across single-column domain files");
  eval_prof->add_option("--dir", dir, "Folder with one file per domain, one record per line")->required();
  eval_prof->add_option("--train-fraction", train_fraction, "Share of each domain used for training");
  add_engine_flags(eval_prof, flags, false);

  pf::SynthSpec synth_spec;
  synth_spec.rows = 10000;
  synth_spec.anomaly_rate = 0.03;
  std::string synth_clean;
  auto* synth = app.add_subcommand("synth", "Generate a dirty column and its clean twin");
  synth->add_option("--generator", synth_spec.generator, "Healthy language")
      ->required()
      ->check(CLI::IsMember(pf::generator_names()));
  synth->add_option("--rows", synth_spec.rows, "Row count");
  synth->add_option("--rate", synth_spec.anomaly_rate, "Share of anomalous rows")->check(CLI::Range(0.0, 1.0));
  synth->add_option("--inject", synth_spec.injectors, "Anomaly injectors (repeatable)")
      ->check(CLI::IsMember(pf::injector_names()));
  add_seed(synth, flags.seed);
  synth->add_option("--out", flags.out, "Dirty CSV path")->required();
  synth->add_option("--clean", synth_clean, "Clean CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (profile->parsed()) {
      const auto table = pf::read_csv(input);
      const auto selection = make_selection(flags);
      const auto reports = pf::run_table(table, make_config(flags, pf::Mode::Profile), selection);
      emit(pf::report_json(reports), flags.out);
    } else if (detect->parsed()) {
      emit(pf::report_json(run_detect(input, flags, labels)), flags.out);
    } else if (sample->parsed()) {
      if (flags.all || flags.columns.size() != 1) throw UsageError("sample needs exactly one --column");
      const auto cfg = make_config(flags, pf::Mode::DetectGuided);
      const auto table = pf::read_csv(input);
      const std::size_t ordinal = table.column_index(flags.columns.front());
      const auto column = table.column(ordinal);
      if (column.empty()) throw pf::InvalidInputError("column '" + flags.columns.front() + "' has no rows");
      const auto column_cfg = pf::config_for_column(cfg, ordinal);
      const pf::SampleManifest manifest{flags.columns.front(), column_cfg.seed, pf::main_sample(column, column_cfg)};
      emit(pf::sample_manifest_json(manifest), flags.out);
    } else if (eval_det->parsed()) {
      auto reports = run_detect(input, flags, labels);
      const auto dirty = pf::read_csv(input);
      const auto clean = pf::read_csv(truth);
      if (clean.header != dirty.header) throw pf::InvalidInputError("truth file headers differ from the input");
      for (auto& report : reports) {
        const std::size_t ordinal = dirty.column_index(report.column_name);
        const auto d = dirty.column(ordinal);
        const auto c = clean.column(ordinal);
        report.metrics = pf::eval_detection(report, d, c);
      }
      emit(pf::report_json(reports), flags.out);
    } else if (eval_prof->parsed()) {
      if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw UsageError("--train-fraction must lie in (0, 1)");
      const auto cfg = make_config(flags, pf::Mode::Profile);
      const auto domains = pf::load_domains(dir);
      const auto summary = pf::eval_profiling(domains, train_fraction, flags.seed, cfg);
      emit(pf::profiling_json(summary, train_fraction, flags.seed), flags.out);
    } else if (synth->parsed()) {
      const auto corpus = pf::synth_corpus(synth_spec, flags.seed);
      const auto as_table = [&](const std::vector<std::string>& values) {
        pf::Table t;
        t.header = {synth_spec.generator};
        for (const auto& v : values) t.rows.push_back({v});
        return t;
      };
      pf::write_file(flags.out, pf::to_csv(as_table(corpus.dirty)));
      pf::write_file(synth_clean, pf::to_csv(as_table(corpus.clean)));
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const pf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
