#include "tswarp/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tswarp/classifier.hpp"
#include "tswarp/errors.hpp"
#include "tswarp/io.hpp"
#include "tswarp/synthgen.hpp"

namespace fs = std::filesystem;

namespace tswarp {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<Metric> metrics_from(const std::vector<std::string>& names) {
  std::vector<Metric> out;
  for (const auto& n : names) {
    const auto m = parse_metric(n);
    if (!m) throw UsageError("--metrics: unknown metric '" + n + "'");
    out.push_back(*m);
  }
  if (out.empty()) throw UsageError("--metrics: empty list");
  return out;
}

struct Globals {
  std::string threads = "auto";
  std::optional<std::uint64_t> seed;

  unsigned thread_count() const { return threads == "auto" ? 0U : static_cast<unsigned>(std::stoul(threads)); }

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("TSWARP_SEED")) {
      std::uint64_t v = 0;
      const std::string_view s(env);
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw UsageError("TSWARP_SEED: not an unsigned integer: '" + std::string(s) + "'");
      }
      return v;
    }
    return 0;
  }
};

const auto metric_check = CLI::Validator(
    [](std::string& s) { return parse_metric(s) ? std::string() : "unknown metric '" + s + "'"; }, "METRIC");

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  SyntheticSpec spec;
  std::string out;
};

int run_simulate(const SimulateArgs& a, const Globals& g) {
  SyntheticSpec spec = a.spec;
  spec.seed = g.resolved_seed();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const LabeledDataset ds = generate_dataset(spec);
  save_tsv(ds, a.out);
  std::cout << "wrote " << ds.size() << " signals to " << a.out << "\n";
  return kOk;
}

// classify ------------------------------------------------------------------

struct ClassifyArgs {
  std::string train, test, metric, out;
};

int run_classify(const ClassifyArgs& a, const Globals& g) {
  const LabeledDataset train = load_tsv(a.train);
  const LabeledDataset test = load_tsv(a.test);
  const EvalReport rep = evaluate(train, test, {*parse_metric(a.metric)}, {g.thread_count()});
  std::string csv = "item_index,true_label,predicted_label,distance\n";
  for (const auto& p : rep.predictions) {
    csv += std::to_string(p.item_index) + "," + p.true_label + "," + p.predicted_label + "," + num(p.distance) + "\n";
  }
  write_text_atomic(a.out, csv);
  std::cout << "accuracy " << num(rep.accuracy) << " (" << rep.test_size << " items";
  if (rep.fallbacks > 0) std::cout << ", " << rep.fallbacks << " euclidean fallbacks";
  std::cout << ")\n";
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string data_dir, out;
  std::vector<std::string> metrics;
};

// <Name>_TRAIN.tsv / <Name>_TEST.tsv pairs in dir and its direct subdirectories.
std::map<std::string, std::pair<fs::path, fs::path>> find_datasets(const fs::path& dir) {
  std::map<std::string, std::pair<fs::path, fs::path>> found;
  std::vector<fs::path> dirs{dir};
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  for (const auto& d : dirs) {
    for (const auto& e : fs::directory_iterator(d)) {
      const std::string fname = e.path().filename().string();
      const std::string suffix = "_TRAIN.tsv";
      if (fname.size() <= suffix.size() || fname.compare(fname.size() - suffix.size(), suffix.size(), suffix) != 0) {
        continue;
      }
      const std::string name = fname.substr(0, fname.size() - suffix.size());
      found.emplace(name, std::make_pair(e.path(), d / (name + "_TEST.tsv")));
    }
  }
  return found;
}

int run_bench(const BenchArgs& a, const Globals& g) {
  const auto metrics = metrics_from(a.metrics);
  if (!fs::is_directory(a.data_dir)) throw DataError("not a directory: " + a.data_dir);
  const auto datasets = find_datasets(a.data_dir);
  if (datasets.empty()) throw DataError("no <Name>_TRAIN.tsv files under " + a.data_dir);

  std::string csv = "dataset,metric,accuracy,seconds,train_size,test_size\n";
  for (const auto& [name, paths] : datasets) {
    std::optional<LabeledDataset> train, test;
    std::string error;
    try {
      train = load_tsv(paths.first);
      test = load_tsv(paths.second);
    } catch (const DataError& e) {
      error = e.what();
    }
    for (Metric m : metrics) {
      if (error.empty()) {
        try {
          const EvalReport rep = evaluate(*train, *test, {m}, {g.thread_count()});
          csv += name + "," + to_string(m) + "," + num(rep.accuracy) + "," + num(rep.seconds) + "," +
                 std::to_string(rep.train_size) + "," + std::to_string(rep.test_size) + "\n";
          std::cout << name << " " << to_string(m) << " " << num(rep.accuracy) << "\n";
          continue;
        } catch (const std::exception& e) {
          std::cerr << "error: " << name << " " << to_string(m) << ": " << e.what() << "\n";
        }
      }
      csv += name + "," + to_string(m) + ",nan,nan,0,0\n";
    }
    if (!error.empty()) std::cerr << "error: " << name << ": " << error << "\n";
  }
  write_text_atomic(a.out, csv);
  return kOk;
}

// lowsample -----------------------------------------------------------------

struct LowSampleArgs {
  std::string train, test, out;
  std::vector<std::size_t> per_class;
  std::size_t repeats = 30;
  std::vector<std::string> metrics;
};

int run_lowsample(const LowSampleArgs& a, const Globals& g) {
  const auto metrics = metrics_from(a.metrics);
  const LabeledDataset train = load_tsv(a.train);
  const LabeledDataset test = load_tsv(a.test);
  const auto rows = low_sample_sweep(train, test, a.per_class, a.repeats, metrics, g.resolved_seed(),
                                     {g.thread_count()});
  std::string csv = "per_class,metric,repeats,mean_accuracy\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.per_class) + "," + to_string(r.metric) + "," + std::to_string(r.reports.size()) + "," +
           num(r.mean_accuracy) + "\n";
  }
  write_text_atomic(a.out, csv);
  return kOk;
}

// corr ----------------------------------------------------------------------

struct CorrArgs {
  std::string report, out;
  std::vector<std::string> cols{"dt", "dtw"};
};

double cell_value(const std::string& s, const std::string& where) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw DataError(where + ": not a number: '" + s + "'");
  return v;
}

// Accepts a long bench report (dataset,metric,accuracy,...) or a wide table
// with one column per metric.
std::vector<std::pair<double, double>> paired_columns(const CsvTable& t, const std::string& x, const std::string& y,
                                                      const std::string& path) {
  std::vector<std::pair<double, double>> pairs;
  const int ds = t.column("dataset"), metric = t.column("metric"), acc = t.column("accuracy");
  if (ds >= 0 && metric >= 0 && acc >= 0) {
    const auto canon = [](const std::string& n) {
      const auto m = parse_metric(n);
      return m ? to_string(*m) : n;
    };
    std::map<std::string, std::map<std::string, double>> by_dataset;
    for (const auto& row : t.rows) {
      if (row.size() != t.header.size()) throw DataError(path + ": row width differs from header");
      const double v = cell_value(row[static_cast<std::size_t>(acc)], path);
      if (!std::isnan(v)) by_dataset[row[static_cast<std::size_t>(ds)]][canon(row[static_cast<std::size_t>(metric)])] = v;
    }
    for (const auto& [name, cells] : by_dataset) {
      const auto ix = cells.find(canon(x)), iy = cells.find(canon(y));
      if (ix != cells.end() && iy != cells.end()) pairs.emplace_back(ix->second, iy->second);
    }
    return pairs;
  }
  const int cx = t.column(x), cy = t.column(y);
  if (cx < 0 || cy < 0) throw DataError(path + ": no columns '" + x + "' and '" + y + "'");
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) throw DataError(path + ": row width differs from header");
    const double vx = cell_value(row[static_cast<std::size_t>(cx)], path);
    const double vy = cell_value(row[static_cast<std::size_t>(cy)], path);
    if (!std::isnan(vx) && !std::isnan(vy)) pairs.emplace_back(vx, vy);
  }
  return pairs;
}

int run_corr(const CorrArgs& a, const Globals&) {
  if (a.cols.size() != 2) throw UsageError("--cols: expected exactly two names");
  const CsvTable table = read_csv(a.report);
  const auto pairs = paired_columns(table, a.cols[0], a.cols[1], a.report);
  if (pairs.size() < 2) throw DataError(a.report + ": fewer than two paired values");
  const auto rho = accuracy_correlation(pairs);
  std::string csv = "x,y,pairs,pearson\n";
  csv += a.cols[0] + "," + a.cols[1] + "," + std::to_string(pairs.size()) + "," + (rho ? num(*rho) : "nan") + "\n";
  write_text_atomic(a.out, csv);
  if (rho) {
    std::cout << "pearson " << num(*rho) << " over " << pairs.size() << " pairs\n";
  } else {
    std::cout << "pearson undefined (zero variance) over " << pairs.size() << " pairs\n";
  }
  return kOk;
}

// timing --------------------------------------------------------------------

struct TimingArgs {
  std::vector<std::size_t> lengths, train_sizes;
  std::vector<std::string> metrics;
  std::string out;
  TimingOptions options;
};

int run_timing(const TimingArgs& a, const Globals& g) {
  const auto metrics = metrics_from(a.metrics);
  std::vector<TimingRow> rows;
  try {
    rows = timing_benchmark(a.lengths, a.train_sizes, metrics, g.resolved_seed(), a.options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::string csv = "length,train_per_class,metric,train_size,test_size,seconds\n";
  for (const auto& r : rows) {
    csv += std::to_string(r.length) + "," + std::to_string(r.train_per_class) + "," + to_string(r.metric) + "," +
           std::to_string(r.train_size) + "," + std::to_string(r.test_size) + "," + num(r.seconds) + "\n";
  }
  write_text_atomic(a.out, csv);
  return kOk;
}

}  // namespace

int cli_dispatch(int argc, char** argv) {
  CLI::App app{"Nearest-neighbor time-series classification with transport and elastic distances", "tswarp"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads: auto or a positive count")
      ->check(CLI::IsMember({"auto"}) | CLI::PositiveNumber)
      ->capture_default_str();
  std::uint64_t seed = 0;
  const auto seed_flag = [&](CLI::App* sub) {
    return sub->add_option("--seed", seed, "Random seed (falls back to $TSWARP_SEED, then 0)");
  };

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic warped-template dataset as TSV");
  simulate->add_option("--classes", sim.spec.num_classes, "Number of classes")->required();
  simulate->add_option("--atoms", sim.spec.atoms_per_class, "Templates per class")->required();
  simulate->add_option("--samples", sim.spec.samples_per_atom, "Warped samples per template")->required();
  simulate->add_option("--length", sim.spec.grid_size, "Samples per signal")->required();
  simulate->add_option("--roughness", sim.spec.warp_roughness, "Warp roughness in [0,1]")->required();
  simulate->add_option("--knots", sim.spec.warp_knots, "Linear pieces per warp")->capture_default_str();
  simulate->add_flag("--flat", sim.spec.allow_flat, "Allow warps with a flat piece");
  simulate->add_option("--out", sim.out, "Output TSV")->required();
  auto* sim_seed = seed_flag(simulate);

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "1-NN classify a test set against a training set");
  classify->add_option("--train", cls.train, "Training TSV")->required();
  classify->add_option("--test", cls.test, "Test TSV")->required();
  classify->add_option("--metric", cls.metric, "euclidean, dtw, dtw_weighted or dt")->required()->check(metric_check);
  classify->add_option("--out", cls.out, "Predictions CSV")->required();

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "Accuracy of each metric on every dataset in a directory");
  bench->add_option("--data-dir", bn.data_dir, "Directory of <Name>_TRAIN.tsv/<Name>_TEST.tsv pairs")->required();
  bench->add_option("--metrics", bn.metrics, "Comma-separated metrics")->required()->delimiter(',')->check(metric_check);
  bench->add_option("--out", bn.out, "Report CSV")->required();

  LowSampleArgs ls;
  auto* lowsample = app.add_subcommand("lowsample", "Accuracy with a few training samples per class");
  lowsample->add_option("--train", ls.train, "Training TSV")->required();
  lowsample->add_option("--test", ls.test, "Test TSV")->required();
  lowsample->add_option("--per-class", ls.per_class, "Comma-separated training counts per class")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  lowsample->add_option("--repeats", ls.repeats, "Random draws per count")->check(CLI::PositiveNumber)->capture_default_str();
  lowsample->add_option("--metrics", ls.metrics, "Comma-separated metrics")->required()->delimiter(',')->check(metric_check);
  lowsample->add_option("--out", ls.out, "Report CSV")->required();
  auto* ls_seed = seed_flag(lowsample);

  CorrArgs cr;
  auto* corr = app.add_subcommand("corr", "Pearson correlation between two accuracy columns");
  corr->add_option("--report", cr.report, "Bench report CSV")->required();
  corr->add_option("--cols", cr.cols, "Two metric or column names")->delimiter(',')->expected(1, 2)->capture_default_str();
  corr->add_option("--out", cr.out, "Output CSV")->required();

  TimingArgs tm;
  auto* timing = app.add_subcommand("timing", "Sequential wall-clock cost of 1-NN evaluation on synthetic data");
  timing->add_option("--lengths", tm.lengths, "Comma-separated signal lengths")->required()->delimiter(',')->check(CLI::Range(16, 1 << 20));
  timing->add_option("--train-sizes", tm.train_sizes, "Comma-separated training items per class")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  timing->add_option("--metrics", tm.metrics, "Comma-separated metrics")->required()->delimiter(',')->check(metric_check);
  timing->add_option("--total", tm.options.total_signals, "Signals per configuration")->check(CLI::Range(4, 1 << 20))->capture_default_str();
  timing->add_option("--repetitions", tm.options.repetitions, "Runs per cell (median reported)")->check(CLI::PositiveNumber)->capture_default_str();
  timing->add_option("--out", tm.out, "Report CSV")->required();
  auto* tm_seed = seed_flag(timing);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    CLI::App* active = &app;
    for (auto* sub : app.get_subcommands()) active = sub;
    std::cerr << active->help();
    return kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  for (auto* opt : {sim_seed, ls_seed, tm_seed}) {
    if (opt->count() > 0) g.seed = seed;
  }
  try {
    if (active == simulate) return run_simulate(sim, g);
    if (active == classify) return run_classify(cls, g);
    if (active == bench) return run_bench(bn, g);
    if (active == lowsample) return run_lowsample(ls, g);
    if (active == corr) return run_corr(cr, g);
    if (active == timing) return run_timing(tm, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << active->help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace tswarp
