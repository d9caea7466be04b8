#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tswarp/dataset.hpp"

namespace tswarp {

enum class Metric { euclidean, dtw, dtw_weighted, transport };

/// Canonical names: "euclidean", "dtw", "dtw_weighted", "dt".
std::string to_string(Metric m);
/// Accepts the canonical names plus "d_t", "dT", "wdtw" and "l2".
std::optional<Metric> parse_metric(const std::string& name);

struct Dissimilarity {
  Metric kind = Metric::transport;
};

/// Distance callback for custom dissimilarities (argument order: test, train).
using DistanceFn = std::function<double(const Series&, const Series&)>;

/// Builds the callback for a built-in dissimilarity.  For d_T the orientation
/// is d_T(test, train); the callback throws ZeroVariation on constant input.
DistanceFn distance_function(Dissimilarity d);

struct Neighbor {
  std::size_t train_index = 0;
  int label = 0;  ///< label id in the training set's namespace
  double distance = 0.0;
  bool fallback = false;  ///< d_T was undefined; Euclidean was used instead
};

/// Index of the smallest value, lowest index on ties.
std::size_t argmin(const std::vector<double>& values);

/// 1-NN prediction: the training item minimizing d(test_signal, .), ties to
/// the lowest training index.  When d_T is undefined for the pair set the item
/// is classified with Euclidean distance and flagged.
Neighbor nn_classify(const LabeledDataset& train, const Series& test_signal, Dissimilarity d);
Neighbor nn_classify(const LabeledDataset& train, const Series& test_signal, const DistanceFn& d);

struct Prediction {
  std::size_t item_index = 0;
  std::string true_label;
  std::string predicted_label;
  double distance = 0.0;
  std::size_t neighbor = 0;
  bool fallback = false;
};

struct EvalReport {
  std::string dataset;
  Metric metric = Metric::transport;
  double accuracy = 0.0;  ///< correct / test_size, exactly
  std::vector<Prediction> predictions;
  double seconds = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::uint64_t seed = 0;
  std::size_t fallbacks = 0;
};

struct EvalOptions {
  unsigned threads = 1;  ///< 0 = hardware concurrency
};

/// Classifies every test item against `train` and reports exact accuracy and
/// wall time.  Labels are matched by name, so the two sets may have been
/// loaded independently.  Results do not depend on the thread count.
EvalReport evaluate(const LabeledDataset& train, const LabeledDataset& test, Dissimilarity d,
                    EvalOptions options = {});

struct SweepResult {
  std::size_t per_class = 0;
  Metric metric = Metric::transport;
  double mean_accuracy = 0.0;
  std::vector<EvalReport> reports;  ///< one per repeat
};

/// Low-sample regime: for each repeat and each count, draw `count` training
/// items per class without replacement (seeded), evaluate every metric on
/// the same draw, and average accuracies over repeats.
std::vector<SweepResult> low_sample_sweep(const LabeledDataset& train, const LabeledDataset& test,
                                          const std::vector<std::size_t>& per_class, std::size_t repeats,
                                          const std::vector<Metric>& metrics, std::uint64_t seed,
                                          EvalOptions options = {});

/// Pearson correlation over paired accuracies.  std::nullopt when either
/// coordinate has zero variance.  Needs at least two pairs.
std::optional<double> accuracy_correlation(const std::vector<std::pair<double, double>>& pairs);

struct TimingRow {
  std::size_t length = 0;
  std::size_t train_per_class = 0;
  Metric metric = Metric::transport;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double seconds = 0.0;  ///< median over repetitions
};

struct TimingOptions {
  std::size_t total_signals = 250;
  std::size_t repetitions = 5;
  int num_classes = 2;
};

/// Wall-clock cost of a full sequential 1-NN evaluation on synthetic data for
/// each (length, training size, metric).  Training sets take the first
/// `train_per_class` items of each class; the remaining items are the test set.
std::vector<TimingRow> timing_benchmark(const std::vector<std::size_t>& lengths,
                                        const std::vector<std::size_t>& train_per_class,
                                        const std::vector<Metric>& metrics, std::uint64_t seed,
                                        TimingOptions options = {});

}  // namespace tswarp
