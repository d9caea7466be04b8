#include "tswarp/classifier.hpp"

#include <chrono>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>

#include "tswarp/elastic.hpp"
#include "tswarp/errors.hpp"
#include "tswarp/io.hpp"
#include "tswarp/transport.hpp"

namespace tswarp {

std::string to_string(Metric m) {
  switch (m) {
    case Metric::euclidean:
      return "euclidean";
    case Metric::dtw:
      return "dtw";
    case Metric::dtw_weighted:
      return "dtw_weighted";
    case Metric::transport:
      return "dt";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(const std::string& name) {
  if (name == "euclidean" || name == "l2") return Metric::euclidean;
  if (name == "dtw") return Metric::dtw;
  if (name == "dtw_weighted" || name == "wdtw") return Metric::dtw_weighted;
  if (name == "dt" || name == "d_t" || name == "dT") return Metric::transport;
  return std::nullopt;
}

DistanceFn distance_function(Dissimilarity d) {
  switch (d.kind) {
    case Metric::euclidean:
      return [](const Series& a, const Series& b) { return euclidean(a, b); };
    case Metric::dtw:
      return [](const Series& a, const Series& b) { return dtw_cost(a, b); };
    case Metric::dtw_weighted:
      return [](const Series& a, const Series& b) {
        const auto [x, y] = equalize(a, b);
        return dtw_weighted_cost(x, y);
      };
    case Metric::transport:
      return [](const Series& a, const Series& b) { return d_T(a, b); };
  }
  throw std::invalid_argument("distance_function: unknown metric");
}

std::size_t argmin(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("argmin: empty input");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

namespace {

Neighbor pick(const LabeledDataset& train, const std::vector<double>& row, bool fallback) {
  const std::size_t i = argmin(row);
  return {i, train[i].label, row[i], fallback};
}

std::vector<double> distance_row(const LabeledDataset& train, const Series& s, const DistanceFn& d) {
  std::vector<double> row(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) row[i] = d(s, train[i].signal);
  return row;
}

// Caches the training-side transport profiles so each comparison only pays
// for the quantile lookups.
class NearestNeighbor {
 public:
  NearestNeighbor(const LabeledDataset& train, Dissimilarity d) : train_(train), d_(d), fn_(distance_function(d)) {
    if (train.empty()) throw EmptyDataset("nn_classify: empty training set");
    if (d.kind == Metric::transport) {
      profiles_.reserve(train.size());
      for (const auto& item : train.items()) {
        try {
          profiles_.emplace_back(TransportProfile<double>(item.signal));
        } catch (const ZeroVariation&) {
          profiles_.emplace_back(std::nullopt);
        }
      }
    }
  }

  Neighbor classify(const Series& s) const {
    if (d_.kind != Metric::transport) return pick(train_, distance_row(train_, s, fn_), false);
    try {
      return classify_transport(s);
    } catch (const ZeroVariation&) {
      return pick(train_, distance_row(train_, s, distance_function({Metric::euclidean})), true);
    }
  }

 private:
  Neighbor classify_transport(const Series& s) const {
    const bool same_grid = s.size() == train_.signal_length();
    const bool coarser = s.size() < train_.signal_length();
    std::vector<double> row(train_.size());
    if (same_grid || coarser) {
      const TransportProfile<double> test(same_grid ? s : resample(s, train_.signal_length()));
      for (std::size_t i = 0; i < train_.size(); ++i) {
        if (!profiles_[i]) throw ZeroVariation("training item " + std::to_string(i) + " is constant");
        row[i] = transport_divergence(test, *profiles_[i]);
      }
    } else {
      row = distance_row(train_, s, fn_);
    }
    return pick(train_, row, false);
  }

  const LabeledDataset& train_;
  Dissimilarity d_;
  DistanceFn fn_;
  std::vector<std::optional<TransportProfile<double>>> profiles_;
};

}  // namespace

Neighbor nn_classify(const LabeledDataset& train, const Series& test_signal, Dissimilarity d) {
  return NearestNeighbor(train, d).classify(test_signal);
}

Neighbor nn_classify(const LabeledDataset& train, const Series& test_signal, const DistanceFn& d) {
  if (train.empty()) throw EmptyDataset("nn_classify: empty training set");
  return pick(train, distance_row(train, test_signal, d), false);
}

EvalReport evaluate(const LabeledDataset& train, const LabeledDataset& test, Dissimilarity d, EvalOptions options) {
  if (test.empty()) throw EmptyDataset("evaluate: empty test set");
  const auto start = std::chrono::steady_clock::now();
  const LabeledDataset aligned = align_labels(train, test);
  const NearestNeighbor nn(train, d);

  std::vector<Neighbor> found(aligned.size());
  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, aligned.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < aligned.size(); ++i) found[i] = nn.classify(aligned[i].signal);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < aligned.size(); i += threads) found[i] = nn.classify(aligned[i].signal);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalReport report;
  report.dataset = test.meta().source;
  report.metric = d.kind;
  report.train_size = train.size();
  report.test_size = aligned.size();
  report.seed = test.meta().seed;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    const Neighbor& nb = found[i];
    Prediction p{i, aligned.label_name(aligned[i].label), train.label_name(nb.label), nb.distance, nb.train_index,
                 nb.fallback};
    if (p.true_label == p.predicted_label) ++correct;
    if (nb.fallback) ++report.fallbacks;
    report.predictions.push_back(std::move(p));
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(aligned.size());
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace tswarp
