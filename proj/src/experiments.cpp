#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tswarp/classifier.hpp"
#include "tswarp/synthgen.hpp"

namespace tswarp {
namespace {

// `count` indices per class, drawn without replacement and returned in
// dataset order.
std::vector<std::size_t> stratified_draw(const LabeledDataset& ds, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> picked;
  for (int c = 0; c < ds.num_classes(); ++c) {
    auto pool = ds.indices_of(c);
    if (pool.empty()) continue;
    for (std::size_t k = 0; k < count; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
    }
    picked.insert(picked.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<SweepResult> low_sample_sweep(const LabeledDataset& train, const LabeledDataset& test,
                                          const std::vector<std::size_t>& per_class, std::size_t repeats,
                                          const std::vector<Metric>& metrics, std::uint64_t seed,
                                          EvalOptions options) {
  train.validate();
  if (repeats < 1) throw std::invalid_argument("low_sample_sweep: repeats must be at least 1");
  std::size_t smallest = std::numeric_limits<std::size_t>::max();
  for (int c = 0; c < train.num_classes(); ++c) {
    const std::size_t n = train.indices_of(c).size();
    if (n > 0) smallest = std::min(smallest, n);
  }
  for (std::size_t k : per_class) {
    if (k < 1 || k > smallest) {
      throw std::invalid_argument("low_sample_sweep: " + std::to_string(k) +
                                  " per class requested, smallest class has " + std::to_string(smallest));
    }
  }

  std::vector<SweepResult> out;
  for (std::size_t k : per_class) {
    for (Metric m : metrics) out.push_back({k, m, 0.0, {}});
  }
  for (std::size_t r = 0; r < repeats; ++r) {
    for (std::size_t ki = 0; ki < per_class.size(); ++ki) {
      auto rng = make_stream(seed, (static_cast<std::uint64_t>(r) << 32) | per_class[ki]);
      const LabeledDataset sub = train.subset(stratified_draw(train, per_class[ki], rng));
      for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        EvalReport rep = evaluate(sub, test, {metrics[mi]}, options);
        rep.seed = seed;
        out[ki * metrics.size() + mi].reports.push_back(std::move(rep));
      }
    }
  }
  for (auto& row : out) {
    double sum = 0.0;
    for (const auto& rep : row.reports) sum += rep.accuracy;
    row.mean_accuracy = sum / static_cast<double>(row.reports.size());
  }
  return out;
}

std::optional<double> accuracy_correlation(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 2) throw std::invalid_argument("accuracy_correlation: need at least two pairs");
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<TimingRow> timing_benchmark(const std::vector<std::size_t>& lengths,
                                        const std::vector<std::size_t>& train_per_class,
                                        const std::vector<Metric>& metrics, std::uint64_t seed,
                                        TimingOptions options) {
  if (options.repetitions < 1) throw std::invalid_argument("timing_benchmark: repetitions must be at least 1");
  const std::size_t per_class = options.total_signals / static_cast<std::size_t>(options.num_classes);
  std::vector<TimingRow> rows;
  for (std::size_t length : lengths) {
    SyntheticSpec spec;
    spec.num_classes = options.num_classes;
    spec.atoms_per_class = 1;
    spec.samples_per_atom = static_cast<int>(per_class);
    spec.grid_size = static_cast<Index>(length);
    spec.seed = seed;
    const LabeledDataset data = generate_dataset(spec);
    for (std::size_t t : train_per_class) {
      if (t < 1 || t >= per_class) {
        throw std::invalid_argument("timing_benchmark: training size " + std::to_string(t) +
                                    " leaves no test items");
      }
      std::vector<std::size_t> train_idx, test_idx;
      for (int c = 0; c < data.num_classes(); ++c) {
        const auto idx = data.indices_of(c);
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(t));
        test_idx.insert(test_idx.end(), idx.begin() + static_cast<std::ptrdiff_t>(t), idx.end());
      }
      const LabeledDataset train = data.subset(train_idx);
      const LabeledDataset test = data.subset(test_idx);
      for (Metric m : metrics) {
        std::vector<double> secs;
        for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
          secs.push_back(evaluate(train, test, {m}, {1}).seconds);
        }
        rows.push_back({length, t, m, train.size(), test.size(), median(secs)});
      }
    }
  }
  return rows;
}

}  // namespace tswarp
