#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tswarp/signal.hpp"

namespace tswarp {

using Series = Signal<double>;

struct LabeledItem {
  Series signal;
  int label = 0;  ///< index into LabeledDataset::label_names
  int atom = -1;  ///< atomic-class index within the label, -1 when unknown
};

struct Provenance {
  std::string source;  ///< file path, or "synthetic"
  std::string description;
  std::uint64_t seed = 0;
};

/// Labeled signals.  Labels are contiguous ids 0..label_names.size()-1; the
/// names keep the original tokens (file labels verbatim, or "0", "1", ...).
class LabeledDataset {
 public:
  LabeledDataset() = default;
  LabeledDataset(std::vector<LabeledItem> items, std::vector<std::string> label_names, Provenance meta = {});

  const std::vector<LabeledItem>& items() const noexcept { return items_; }
  const LabeledItem& operator[](std::size_t i) const { return items_[i]; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }

  const std::vector<std::string>& label_names() const noexcept { return label_names_; }
  const std::string& label_name(int label) const { return label_names_.at(static_cast<std::size_t>(label)); }
  int num_classes() const noexcept { return static_cast<int>(label_names_.size()); }
  const Provenance& meta() const noexcept { return meta_; }
  Provenance& meta() noexcept { return meta_; }

  /// Sample count per signal; 0 for an empty dataset.
  Index signal_length() const noexcept { return items_.empty() ? 0 : items_.front().signal.size(); }

  /// Indices of the items carrying `label`, in dataset order.
  std::vector<std::size_t> indices_of(int label) const;

  /// New dataset with the selected items (same label namespace).
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;

  /// Throws EmptyDataset / std::invalid_argument when an invariant fails:
  /// non-empty, equal signal lengths, labels within range.
  void validate() const;

 private:
  std::vector<LabeledItem> items_;
  std::vector<std::string> label_names_;
  Provenance meta_;
};

}  // namespace tswarp
