#include "tswarp/dataset.hpp"

#include <stdexcept>

#include "tswarp/errors.hpp"

namespace tswarp {

LabeledDataset::LabeledDataset(std::vector<LabeledItem> items, std::vector<std::string> label_names,
                               Provenance meta)
    : items_(std::move(items)), label_names_(std::move(label_names)), meta_(std::move(meta)) {
  for (const auto& item : items_) {
    if (item.label < 0 || item.label >= static_cast<int>(label_names_.size())) {
      throw std::invalid_argument("LabeledDataset: label id " + std::to_string(item.label) + " out of range");
    }
  }
}

std::vector<std::size_t> LabeledDataset::indices_of(int label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].label == label) out.push_back(i);
  }
  return out;
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  std::vector<LabeledItem> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(items_.at(i));
  return LabeledDataset(std::move(picked), label_names_, meta_);
}

void LabeledDataset::validate() const {
  if (items_.empty()) throw EmptyDataset("dataset has no items");
  const Index n = signal_length();
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].signal.size() != n) {
      throw std::invalid_argument("LabeledDataset: item " + std::to_string(i) + " has length " +
                                  std::to_string(items_[i].signal.size()) + ", expected " + std::to_string(n));
    }
  }
}

}  // namespace tswarp
