#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tswarp/dataset.hpp"

namespace tswarp {

/// Reads a UCR-style file: one series per line, label first, then values.
/// The separator (tab or comma, whitespace as a last resort) is taken from
/// the first line; a first line whose values are not numeric is a header.
/// Throws ParseError (with line number), RaggedRows or EmptyFile.
LabeledDataset load_tsv(const std::filesystem::path& path);

/// Writes label-first tab-separated lines with 17 significant digits, via a
/// temporary file renamed into place.  Throws EmptyDataset on an empty input.
void save_tsv(const LabeledDataset& ds, const std::filesystem::path& path);

/// Re-expresses `other` in the label namespace of `reference` (matching by
/// name; names unseen in `reference` are appended).
LabeledDataset align_labels(const LabeledDataset& reference, const LabeledDataset& other);

/// Writes `content` to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or -1.
  int column(const std::string& name) const;
};

/// Plain comma-separated reader (no quoting); the first line is the header.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace tswarp
