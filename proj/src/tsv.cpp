#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "tswarp/errors.hpp"
#include "tswarp/io.hpp"

namespace tswarp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  if (sep == ' ') {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
    return out;
  }
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  if (tok.empty()) return false;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

// Numeric tokens order numerically, anything else lexicographically.
std::vector<std::string> ordered_labels(const std::vector<std::string>& tokens) {
  std::vector<std::string> uniq(tokens);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  const bool numeric = std::all_of(uniq.begin(), uniq.end(), [](const std::string& t) {
    double v;
    return parse_double(t, v);
  });
  if (numeric) {
    std::stable_sort(uniq.begin(), uniq.end(), [](const std::string& a, const std::string& b) {
      double x = 0, y = 0;
      parse_double(a, x);
      parse_double(b, y);
      return x < y;
    });
  }
  return uniq;
}

}  // namespace

LabeledDataset load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string name = path.string();

  std::vector<std::string> labels;
  std::vector<Vector<double>> rows;
  char sep = 0;
  std::size_t width = 0;
  std::size_t line_no = 0;
  bool first = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    if (sep == 0) sep = body.find('\t') != std::string_view::npos ? '\t' : body.find(',') != std::string_view::npos ? ',' : ' ';
    const auto tokens = split(body, sep);
    if (tokens.size() < 3) throw ParseError(name, line_no, "need a label and at least 2 values");

    Vector<double> values(static_cast<Index>(tokens.size() - 1));
    bool numeric = true;
    for (std::size_t k = 1; k < tokens.size() && numeric; ++k) {
      numeric = parse_double(tokens[k], values(static_cast<Index>(k - 1)));
    }
    if (first) {
      first = false;
      if (!numeric) continue;  // header
    }
    if (!numeric) throw ParseError(name, line_no, "non-numeric value");
    if (!values.allFinite()) throw ParseError(name, line_no, "NaN or infinite value");
    if (width == 0) {
      width = tokens.size() - 1;
    } else if (tokens.size() - 1 != width) {
      throw RaggedRows(name + ":" + std::to_string(line_no) + ": expected " + std::to_string(width) + " values, got " +
                       std::to_string(tokens.size() - 1));
    }
    if (tokens[0].empty()) throw ParseError(name, line_no, "empty label");
    labels.emplace_back(tokens[0]);
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw EmptyFile(name + ": no data rows");

  const auto names = ordered_labels(labels);
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = static_cast<int>(i);
  std::vector<LabeledItem> items;
  items.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    items.push_back({Series(std::move(rows[i])), id.at(labels[i]), -1});
  }
  return LabeledDataset(std::move(items), names, Provenance{name, "tsv", 0});
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot move output into place at " + path.string());
  }
}

void save_tsv(const LabeledDataset& ds, const std::filesystem::path& path) {
  if (ds.empty()) throw EmptyDataset("refusing to write an empty dataset to " + path.string());
  std::string out;
  char buf[32];
  for (const auto& item : ds.items()) {
    out += ds.label_name(item.label);
    for (Index j = 0; j < item.signal.size(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, item.signal[j], std::chars_format::general, 17);
      out += '\t';
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

LabeledDataset align_labels(const LabeledDataset& reference, const LabeledDataset& other) {
  std::vector<std::string> names = reference.label_names();
  std::map<std::string, int> id;
  for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = static_cast<int>(i);
  std::vector<LabeledItem> items;
  items.reserve(other.size());
  for (const auto& item : other.items()) {
    const std::string& name = other.label_name(item.label);
    auto it = id.find(name);
    if (it == id.end()) {
      it = id.emplace(name, static_cast<int>(names.size())).first;
      names.push_back(name);
    }
    items.push_back({item.signal, it->second, item.atom});
  }
  return LabeledDataset(std::move(items), std::move(names), other.meta());
}

int CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const auto body = trim(line);
    if (body.empty()) continue;
    std::vector<std::string> cells;
    for (auto c : split(body, ',')) cells.emplace_back(c);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  if (first) throw EmptyFile(path.string() + ": empty CSV");
  return table;
}

}  // namespace tswarp
